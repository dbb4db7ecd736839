import math

import numpy as np
import pytest

import polyband


def test_catalog_names():
    assert [s.name for s in polyband.catalog()] == ["PA", "PPf", "PPP", "PMP", "PPV", "PmPV"]
    assert polyband.monomer("ppp").n_atoms == 6


def test_pa_gaps_closed_form():
    pa = polyband.monomer("PA")
    for m in (1, 5, 40):
        assert polyband.hmo_gap(pa, m) == pytest.approx(4 * 3.05 * math.sin(math.pi / (4 * m + 2)), abs=1e-10)
        assert polyband.fe_gap(pa, m) == pytest.approx(1.95 * math.pi**2 / (2 * m + 1), abs=1e-9)


def test_ppf_edges_and_flat_level():
    edges = polyband.band_edges(polyband.monomer("PPf"))
    assert len(edges) == 12
    assert min(edges) == pytest.approx(-2.34, abs=0.01)
    bs = polyband.band_structure(polyband.monomer("PPf"))
    assert any(abs(v - 1.0) < 1e-9 for v, _ in bs["flat_levels"])
    assert bs["dispersion"].shape == (721, 6)


def test_round_trip_and_errors():
    ppv = polyband.monomer("PPV")
    assert polyband.parse_monomer(ppv.to_json()) == ppv
    with pytest.raises(polyband.ParseError):
        polyband.parse_monomer('{"name": "X"}')
    with pytest.raises(ValueError):
        polyband.hmo_gap(ppv, 3, beta=-1.0)


def test_adjacency_and_counting():
    c = polyband.oligomer_adjacency(polyband.monomer("PPP"), 2)
    assert isinstance(c, np.ndarray) and c.shape == (12, 12)
    assert np.allclose(c, c.T)
    assert len(polyband.counting_breakpoints(polyband.monomer("PPf"), 10)) == 60


def test_sweep_limit():
    rows, limit = polyband.gap_sweep(polyband.monomer("PPP"), [2, 4, 8])
    gaps = [g for _, g in rows]
    assert gaps == sorted(gaps, reverse=True)
    assert limit == pytest.approx(polyband.polymer_gap(polyband.monomer("PPP")))
    assert polyband.polymer_gap(polyband.monomer("PA"), polyband.Model.FE) == 0.0
