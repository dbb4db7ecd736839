#pragma once

#include "polyband/graph.hpp"
#include "polyband/spectrum.hpp"

namespace polyband::hmo {

/// Occupation of Hückel levels with electron pairs, filled in descending lambda
/// (ascending energy).
struct OrbitalFilling {
  Spectrum levels;  // eV, ascending
  int n_electrons = 0;
  int homo_index = 0;  // 1-based position in occupation order
  int lumo_index = 0;
  int homo_degeneracy = 0;
  /// HOMO multiplet is only partly occupied.
  bool somo = false;
};

enum class RingStability { Stable, Reactive };

/// E_n = alpha - beta * lambda_n, ascending.
Spectrum levels(const OligomerGraph& g, const ModelConstants& consts = {});

/// Fills `electron_pairs` orbitals of g.
OrbitalFilling filling(const OligomerGraph& g, int electron_pairs, const ModelConstants& consts = {});

/// HOMO-LUMO gap of the m-oligomer in eV, beta * (lambda_(M) - lambda_(M+1))
/// with lambda sorted descending and M the oligomer's electron pairs (N * m for
/// untrimmed monomers). Degenerate HOMO/LUMO gives exactly 0.
double gap(const MonomerSpec& spec, int m, const ModelConstants& consts = {});

/// Same gap from an already-computed adjacency spectrum.
double gap_from_lambda(const Spectrum& lambda, int electron_pairs, double beta_eV);

/// 2cos(n pi / m), n = 1..2m: the ring of 2m carbons. m = 1 is a double edge and is rejected.
Spectrum ring_spectrum_closed_form(int m);

/// 2cos(n pi / (2m + 1)), n = 1..2m: the open chain of 2m carbons.
Spectrum chain_spectrum_closed_form(int m);

/// Ring C_2m H_2m filled with m pairs: stable iff the HOMO multiplet is complete.
RingStability huckel_rule(int m);

/// Count of adjacency eigenvalues within the multiplicity tolerance of zero.
int zero_modes(const OligomerGraph& g, double tolerance = kDefaultMultiplicityTolerance);

}  // namespace polyband::hmo
