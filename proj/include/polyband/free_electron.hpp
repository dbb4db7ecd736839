#pragma once

#include "polyband/graph.hpp"
#include "polyband/spectrum.hpp"

#include <vector>

namespace polyband::fe {

/// Where a free-electron level came from.
enum class Provenance {
  Branch,       // k = 2 pi n +- arccos(mu~) for a generalized eigenvalue mu~ in (-1, 1)
  Exceptional,  // k = n pi, counted by the nullity construction
};

/// Dimensionless levels mu = k^2 on the unit-bond metric graph.
struct MetricSpectrum {
  std::vector<double> mu_values;  // ascending
  std::vector<Provenance> provenance;
  int count_requested = 0;

  std::size_t size() const { return mu_values.size(); }
};

inline constexpr double kUnitCircleTolerance = 1e-9;
inline constexpr double kNullityTolerance = 1e-9;

/// Multiplicity of mu = (n pi)^2: the nullity of the linear system for
/// per-bond solutions a sin(n pi x) + b cos(n pi x) (a x + b when n = 0)
/// subject to continuity and Kirchhoff flux balance. Terminal (dangling)
/// vertices impose psi = 0 instead of flux balance.
int exceptional_multiplicity(const OligomerGraph& g, int n);

/// mu~ values of C u = mu~ V u on the carbon block (terminal vertices are hard walls).
Spectrum generalized_values(const OligomerGraph& g);

/// Lowest `count` levels with multiplicity. Throws GraphError for
/// non-equilateral, disconnected or bond-free graphs.
MetricSpectrum levels(const OligomerGraph& g, int count);

/// Every level with mu <= mu_max.
MetricSpectrum levels_up_to(const OligomerGraph& g, double mu_max);

/// Gap in eV for the m-oligomer. The M lowest levels (with multiplicity, mu = 0
/// included when present) hold the M electron pairs. Dangling bonds are
/// attached as the monomer lists them and end in a hard wall.
double gap(const MonomerSpec& spec, int m, const ModelConstants& consts = {});

/// Gap from an already-assembled spectrum, same occupation as gap().
double gap_from_levels(const MetricSpectrum& s, int electron_pairs, double epsilon_eV);

/// Brute-force check: second-order finite differences with `points_per_bond`
/// interior nodes per bond, lumped half-cell mass at vertices, Kirchhoff
/// balance built into the vertex rows and terminal vertices clamped. Returns the lowest `count` eigenvalues.
MetricSpectrum discretized_levels(const OligomerGraph& g, int points_per_bond, int count);

}  // namespace polyband::fe
