#pragma once

#include "polyband/graph.hpp"
#include "polyband/spectrum.hpp"

#include <complex>
#include <vector>

namespace polyband::floquet {

/// C + F(k) for one monomer of the infinite chain; F_eb = e^{ik}, F_be = e^{-ik}.
struct BlochMatrix {
  double k = 0.0;
  Eigen::MatrixXcd matrix;
};

struct Band {
  double lo = 0.0;
  double hi = 0.0;
  bool flat = false;
  /// States per monomer carried by the band.
  int weight = 1;

  double width() const { return hi - lo; }
};

/// A k-independent eigenvalue and its multiplicity at generic k.
struct FlatLevel {
  double value;
  int multiplicity;
};

struct BandStructure {
  ModelTag tag = ModelTag::HmoLambda;
  std::vector<Band> bands;  // ascending
  std::vector<double> k_grid;
  /// dispersion(i, r) is band r at k_grid[i].
  Eigen::MatrixXd dispersion;
  std::vector<FlatLevel> flat_levels;
  /// 0-based indices into `bands` under the model's occupation order.
  int valence_index = 0;
  int conduction_index = 0;
};

/// Interior quasi-momentum used to probe k-independent states; any value
/// strictly inside (0, pi) works because band extrema sit at 0 and pi.
inline constexpr double kGenericMomentum = 1.0;

BlochMatrix bloch_matrix(const MonomerSpec& spec, double k);

/// Spectra of C + F(0) and C + F(pi), merged ascending (2 * N_C values).
std::vector<double> band_edges(const MonomerSpec& spec);

/// Hückel bands on a uniform grid of `k_samples` points over [0, pi]. Band r is
/// the range of the r-th smallest eigenvalue. Valence is the N-th band counted
/// from the top.
BandStructure band_structure(const MonomerSpec& spec, int k_samples,
                             double multiplicity_tolerance = kDefaultMultiplicityTolerance);

/// Free-electron bands in mu. Generalized Bloch bands (C + F(k)) u = mu~ V u are
/// pushed through the arccos branches of `windows` consecutive pi-windows of the
/// wavenumber; k = n pi flat bands are added with the multiplicity found at a
/// generic Bloch phase.
BandStructure fe_band_structure(const MonomerSpec& spec, int k_samples, int windows = 2,
                                double multiplicity_tolerance = kDefaultMultiplicityTolerance);

/// Multiplicity of mu = (n pi)^2 for the periodic chain at Bloch phase `phase`.
int periodic_exceptional_multiplicity(const MonomerSpec& spec, int n, double phase);

/// Band gap of the infinite polymer in eV; zero when valence and conduction touch or overlap.
double polymer_gap(const MonomerSpec& spec, Model model, const ModelConstants& consts = {});

/// Gap read off an already-computed band structure, in the band structure's own units.
double band_gap(const BandStructure& bs);

/// det(C + F(k) - lambda I).
std::complex<double> characteristic(const MonomerSpec& spec, double k, double lambda);

struct XiDecomposition {
  double p0;
  double p1;
};

/// xi(k, lambda) = p0(lambda) cos k + p1(lambda), recovered from k = 0 and k = pi.
XiDecomposition xi_decomposition(const MonomerSpec& spec, double lambda);

}  // namespace polyband::floquet
