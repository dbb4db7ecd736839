#include "polyband/floquet.hpp"

#include "polyband/free_electron.hpp"

#include <Eigen/LU>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace polyband::floquet {

namespace {

using std::numbers::pi;
using cplx = std::complex<double>;

std::vector<double> uniform_grid(int samples) {
  if (samples < 2) throw std::invalid_argument("band sampling needs at least 2 k points");
  std::vector<double> k(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) k[static_cast<std::size_t>(i)] = pi * i / (samples - 1);
  k.back() = pi;
  return k;
}

Eigen::VectorXd cell_valency(const MonomerSpec& spec) {
  Eigen::VectorXd v = spec.adjacency().rowwise().sum();
  v[spec.link_b] += 1.0;
  v[spec.link_e] += 1.0;
  return v;
}

// Hermitian V^-1/2 (C + F(k)) V^-1/2 for the generalized Bloch problem.
Eigen::MatrixXcd reduced_bloch(const MonomerSpec& spec, const Eigen::VectorXd& valency, double k) {
  const Eigen::VectorXcd s = valency.array().rsqrt().cast<cplx>();
  return s.asDiagonal() * bloch_matrix(spec, k).matrix * s.asDiagonal();
}

std::vector<FlatLevel> find_flat_levels(const Spectrum& at0, const Spectrum& atpi, const Spectrum& generic_a,
                                        const Spectrum& generic_b) {
  std::vector<FlatLevel> out;
  for (const auto& group : at0.multiplets()) {
    const int m = std::min({group.multiplicity, atpi.multiplicity_of(group.value),
                            generic_a.multiplicity_of(group.value), generic_b.multiplicity_of(group.value)});
    if (m > 0) out.push_back({group.value, m});
  }
  return out;
}

void sort_bands(BandStructure& bs) {
  std::vector<int> order(bs.bands.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& x = bs.bands[static_cast<std::size_t>(a)];
    const auto& y = bs.bands[static_cast<std::size_t>(b)];
    return x.lo != y.lo ? x.lo < y.lo : x.hi < y.hi;
  });
  std::vector<Band> bands;
  Eigen::MatrixXd disp(bs.dispersion.rows(), bs.dispersion.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    bands.push_back(bs.bands[static_cast<std::size_t>(order[i])]);
    disp.col(static_cast<Eigen::Index>(i)) = bs.dispersion.col(order[i]);
  }
  bs.bands = std::move(bands);
  bs.dispersion = std::move(disp);
}

// Locate the bands holding the last filled and first empty state when
// `filled` states per monomer are occupied from the bottom of `bands`.
void assign_fill(BandStructure& bs, int filled) {
  int cumulative = 0;
  for (std::size_t i = 0; i < bs.bands.size(); ++i) {
    cumulative += bs.bands[i].weight;
    if (cumulative >= filled) {
      bs.valence_index = static_cast<int>(i);
      bs.conduction_index = cumulative > filled ? static_cast<int>(i) : static_cast<int>(i) + 1;
      if (bs.conduction_index >= static_cast<int>(bs.bands.size()))
        throw NumericError("band structure too short for the requested filling");
      return;
    }
  }
  throw NumericError("band structure too short for the requested filling");
}

}  // namespace

BlochMatrix bloch_matrix(const MonomerSpec& spec, double k) {
  if (std::abs(k) > pi + 1e-12) throw std::invalid_argument("quasi-momentum must lie in [-pi, pi]");
  BlochMatrix b;
  b.k = k;
  b.matrix = spec.adjacency().cast<cplx>();
  const cplx phase = std::polar(1.0, k);
  b.matrix(spec.link_e, spec.link_b) += phase;
  b.matrix(spec.link_b, spec.link_e) += std::conj(phase);
  // exact phases at the real points
  if (k == 0.0 || std::abs(k) == pi) b.matrix = b.matrix.real().cast<cplx>();
  return b;
}

std::vector<double> band_edges(const MonomerSpec& spec) {
  auto a = eig_hermitian(bloch_matrix(spec, 0.0).matrix).values;
  const auto b = eig_hermitian(bloch_matrix(spec, pi).matrix).values;
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

BandStructure band_structure(const MonomerSpec& spec, int k_samples, double multiplicity_tolerance) {
  spec.validate();
  BandStructure bs;
  bs.tag = ModelTag::HmoLambda;
  bs.k_grid = uniform_grid(k_samples);
  const int n = spec.n_atoms;
  bs.dispersion.resize(k_samples, n);
  for (int i = 0; i < k_samples; ++i) {
    const auto s = eig_hermitian(bloch_matrix(spec, bs.k_grid[static_cast<std::size_t>(i)]).matrix);
    for (int r = 0; r < n; ++r) bs.dispersion(i, r) = s.values[static_cast<std::size_t>(r)];
  }
  for (int r = 0; r < n; ++r) {
    Band b;
    b.lo = bs.dispersion.col(r).minCoeff();
    b.hi = bs.dispersion.col(r).maxCoeff();
    b.flat = b.width() <= 10.0 * multiplicity_tolerance;
    bs.bands.push_back(b);
  }
  const auto probe = [&](double k) { return eig_hermitian(bloch_matrix(spec, k).matrix, multiplicity_tolerance); };
  bs.flat_levels = find_flat_levels(probe(0.0), probe(pi), probe(kGenericMomentum), probe(2.0 * kGenericMomentum));
  // occupation runs from the top in lambda
  bs.valence_index = n - spec.n_double_bonds;
  bs.conduction_index = n - spec.n_double_bonds - 1;
  if (bs.conduction_index < 0) throw NumericError("monomer has no empty band");
  return bs;
}

int periodic_exceptional_multiplicity(const MonomerSpec& spec, int n, double phase) {
  if (n < 0) throw std::invalid_argument("exceptional index must be nonnegative");
  const int nv = spec.n_atoms;
  const int ne = static_cast<int>(spec.bonds.size()) + 1;  // last bond is the link to the next cell
  const cplx shift = std::polar(1.0, phase);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  Eigen::MatrixXcd sys = Eigen::MatrixXcd::Zero(ne + nv, nv + ne);
  for (int e = 0; e < ne; ++e) {
    const bool link = e == ne - 1;
    const int u = link ? spec.link_b : spec.bonds[static_cast<std::size_t>(e)].first;
    const int v = link ? spec.link_e : spec.bonds[static_cast<std::size_t>(e)].second;
    const cplx far = link ? shift : cplx(1.0);       // psi at the x = 1 end relative to this cell
    const cplx back = link ? std::conj(shift) : cplx(1.0);  // flux entering v, seen from v's cell
    if (n == 0) {
      sys(e, u) += 1.0;
      sys(e, nv + e) += 1.0;
      sys(e, v) -= far;
      sys(ne + u, nv + e) += 1.0;
      sys(ne + v, nv + e) -= back;
    } else {
      sys(e, u) += sign;
      sys(e, v) -= far;
      sys(ne + u, nv + e) += 1.0;
      sys(ne + v, nv + e) -= sign * back;
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(sys);
  qr.setThreshold(fe::kNullityTolerance);
  return static_cast<int>((nv + ne) - qr.rank());
}

BandStructure fe_band_structure(const MonomerSpec& spec, int k_samples, int windows, double multiplicity_tolerance) {
  spec.validate();
  if (windows < 1) throw std::invalid_argument("need at least one wavenumber window");
  const auto grid = uniform_grid(k_samples);
  const Eigen::VectorXd valency = cell_valency(spec);
  const int n = spec.n_atoms;

  Eigen::MatrixXd tilde(k_samples, n);
  for (int i = 0; i < k_samples; ++i) {
    const auto s = eig_hermitian(reduced_bloch(spec, valency, grid[static_cast<std::size_t>(i)]));
    for (int r = 0; r < n; ++r) {
      // acos is sqrt-sensitive at +-1, so rounding noise there would open fake gaps at k = n pi
      double t = std::clamp(s.values[static_cast<std::size_t>(r)], -1.0, 1.0);
      if (1.0 - std::abs(t) <= 1e-12) t = std::copysign(1.0, t);
      tilde(i, r) = t;
    }
  }

  BandStructure bs;
  bs.tag = ModelTag::FeMu;
  bs.k_grid = grid;
  std::vector<Eigen::VectorXd> columns;
  const double edge = 1.0 - fe::kUnitCircleTolerance;
  for (int j = 0; j < windows; ++j) {
    for (int r = 0; r < n; ++r) {
      const double lo = tilde.col(r).minCoeff(), hi = tilde.col(r).maxCoeff();
      if (lo >= edge || hi <= -edge) continue;  // k = n pi states, counted below
      Eigen::VectorXd mu(k_samples);
      for (int i = 0; i < k_samples; ++i) {
        const double theta = std::acos(tilde(i, r));
        const double k = (j % 2 == 0) ? j * pi + theta : (j + 1) * pi - theta;
        mu[i] = k * k;
      }
      Band b;
      b.lo = mu.minCoeff();
      b.hi = mu.maxCoeff();
      b.flat = b.width() <= 10.0 * multiplicity_tolerance * std::max(1.0, b.hi);
      bs.bands.push_back(b);
      columns.push_back(std::move(mu));
    }
  }
  for (int j = 0; j <= windows; ++j) {
    const int mult = periodic_exceptional_multiplicity(spec, j, kGenericMomentum);
    if (mult == 0) continue;
    const double mu = (j * pi) * (j * pi);
    bs.bands.push_back({mu, mu, true, mult});
    bs.flat_levels.push_back({mu, mult});
    columns.push_back(Eigen::VectorXd::Constant(k_samples, mu));
  }
  bs.dispersion.resize(k_samples, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) bs.dispersion.col(static_cast<Eigen::Index>(c)) = columns[c];
  sort_bands(bs);
  assign_fill(bs, spec.n_double_bonds);
  return bs;
}

double band_gap(const BandStructure& bs) {
  if (bs.valence_index == bs.conduction_index) return 0.0;
  const bool descending = bs.conduction_index < bs.valence_index;
  double filled_edge = 0.0, empty_edge = 0.0;
  if (descending) {
    // filled bands sit above: their lowest point faces the gap
    filled_edge = bs.bands[static_cast<std::size_t>(bs.valence_index)].lo;
    empty_edge = bs.bands[static_cast<std::size_t>(bs.conduction_index)].hi;
    for (int i = bs.valence_index; i < static_cast<int>(bs.bands.size()); ++i)
      filled_edge = std::min(filled_edge, bs.bands[static_cast<std::size_t>(i)].lo);
    for (int i = 0; i <= bs.conduction_index; ++i)
      empty_edge = std::max(empty_edge, bs.bands[static_cast<std::size_t>(i)].hi);
    return std::max(0.0, filled_edge - empty_edge);
  }
  filled_edge = bs.bands[static_cast<std::size_t>(bs.valence_index)].hi;
  empty_edge = bs.bands[static_cast<std::size_t>(bs.conduction_index)].lo;
  for (int i = 0; i <= bs.valence_index; ++i)
    filled_edge = std::max(filled_edge, bs.bands[static_cast<std::size_t>(i)].hi);
  for (int i = bs.conduction_index; i < static_cast<int>(bs.bands.size()); ++i)
    empty_edge = std::min(empty_edge, bs.bands[static_cast<std::size_t>(i)].lo);
  return std::max(0.0, empty_edge - filled_edge);
}

double polymer_gap(const MonomerSpec& spec, Model model, const ModelConstants& consts) {
  consts.validate();
  constexpr int kSamples = 721;
  if (model == Model::Hmo) {
    const double g = band_gap(band_structure(spec, kSamples));
    return g <= kDefaultMultiplicityTolerance ? 0.0 : consts.beta_eV * g;
  }
  const double g = band_gap(fe_band_structure(spec, kSamples));
  return g <= kDefaultMultiplicityTolerance ? 0.0 : consts.epsilon_eV * g;
}

std::complex<double> characteristic(const MonomerSpec& spec, double k, double lambda) {
  Eigen::MatrixXcd a = bloch_matrix(spec, k).matrix;
  a.diagonal().array() -= lambda;
  return a.partialPivLu().determinant();
}

XiDecomposition xi_decomposition(const MonomerSpec& spec, double lambda) {
  const double at0 = characteristic(spec, 0.0, lambda).real();
  const double atpi = characteristic(spec, pi, lambda).real();
  return {0.5 * (at0 - atpi), 0.5 * (at0 + atpi)};
}

}  // namespace polyband::floquet
