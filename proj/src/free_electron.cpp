#include "polyband/free_electron.hpp"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <Eigen/SparseQR>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>

namespace polyband::fe {

namespace {

using std::numbers::pi;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

void require_metric_graph(const OligomerGraph& g) {
  if (!g.is_equilateral()) throw GraphError("free-electron model requires an equilateral graph");
  if (g.bonds().empty()) throw GraphError("free-electron model needs at least one bond");
  if (!g.is_connected()) throw GraphError("free-electron model requires a connected graph");
}

int sparse_rank(SparseMatrix a) {
  a.makeCompressed();
  Eigen::SparseQR<SparseMatrix, Eigen::COLAMDOrdering<int>> qr;
  qr.setPivotThreshold(kNullityTolerance);
  qr.compute(a);
  if (qr.info() != Eigen::Success) throw NumericError("sparse QR failed while computing nullity");
  return static_cast<int>(qr.rank());
}

struct Level {
  double mu;
  Provenance origin;
};

// Generalized eigenvalues and exceptional multiplicities of one graph, reused
// while the level window grows.
class LevelAssembler {
 public:
  explicit LevelAssembler(const OligomerGraph& g) : graph_(g) {
    require_metric_graph(g);
    const Spectrum tilde = generalized_values(g);
    for (double t : tilde.values)
      if (t > -1.0 + kUnitCircleTolerance && t < 1.0 - kUnitCircleTolerance) angles_.push_back(std::acos(t));
    std::sort(angles_.begin(), angles_.end());
  }

  std::vector<Level> up_to(double k_max) {
    std::vector<Level> out;
    const int windows = static_cast<int>(std::floor(k_max / pi));
    for (int j = 0; j <= windows; ++j) {
      const int mult = multiplicity(j);
      const double k0 = j * pi;
      if (k0 <= k_max)
        for (int r = 0; r < mult; ++r) out.push_back({k0 * k0, Provenance::Exceptional});
      for (double theta : angles_) {
        const double k = (j % 2 == 0) ? j * pi + theta : (j + 1) * pi - theta;
        if (k <= k_max) out.push_back({k * k, Provenance::Branch});
      }
    }
    std::stable_sort(out.begin(), out.end(), [](const Level& a, const Level& b) { return a.mu < b.mu; });
    return out;
  }

  std::size_t branches_per_window() const { return angles_.size(); }

 private:
  int multiplicity(int j) {
    // the exceptional system depends on n only through n == 0 and the parity of n
    const int key = j == 0 ? 0 : (j % 2 == 1 ? 1 : 2);
    if (!cache_[key]) cache_[key] = exceptional_multiplicity(graph_, key);
    return *cache_[key];
  }

  const OligomerGraph& graph_;
  std::vector<double> angles_;
  std::optional<int> cache_[3];
};

MetricSpectrum to_spectrum(const std::vector<Level>& levels, std::size_t count) {
  MetricSpectrum s;
  const std::size_t n = std::min(count, levels.size());
  s.mu_values.reserve(n);
  s.provenance.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.mu_values.push_back(levels[i].mu);
    s.provenance.push_back(levels[i].origin);
  }
  s.count_requested = static_cast<int>(n);
  return s;
}

// Discretized metric graph: stiffness and lumped mass.
struct Discretization {
  SparseMatrix stiffness;
  Eigen::VectorXd mass;
};

Discretization discretize(const OligomerGraph& g, int p) {
  // terminal vertices are clamped to zero and carry no unknown
  const int nv = g.carbon_count();
  const int ne = static_cast<int>(g.bonds().size());
  const int n = nv + ne * p;
  const double h = 1.0 / (p + 1);
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(4 * (ne * (p + 1))));
  Eigen::VectorXd mass = Eigen::VectorXd::Constant(n, h);
  for (int v = 0; v < nv; ++v) mass[v] = 0.0;

  auto segment = [&](int a, int b) {
    if (a >= 0) trip.emplace_back(a, a, 1.0 / h);
    if (b >= 0) trip.emplace_back(b, b, 1.0 / h);
    if (a >= 0 && b >= 0) {
      trip.emplace_back(a, b, -1.0 / h);
      trip.emplace_back(b, a, -1.0 / h);
    }
  };
  for (int e = 0; e < ne; ++e) {
    auto [u, v] = g.bonds()[static_cast<std::size_t>(e)];
    if (g.is_terminal(u)) u = -1;
    if (g.is_terminal(v)) v = -1;
    if (u >= 0) mass[u] += 0.5 * h;
    if (v >= 0) mass[v] += 0.5 * h;
    const int base = nv + e * p;
    int prev = u;
    for (int t = 0; t < p; ++t) {
      segment(prev, base + t);
      prev = base + t;
    }
    segment(prev, v);
  }
  SparseMatrix k(n, n);
  k.setFromTriplets(trip.begin(), trip.end());
  return {std::move(k), std::move(mass)};
}

// Number of eigenvalues of K u = mu M u strictly below sigma (Sylvester inertia).
class InertiaCounter {
 public:
  explicit InertiaCounter(const Discretization& d) : d_(d) {
    shifted_ = d.stiffness;
    solver_.analyzePattern(shifted_);
  }

  int below(double sigma) {
    shifted_ = d_.stiffness;
    for (int i = 0; i < shifted_.rows(); ++i) shifted_.coeffRef(i, i) -= sigma * d_.mass[i];
    solver_.factorize(shifted_);
    if (solver_.info() != Eigen::Success) throw NumericError("LDL^T factorization failed");
    const auto& diag = solver_.vectorD();
    return static_cast<int>((diag.array() < 0.0).count());
  }

 private:
  const Discretization& d_;
  SparseMatrix shifted_;
  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> solver_;
};

constexpr int kDenseOracleLimit = 1200;

std::vector<double> lowest_by_bisection(const Discretization& d, int count) {
  InertiaCounter counter(d);
  double hi = 1.0;
  while (counter.below(hi) < count) hi *= 2.0;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  double lo_floor = -1e-9;
  for (int i = 0; i < count; ++i) {
    double lo = lo_floor, up = hi;
    while (up - lo > 1e-13 * std::max(1.0, up)) {
      double mid = 0.5 * (lo + up);
      if (counter.below(mid) >= i + 1)
        up = mid;
      else
        lo = mid;
    }
    out.push_back(up);
    lo_floor = lo;
  }
  return out;
}

}  // namespace

Spectrum generalized_values(const OligomerGraph& g) {
  // hard-wall ends drop out: only the carbon block couples, with full valency
  const int nc = g.carbon_count();
  return eig_generalized(g.adjacency().topLeftCorner(nc, nc), g.valency().head(nc));
}

int exceptional_multiplicity(const OligomerGraph& g, int n) {
  if (n < 0) throw std::invalid_argument("exceptional index must be nonnegative");
  if (!g.is_equilateral()) throw GraphError("free-electron model requires an equilateral graph");
  const int nv = g.n_vertices();
  const int ne = static_cast<int>(g.bonds().size());
  // unknowns: psi_0..psi_{nv-1}, then a_0..a_{ne-1}
  std::vector<Triplet> trip;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  for (int e = 0; e < ne; ++e) {
    auto [u, v] = g.bonds()[static_cast<std::size_t>(e)];
    if (n == 0) {
      // a x + b on [0, 1]: b = psi_u, a + b = psi_v
      trip.emplace_back(e, u, 1.0);
      trip.emplace_back(e, nv + e, 1.0);
      trip.emplace_back(e, v, -1.0);
      // outgoing derivatives: +a at u, -a at v
      if (!g.is_terminal(u)) trip.emplace_back(ne + u, nv + e, 1.0);
      if (!g.is_terminal(v)) trip.emplace_back(ne + v, nv + e, -1.0);
    } else {
      // a sin(n pi x) + b cos(n pi x): b = psi_u, (-1)^n b = psi_v
      trip.emplace_back(e, u, sign);
      trip.emplace_back(e, v, -1.0);
      // outgoing derivatives (over n pi): a at u, -(-1)^n a at v
      if (!g.is_terminal(u)) trip.emplace_back(ne + u, nv + e, 1.0);
      if (!g.is_terminal(v)) trip.emplace_back(ne + v, nv + e, -sign);
    }
  }
  // a hard-wall end trades its flux balance for psi = 0
  for (int v = g.carbon_count(); v < nv; ++v) trip.emplace_back(ne + v, v, 1.0);
  SparseMatrix system(ne + nv, nv + ne);
  system.setFromTriplets(trip.begin(), trip.end());
  return (nv + ne) - sparse_rank(system);
}

MetricSpectrum levels_up_to(const OligomerGraph& g, double mu_max) {
  LevelAssembler assembler(g);
  const auto all = assembler.up_to(std::sqrt(std::max(0.0, mu_max)));
  return to_spectrum(all, all.size());
}

MetricSpectrum levels(const OligomerGraph& g, int count) {
  if (count < 1) throw std::invalid_argument("level count must be positive");
  LevelAssembler assembler(g);
  const double length = g.total_length();
  // Weyl: about length * k / pi levels below k; start there and widen if short
  double k_max = pi * (std::ceil(count / length) + 1.0);
  for (;;) {
    auto all = assembler.up_to(k_max);
    if (all.size() >= static_cast<std::size_t>(count)) return to_spectrum(all, static_cast<std::size_t>(count));
    k_max += 2.0 * pi;
  }
}

double gap_from_levels(const MetricSpectrum& s, int electron_pairs, double epsilon_eV) {
  if (electron_pairs < 1 || static_cast<std::size_t>(electron_pairs) >= s.mu_values.size())
    throw GraphError("not enough levels for occupancy");
  const auto homo = static_cast<std::size_t>(electron_pairs - 1);
  const double hi = s.mu_values[homo + 1], lo = s.mu_values[homo];
  if (hi - lo <= kDefaultMultiplicityTolerance * std::max(1.0, hi)) return 0.0;
  return epsilon_eV * (hi - lo);
}

double gap(const MonomerSpec& spec, int m, const ModelConstants& consts) {
  consts.validate();
  const auto g = build_oligomer(spec, m, true);
  const int pairs = g.electron_pairs();
  return gap_from_levels(levels(g, pairs + 1), pairs, consts.epsilon_eV);
}

MetricSpectrum discretized_levels(const OligomerGraph& g, int points_per_bond, int count) {
  if (points_per_bond < 8) throw std::invalid_argument("discretization needs at least 8 points per bond");
  if (count < 1) throw std::invalid_argument("level count must be positive");
  require_metric_graph(g);
  const Discretization d = discretize(g, points_per_bond);
  const auto n = static_cast<int>(d.mass.size());
  count = std::min(count, n);

  MetricSpectrum s;
  if (n <= kDenseOracleLimit) {
    const Eigen::VectorXd inv_sqrt = d.mass.array().rsqrt();
    Eigen::MatrixXd a = inv_sqrt.asDiagonal() * Eigen::MatrixXd(d.stiffness) * inv_sqrt.asDiagonal();
    a = 0.5 * (a + a.transpose()).eval();
    const Spectrum full = eig_symmetric(a);
    s.mu_values.assign(full.values.begin(), full.values.begin() + count);
  } else {
    s.mu_values = lowest_by_bisection(d, count);
  }
  s.count_requested = count;
  return s;
}

}  // namespace polyband::fe
