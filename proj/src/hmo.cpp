#include "polyband/hmo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace polyband::hmo {

namespace {

Spectrum lambda_spectrum(const OligomerGraph& g) {
  if (!g.is_equilateral()) throw GraphError("Hückel model requires an equilateral graph");
  const int carbons = g.carbon_count();
  Spectrum s = eig_symmetric(g.adjacency().topLeftCorner(carbons, carbons));
  s.tag = ModelTag::HmoLambda;
  return s;
}

// lambda in descending (occupation) order, 1-based
double lambda_desc(const Spectrum& s, int pos) { return s.values[s.values.size() - static_cast<std::size_t>(pos)]; }

Spectrum from_values(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  Spectrum s;
  s.values = std::move(v);
  return s;
}

}  // namespace

Spectrum levels(const OligomerGraph& g, const ModelConstants& consts) {
  consts.validate();
  Spectrum lambda = lambda_spectrum(g);
  std::vector<double> e;
  e.reserve(lambda.size());
  for (double l : lambda.values) e.push_back(consts.alpha_eV - consts.beta_eV * l);
  Spectrum out = from_values(std::move(e));
  out.tag = ModelTag::ElectronVolt;
  out.multiplicity_tolerance = lambda.multiplicity_tolerance * consts.beta_eV;
  return out;
}

double gap_from_lambda(const Spectrum& lambda, int electron_pairs, double beta_eV) {
  const int n = static_cast<int>(lambda.size());
  if (electron_pairs < 1 || electron_pairs + 1 > n)
    throw GraphError("oligomer has too few orbitals for " + std::to_string(electron_pairs) + " electron pairs");
  const double d = lambda_desc(lambda, electron_pairs) - lambda_desc(lambda, electron_pairs + 1);
  if (d <= lambda.multiplicity_tolerance) return 0.0;
  return beta_eV * d;
}

OrbitalFilling filling(const OligomerGraph& g, int electron_pairs, const ModelConstants& consts) {
  Spectrum lambda = lambda_spectrum(g);
  const int n = static_cast<int>(lambda.size());
  if (electron_pairs < 1 || electron_pairs + 1 > n) throw GraphError("too few orbitals for requested occupancy");

  OrbitalFilling f;
  f.levels = levels(g, consts);
  f.n_electrons = 2 * electron_pairs;
  f.homo_index = electron_pairs;
  f.lumo_index = electron_pairs + 1;
  const double homo = lambda_desc(lambda, electron_pairs);
  f.homo_degeneracy = lambda.multiplicity_of(homo);
  f.somo = lambda_desc(lambda, electron_pairs) - lambda_desc(lambda, electron_pairs + 1) <=
           lambda.multiplicity_tolerance;
  return f;
}

double gap(const MonomerSpec& spec, int m, const ModelConstants& consts) {
  consts.validate();
  const auto g = build_oligomer(spec, m, false);
  return gap_from_lambda(lambda_spectrum(g), g.electron_pairs(), consts.beta_eV);
}

Spectrum ring_spectrum_closed_form(int m) {
  if (m < 2) throw std::invalid_argument("ring needs m >= 2 (m = 1 would be a double edge)");
  std::vector<double> v;
  for (int n = 1; n <= 2 * m; ++n) v.push_back(2.0 * std::cos(n * std::numbers::pi / m));
  return from_values(std::move(v));
}

Spectrum chain_spectrum_closed_form(int m) {
  if (m < 1) throw std::invalid_argument("chain needs m >= 1");
  std::vector<double> v;
  for (int n = 1; n <= 2 * m; ++n) v.push_back(2.0 * std::cos(n * std::numbers::pi / (2 * m + 1)));
  return from_values(std::move(v));
}

RingStability huckel_rule(int m) {
  if (m < 2) throw std::invalid_argument("Hückel rule applies to rings with m >= 2");
  const Spectrum s = ring_spectrum_closed_form(m);
  // multiplet sizes in occupation order; m pairs fill the first orbitals
  const auto groups = s.multiplets();
  int filled = 0;
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
    filled += it->multiplicity;
    if (filled >= m) return filled == m ? RingStability::Stable : RingStability::Reactive;
  }
  return RingStability::Reactive;
}

int zero_modes(const OligomerGraph& g, double tolerance) {
  const Spectrum s = eig_symmetric(g.adjacency());
  return static_cast<int>(std::count_if(s.values.begin(), s.values.end(),
                                        [&](double x) { return std::abs(x) <= tolerance; }));
}

}  // namespace polyband::hmo
