#include "polyband/analysis.hpp"

#include "polyband/free_electron.hpp"
#include "polyband/hmo.hpp"

#include <algorithm>
#include <cmath>

namespace polyband::analysis {

namespace {

constexpr int kBandSamples = 721;

floquet::BandStructure model_bands(const MonomerSpec& spec, Model model) {
  return model == Model::Hmo ? floquet::band_structure(spec, kBandSamples)
                             : floquet::fe_band_structure(spec, kBandSamples, 2);
}

}  // namespace

double CountingFunction::operator()(double x) const {
  const auto below = std::lower_bound(breakpoints.begin(), breakpoints.end(), x) - breakpoints.begin();
  return static_cast<double>(below) / m;
}

double CountingFunction::jump_at(double x, double tolerance) const {
  const auto lo = std::lower_bound(breakpoints.begin(), breakpoints.end(), x - tolerance);
  const auto hi = std::upper_bound(breakpoints.begin(), breakpoints.end(), x + tolerance);
  return static_cast<double>(hi - lo) / m;
}

std::vector<double> CountingFunction::sample(const std::vector<double>& xs) const {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back((*this)(x));
  return out;
}

CountingFunction counting_function(const MonomerSpec& spec, int m, Model model) {
  if (m < 1) throw std::invalid_argument("monomer count must be at least 1");
  CountingFunction f;
  f.model = model;
  f.m = m;
  if (model == Model::Hmo) {
    const auto g = build_oligomer(spec, m, false);
    f.breakpoints = eig_symmetric(g.adjacency()).values;
  } else {
    const auto g = build_oligomer(spec, m, true);
    const int budget = static_cast<int>(std::ceil(kFeLevelBudget * spec.n_atoms * m));
    f.breakpoints = fe::levels(g, budget).mu_values;
  }
  return f;
}

std::optional<LinearFit> least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) return std::nullopt;
  const double slope = sxy / sxx;
  return LinearFit{slope, my - slope * mx};
}

GapSeries gap_sweep(const MonomerSpec& spec, const std::vector<int>& m_list, Model model, const ModelConstants& consts) {
  if (m_list.empty()) throw std::invalid_argument("m list must not be empty");
  if (!std::is_sorted(m_list.begin(), m_list.end()) ||
      std::adjacent_find(m_list.begin(), m_list.end()) != m_list.end())
    throw std::invalid_argument("m list must be strictly ascending");
  GapSeries series;
  series.model = model;
  series.monomer = spec;
  series.entries.reserve(m_list.size());
  for (int m : m_list) {
    const double g = model == Model::Hmo ? hmo::gap(spec, m, consts) : fe::gap(spec, m, consts);
    series.entries.push_back({m, g});
  }
  series.polymer_limit = floquet::polymer_gap(spec, model, consts);

  const std::size_t half = series.entries.size() / 2;
  std::vector<double> x, y;
  for (std::size_t i = half; i < series.entries.size(); ++i) {
    x.push_back(1.0 / series.entries[i].m);
    y.push_back(series.entries[i].gap_eV);
  }
  series.fit = least_squares(x, y);
  return series;
}

BandWidths band_widths(const MonomerSpec& spec, Model model, const ModelConstants& consts) {
  consts.validate();
  const auto bs = model_bands(spec, model);
  const double scale = model == Model::Hmo ? consts.beta_eV : consts.epsilon_eV;
  return {scale * bs.bands[static_cast<std::size_t>(bs.valence_index)].width(),
          scale * bs.bands[static_cast<std::size_t>(bs.conduction_index)].width()};
}

std::vector<std::pair<double, double>> polymer_gap_plateaus(const floquet::BandStructure& bs) {
  std::vector<std::pair<double, double>> out;
  if (bs.bands.empty()) return out;
  // bands are sorted by lower edge
  double reach = bs.bands.front().hi;
  double below = bs.bands.front().weight;
  for (std::size_t i = 1; i < bs.bands.size(); ++i) {
    const auto& b = bs.bands[i];
    if (b.lo > reach + kDefaultMultiplicityTolerance) out.emplace_back(0.5 * (reach + b.lo), below);
    reach = std::max(reach, b.hi);
    below += b.weight;
  }
  return out;
}

std::vector<CountingDeviation> counting_convergence(const MonomerSpec& spec, Model model, const std::vector<int>& m_list) {
  const auto plateaus = polymer_gap_plateaus(model_bands(spec, model));
  std::vector<CountingDeviation> out;
  for (int m : m_list) {
    const auto sigma = counting_function(spec, m, model);
    const double top = sigma.breakpoints.empty() ? 0.0 : sigma.breakpoints.back();
    double worst = 0.0;
    for (auto [x, polymer] : plateaus) {
      if (model == Model::Fe && x >= top) continue;  // beyond the computed level budget
      worst = std::max(worst, std::abs(sigma(x) - polymer));
    }
    out.push_back({m, worst});
  }
  return out;
}

}  // namespace polyband::analysis
