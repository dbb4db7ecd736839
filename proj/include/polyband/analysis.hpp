#pragma once

#include "polyband/floquet.hpp"
#include "polyband/graph.hpp"

#include <optional>
#include <vector>

namespace polyband::analysis {

/// sigma^m(x): eigenvalues per monomer strictly below x.
struct CountingFunction {
  Model model = Model::Hmo;
  int m = 1;
  std::vector<double> breakpoints;  // ascending eigenvalues (lambda or mu)

  double operator()(double x) const;
  /// Height of the step at x, counting eigenvalues within `tolerance` of x.
  double jump_at(double x, double tolerance = 1e-6) const;
  double total() const { return static_cast<double>(breakpoints.size()) / m; }
  std::vector<double> sample(const std::vector<double>& xs) const;
};

/// HMO uses all m * N_C eigenvalues; FE uses the lowest ceil(1.2 * N_C * m) levels.
CountingFunction counting_function(const MonomerSpec& spec, int m, Model model);

inline constexpr double kFeLevelBudget = 1.2;

struct GapEntry {
  int m;
  double gap_eV;
};

struct LinearFit {
  double slope;
  double intercept;
};

struct GapSeries {
  Model model = Model::Hmo;
  MonomerSpec monomer;
  std::vector<GapEntry> entries;  // ascending m
  double polymer_limit = 0.0;
  /// Least squares of gap against 1/m on the larger-m half of the entries.
  std::optional<LinearFit> fit;
};

GapSeries gap_sweep(const MonomerSpec& spec, const std::vector<int>& m_list, Model model,
                    const ModelConstants& consts = {});

/// Least-squares line through (x, y); nullopt for fewer than two distinct x.
std::optional<LinearFit> least_squares(const std::vector<double>& x, const std::vector<double>& y);

struct BandWidths {
  double valence_eV;
  double conduction_eV;
};

BandWidths band_widths(const MonomerSpec& spec, Model model, const ModelConstants& consts = {});

struct CountingDeviation {
  int m;
  double deviation;
};

/// For each m, the largest |sigma^m - sigma^inf| over the midpoints of the
/// polymer's interior band gaps (0 when the bands leave no interior gap).
std::vector<CountingDeviation> counting_convergence(const MonomerSpec& spec, Model model, const std::vector<int>& m_list);

/// Midpoints of interior gaps of a band structure paired with sigma^inf there.
std::vector<std::pair<double, double>> polymer_gap_plateaus(const floquet::BandStructure& bs);

}  // namespace polyband::analysis
