#pragma once

#include "polyband/csv.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polyband {

enum class PlotKind { GapVsInvM, Counting, Bands };

PlotKind parse_plot_kind(std::string_view name);
std::string to_string(PlotKind kind);

struct SvgOptions {
  std::string title;
  /// Extra marks drawn under the horizontal axis (band edges, say).
  std::vector<double> x_ticks;
  int width = 640;
  int height = 420;
};

/// Expected columns:
///   gap-vs-invm  inv_m, gap_eV (optional model and monomer split the lines)
///   counting     x, sigma
///   bands        band_index, lo, hi, flat_flag
/// Throws std::invalid_argument for an empty table.
std::string render_svg(const CsvTable& data, PlotKind kind, const SvgOptions& options = {});

}  // namespace polyband
