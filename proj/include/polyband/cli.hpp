#pragma once

#include "polyband/csv.hpp"
#include "polyband/graph.hpp"
#include "polyband/svg.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

namespace polyband::cli {

enum class Command { Gap, Bands, Count, Sweep, Catalog };
enum class ModelChoice { Hmo, Fe, Both };
enum class Format { Csv, Svg };

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,  // also unknown monomer and malformed monomer file
  kNumeric = 3,
  kIo = 4,
};

struct RunConfig {
  Command command = Command::Catalog;
  std::string monomer;  // catalog name or path; empty means the whole catalog where allowed
  ModelChoice model = ModelChoice::Hmo;
  int m_first = 1;
  int m_last = 1;
  std::string output;  // empty: standard output
  Format format = Format::Csv;
  ModelConstants consts;
  int k_samples = 721;
  std::string dispersion_path;
  std::string flat_path;
  std::string widths_path;
  int points = 0;  // counting grid size; 0 uses the breakpoints themselves

  void validate() const;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Command parse_command(std::string_view s);
ModelChoice parse_model(std::string_view s);
Format parse_format(std::string_view s);
/// "7" or "a..b" with 1 <= a <= b.
std::pair<int, int> parse_m_range(std::string_view s);

/// Catalog name (case-insensitive), then an existing file path, then
/// <name> or <name>.json inside $POLYBAND_CATALOG_DIR.
MonomerSpec resolve_monomer(const std::string& name_or_path);

/// Result tables of one command, before formatting.
CsvTable gap_table(const MonomerSpec& spec, ModelChoice model, int m_first, int m_last, const ModelConstants& consts,
                   bool with_limit);
CsvTable counting_table(const MonomerSpec& spec, Model model, int m, int points);

/// Runs a command; diagnostics go to `err`, data to `out` when no output path is set.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace polyband::cli
