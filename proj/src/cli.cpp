#include "polyband/cli.hpp"

#include "polyband/analysis.hpp"
#include "polyband/floquet.hpp"
#include "polyband/free_electron.hpp"
#include "polyband/hmo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace polyband::cli {

namespace {

namespace fs = std::filesystem;

std::string model_name(Model m) { return m == Model::Hmo ? "hmo" : "fe"; }

std::vector<Model> models_of(ModelChoice c) {
  switch (c) {
    case ModelChoice::Hmo: return {Model::Hmo};
    case ModelChoice::Fe: return {Model::Fe};
    case ModelChoice::Both: return {Model::Hmo, Model::Fe};
  }
  return {};
}

Model single_model(ModelChoice c, const char* command) {
  if (c == ModelChoice::Both)
    throw UsageError(std::string("'") + command + "' takes a single model (hmo or fe)");
  return c == ModelChoice::Hmo ? Model::Hmo : Model::Fe;
}

int parse_int(std::string_view s, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw UsageError(std::string("bad ") + what + " '" + std::string(s) + "'");
  return v;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::ios_base::failure("write to '" + path + "' failed");
}

std::string render(const CsvTable& t, Format format, PlotKind kind, SvgOptions opts) {
  if (format == Format::Csv) return t.str();
  return render_svg(t, kind, opts);
}

CsvTable bands_table(const floquet::BandStructure& bs) {
  CsvTable t({"band_index", "lo", "hi", "flat_flag"});
  for (std::size_t i = 0; i < bs.bands.size(); ++i)
    t.add_row({std::to_string(i + 1), format_number(bs.bands[i].lo), format_number(bs.bands[i].hi),
               bs.bands[i].flat ? "1" : "0"});
  return t;
}

CsvTable dispersion_table(const floquet::BandStructure& bs) {
  std::vector<std::string> head{"k"};
  for (Eigen::Index r = 0; r < bs.dispersion.cols(); ++r) head.push_back("lambda_" + std::to_string(r + 1));
  CsvTable t(std::move(head));
  for (std::size_t i = 0; i < bs.k_grid.size(); ++i) {
    std::vector<std::string> row{format_number(bs.k_grid[i])};
    for (Eigen::Index r = 0; r < bs.dispersion.cols(); ++r)
      row.push_back(format_number(bs.dispersion(static_cast<Eigen::Index>(i), r)));
    t.add_row(std::move(row));
  }
  return t;
}

CsvTable flat_table(const floquet::BandStructure& bs) {
  CsvTable t({"value", "multiplicity"});
  for (const auto& f : bs.flat_levels) t.add_row({format_number(f.value), std::to_string(f.multiplicity)});
  return t;
}

CsvTable widths_table(const std::vector<MonomerSpec>& specs, ModelChoice choice, const ModelConstants& consts) {
  CsvTable t({"monomer", "model", "valence_eV", "conduction_eV"});
  for (const auto& spec : specs)
    for (Model m : models_of(choice)) {
      const auto w = analysis::band_widths(spec, m, consts);
      t.add_row({spec.name, model_name(m), format_number(w.valence_eV), format_number(w.conduction_eV)});
    }
  return t;
}

CsvTable catalog_table() {
  CsvTable t({"name", "n_atoms", "n_double_bonds", "link_b", "link_e", "source"});
  auto add = [&](const MonomerSpec& s, const std::string& source) {
    t.add_row({s.name, std::to_string(s.n_atoms), std::to_string(s.n_double_bonds), std::to_string(s.link_b + 1),
               std::to_string(s.link_e + 1), source});
  };
  for (const auto& s : catalog()) add(s, "builtin");
  if (const char* dir = std::getenv("POLYBAND_CATALOG_DIR"); dir && *dir && fs::is_directory(dir)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& p : files) add(load_monomer_file(p.string()), p.filename().string());
  }
  return t;
}

int run_command(const RunConfig& c, std::ostream& out) {
  switch (c.command) {
    case Command::Catalog: {
      if (!c.monomer.empty()) {
        if (c.format == Format::Svg) throw UsageError("catalog has no plot form");
        emit(serialize_monomer(resolve_monomer(c.monomer)), c.output, out);
        return kOk;
      }
      if (c.format == Format::Svg) throw UsageError("catalog has no plot form");
      emit(catalog_table().str(), c.output, out);
      return kOk;
    }
    case Command::Gap:
    case Command::Sweep: {
      const bool sweep = c.command == Command::Sweep;
      std::vector<MonomerSpec> specs;
      if (c.monomer.empty()) {
        if (!sweep) throw UsageError("gap needs --monomer");
        specs = catalog();
      } else {
        specs.push_back(resolve_monomer(c.monomer));
      }
      CsvTable t({"model", "monomer", "m", "inv_m", "gap_eV"});
      for (const auto& spec : specs) {
        const CsvTable part = gap_table(spec, c.model, c.m_first, c.m_last, c.consts, sweep);
        for (const auto& row : part.rows) t.add_row(row);
      }
      SvgOptions opts;
      opts.title = sweep ? "gap against 1/m" : specs.front().name + " gap";
      emit(render(t, c.format, PlotKind::GapVsInvM, opts), c.output, out);
      if (!c.widths_path.empty()) emit(widths_table(specs, c.model, c.consts).str(), c.widths_path, out);
      return kOk;
    }
    case Command::Bands: {
      if (c.monomer.empty()) throw UsageError("bands needs --monomer");
      const Model model = single_model(c.model, "bands");
      const auto spec = resolve_monomer(c.monomer);
      const auto bs = model == Model::Hmo ? floquet::band_structure(spec, c.k_samples)
                                          : floquet::fe_band_structure(spec, c.k_samples);
      SvgOptions opts;
      opts.title = spec.name + " bands (" + model_name(model) + ")";
      if (model == Model::Hmo) opts.x_ticks = floquet::band_edges(spec);
      emit(render(bands_table(bs), c.format, PlotKind::Bands, opts), c.output, out);
      if (!c.dispersion_path.empty()) emit(dispersion_table(bs).str(), c.dispersion_path, out);
      if (!c.flat_path.empty()) emit(flat_table(bs).str(), c.flat_path, out);
      if (!c.widths_path.empty()) emit(widths_table({spec}, c.model, c.consts).str(), c.widths_path, out);
      return kOk;
    }
    case Command::Count: {
      if (c.monomer.empty()) throw UsageError("count needs --monomer");
      if (c.m_first != c.m_last) throw UsageError("count takes a single m");
      const Model model = single_model(c.model, "count");
      const auto spec = resolve_monomer(c.monomer);
      SvgOptions opts;
      opts.title = spec.name + " counting function, m = " + std::to_string(c.m_first);
      if (model == Model::Hmo) opts.x_ticks = floquet::band_edges(spec);
      emit(render(counting_table(spec, model, c.m_first, c.points), c.format, PlotKind::Counting, opts), c.output,
           out);
      return kOk;
    }
  }
  throw UsageError("unknown command");
}

}  // namespace

void RunConfig::validate() const {
  if (m_first < 1 || m_last < m_first) throw UsageError("m must satisfy 1 <= first <= last");
  if (k_samples < 2) throw UsageError("--k-samples must be at least 2");
  if (points < 0) throw UsageError("--points must be nonnegative");
  try {
    consts.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Command parse_command(std::string_view s) {
  if (s == "gap") return Command::Gap;
  if (s == "bands") return Command::Bands;
  if (s == "count") return Command::Count;
  if (s == "sweep") return Command::Sweep;
  if (s == "catalog") return Command::Catalog;
  throw UsageError("unknown command '" + std::string(s) + "'");
}

ModelChoice parse_model(std::string_view s) {
  if (s == "hmo") return ModelChoice::Hmo;
  if (s == "fe") return ModelChoice::Fe;
  if (s == "both") return ModelChoice::Both;
  throw UsageError("unknown model '" + std::string(s) + "' (expected hmo, fe or both)");
}

Format parse_format(std::string_view s) {
  if (s == "csv") return Format::Csv;
  if (s == "svg") return Format::Svg;
  throw UsageError("unknown format '" + std::string(s) + "' (expected csv or svg)");
}

std::pair<int, int> parse_m_range(std::string_view s) {
  const auto dots = s.find("..");
  std::pair<int, int> r;
  if (dots == std::string_view::npos) {
    r.first = r.second = parse_int(s, "m");
  } else {
    r.first = parse_int(s.substr(0, dots), "m");
    r.second = parse_int(s.substr(dots + 2), "m");
  }
  if (r.first < 1 || r.second < r.first) throw UsageError("m range must satisfy 1 <= a <= b, got '" + std::string(s) + "'");
  return r;
}

MonomerSpec resolve_monomer(const std::string& name_or_path) {
  for (const auto& s : catalog())
    if (std::equal(s.name.begin(), s.name.end(), name_or_path.begin(), name_or_path.end(),
                   [](char a, char b) { return std::tolower(static_cast<unsigned char>(a)) ==
                                               std::tolower(static_cast<unsigned char>(b)); }))
      return s;
  if (fs::is_regular_file(name_or_path)) return load_monomer_file(name_or_path);
  if (const char* dir = std::getenv("POLYBAND_CATALOG_DIR"); dir && *dir) {
    for (const auto& candidate : {fs::path(dir) / name_or_path, fs::path(dir) / (name_or_path + ".json")})
      if (fs::is_regular_file(candidate)) return load_monomer_file(candidate.string());
  }
  throw GraphError("unknown monomer '" + name_or_path + "' (not in the catalog and no such file)");
}

CsvTable gap_table(const MonomerSpec& spec, ModelChoice choice, int m_first, int m_last, const ModelConstants& consts,
                   bool with_limit) {
  CsvTable t({"model", "monomer", "m", "inv_m", "gap_eV"});
  const auto models = models_of(choice);
  for (int m = m_first; m <= m_last; ++m)
    for (Model model : models) {
      const double g = model == Model::Hmo ? hmo::gap(spec, m, consts) : fe::gap(spec, m, consts);
      t.add_row({model_name(model), spec.name, std::to_string(m), format_number(1.0 / m), format_number(g)});
    }
  if (with_limit)
    for (Model model : models)
      t.add_row({model_name(model), spec.name, "inf", "0", format_number(floquet::polymer_gap(spec, model, consts))});
  return t;
}

CsvTable counting_table(const MonomerSpec& spec, Model model, int m, int points) {
  const auto sigma = analysis::counting_function(spec, m, model);
  CsvTable t({"x", "sigma"});
  if (sigma.breakpoints.empty()) return t;
  const double lo = sigma.breakpoints.front(), hi = sigma.breakpoints.back();
  const double pad = 0.05 * std::max(hi - lo, 1.0);
  if (points > 0) {
    for (int i = 0; i < points; ++i) {
      const double x = points == 1 ? lo : (lo - pad) + (hi - lo + 2 * pad) * i / (points - 1);
      t.add_row({format_number(x), format_number(sigma(x))});
    }
    return t;
  }
  t.add_row({format_number(lo - pad), "0"});
  double last = std::nan("");
  for (double b : sigma.breakpoints) {
    if (b == last) continue;
    last = b;
    t.add_row({format_number(b), format_number(sigma(b))});
  }
  t.add_row({format_number(hi + pad), format_number(sigma.total())});
  return t;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    return run_command(config, out);
  } catch (const UsageError& e) {
    err << "polyband: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "polyband: malformed monomer file: " << e.what() << '\n';
    return kUsage;
  } catch (const GraphError& e) {
    err << "polyband: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericError& e) {
    err << "polyband: numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::ios_base::failure& e) {
    err << "polyband: I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    err << "polyband: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace polyband::cli
