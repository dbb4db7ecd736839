#include "polyband/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace polyband::cli;
  CLI::App app{"Band gaps, band structures and counting functions of conjugated oligomers and polymers"};
  app.require_subcommand(1, 1);

  RunConfig cfg;
  std::string model = "hmo", m = "1", format = "csv";

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"gap", "HOMO-LUMO gap for m or a range a..b"},
      {"sweep", "gap series with the polymer limit (whole catalog if --monomer is omitted)"},
      {"bands", "band intervals of the infinite polymer"},
      {"count", "spectral counting function of the m-oligomer"},
      {"catalog", "list built-in and user monomers, or print one as JSON"},
  };
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--monomer", cfg.monomer, "catalog name or monomer JSON file");
    sub->add_option("--output,-o", cfg.output, "output file (default: standard output)");
    if (std::string(s.name) == "catalog") continue;
    sub->add_option("--model", model, "hmo, fe or both")->capture_default_str();
    sub->add_option("--format", format, "csv or svg")->capture_default_str();
    sub->add_option("--beta", cfg.consts.beta_eV, "Hueckel resonance integral in eV")->capture_default_str();
    sub->add_option("--epsilon", cfg.consts.epsilon_eV, "free-electron energy unit in eV")->capture_default_str();
    if (std::string(s.name) == "gap" || std::string(s.name) == "sweep" || std::string(s.name) == "count")
      sub->add_option("--m", m, "monomer count N or range a..b")->capture_default_str();
    if (std::string(s.name) == "bands") {
      sub->add_option("--k-samples", cfg.k_samples, "quasi-momentum grid size on [0, pi]")->capture_default_str();
      sub->add_option("--dispersion", cfg.dispersion_path, "also write the dispersion table");
      sub->add_option("--flat", cfg.flat_path, "also write the flat levels");
    }
    if (std::string(s.name) == "bands" || std::string(s.name) == "sweep")
      sub->add_option("--widths", cfg.widths_path, "also write valence and conduction band widths");
    if (std::string(s.name) == "count")
      sub->add_option("--points", cfg.points, "sample on a uniform grid of this many points")->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "polyband: " << e.what() << '\n';
    return kUsage;
  }

  try {
    cfg.command = parse_command(app.get_subcommands().front()->get_name());
    cfg.model = parse_model(model);
    cfg.format = parse_format(format);
    std::tie(cfg.m_first, cfg.m_last) = parse_m_range(m);
  } catch (const UsageError& e) {
    std::cerr << "polyband: " << e.what() << '\n';
    return kUsage;
  }
  return run(cfg, std::cout, std::cerr);
}
