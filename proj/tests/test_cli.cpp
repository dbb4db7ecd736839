#include "doctest.h"

#include "polyband/cli.hpp"
#include "polyband/csv.hpp"
#include "polyband/svg.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace polyband;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const cli::RunConfig& c) {
  std::ostringstream out, err;
  const int code = cli::run(c, out, err);
  return {code, out.str(), err.str()};
}

cli::RunConfig config(cli::Command command, const std::string& monomer, cli::ModelChoice model = cli::ModelChoice::Hmo) {
  cli::RunConfig c;
  c.command = command;
  c.monomer = monomer;
  c.model = model;
  return c;
}

fs::path scratch_dir() {
  const auto dir = fs::temp_directory_path() / "polyband_cli_test";
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333333");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(INFINITY) == "inf");
  CHECK(parse_number("inf") == INFINITY);
  CHECK(parse_number("2.5e-3") == 2.5e-3);
  CHECK_THROWS_AS(parse_number("2,5"), CsvError);
}

TEST_CASE("CSV round trip") {
  CsvTable t({"a", "b"});
  t.add_row({"1", "x"});
  t.add_row({format_number(std::numbers::pi), "y"});
  const auto text = t.str();
  CHECK(text == "a,b\n1,x\n3.14159265358979,y\n");
  const auto back = CsvTable::parse(text);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK(back.numbers("a")[1] == doctest::Approx(std::numbers::pi).epsilon(1e-14));
  CHECK_THROWS_AS(t.add_row({"1"}), CsvError);
  CHECK_THROWS_AS(CsvTable::parse("a,b\n1\n"), CsvError);
  CHECK_THROWS_AS(CsvTable::parse(""), CsvError);
  CHECK_THROWS_AS(t.column("c"), CsvError);
  CHECK(CsvTable::parse("a,b\r\n1,2\r\n").rows.size() == 1);
}

TEST_CASE("SVG rendering") {
  CsvTable gap({"model", "monomer", "m", "inv_m", "gap_eV"});
  gap.add_row({"hmo", "PA", "1", "1", "6.1"});
  gap.add_row({"hmo", "PA", "2", "0.5", "3.77"});
  gap.add_row({"hmo", "PA", "inf", "0", "0"});
  const auto a = render_svg(gap, PlotKind::GapVsInvM), b = render_svg(gap, PlotKind::GapVsInvM);
  CHECK(a == b);
  CHECK(a.rfind("<?xml", 0) == 0);
  CHECK(a.find("<polyline") != std::string::npos);
  CHECK(a.find("1/m") != std::string::npos);
  CHECK(a.find("</svg>") != std::string::npos);

  CsvTable empty({"x", "sigma"});
  CHECK_THROWS_AS(render_svg(empty, PlotKind::Counting), std::invalid_argument);

  CsvTable counting({"x", "sigma"});
  counting.add_row({"-3", "0"});
  counting.add_row({"1", "2"});
  SvgOptions opts;
  opts.x_ticks = {-2.34, 1.0};
  const auto c = render_svg(counting, PlotKind::Counting, opts);
  CHECK(c.find("#d62728") != std::string::npos);
  CHECK(c.find("<path") != std::string::npos);

  CsvTable bands({"band_index", "lo", "hi", "flat_flag"});
  bands.add_row({"1", "-2", "0", "0"});
  bands.add_row({"2", "1", "1", "1"});
  CHECK(render_svg(bands, PlotKind::Bands).find("<circle") != std::string::npos);
  CHECK(parse_plot_kind("bands") == PlotKind::Bands);
  CHECK(to_string(PlotKind::GapVsInvM) == "gap-vs-invm");
  CHECK_THROWS(parse_plot_kind("pie"));
}

TEST_CASE("argument parsing helpers") {
  CHECK(cli::parse_m_range("7") == std::pair{7, 7});
  CHECK(cli::parse_m_range("1..100") == std::pair{1, 100});
  CHECK_THROWS_AS(cli::parse_m_range("0..3"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_m_range("5..3"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_m_range("x"), cli::UsageError);
  CHECK(cli::parse_model("both") == cli::ModelChoice::Both);
  CHECK_THROWS_AS(cli::parse_model("dft"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_format("png"), cli::UsageError);
  CHECK(cli::parse_command("sweep") == cli::Command::Sweep);
}

TEST_CASE("gap command reproduces the PA closed form") {
  auto c = config(cli::Command::Gap, "PA");
  c.m_first = 1;
  c.m_last = 100;
  const auto r = run_cli(c);
  REQUIRE(r.code == 0);
  const auto t = CsvTable::parse(r.out);
  CHECK(t.header == std::vector<std::string>{"model", "monomer", "m", "inv_m", "gap_eV"});
  REQUIRE(t.rows.size() == 100);
  const auto m = t.numbers("m"), g = t.numbers("gap_eV");
  for (std::size_t i = 0; i < m.size(); ++i)
    CHECK(std::abs(g[i] - 4 * 3.05 * std::sin(std::numbers::pi / (4 * m[i] + 2))) <= 1e-10);
  // identical invocations, identical bytes
  CHECK(run_cli(c).out == r.out);
}

TEST_CASE("both models interleave") {
  auto c = config(cli::Command::Gap, "PA", cli::ModelChoice::Both);
  c.m_first = 1;
  c.m_last = 3;
  const auto t = CsvTable::parse(run_cli(c).out);
  REQUIRE(t.rows.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(t.rows[i][0] == (i % 2 == 0 ? "hmo" : "fe"));
  CHECK(run_cli(config(cli::Command::Bands, "PA", cli::ModelChoice::Both)).code == cli::kUsage);
}

TEST_CASE("bands command and side files") {
  const auto dir = scratch_dir();
  auto c = config(cli::Command::Bands, "PPf");
  c.dispersion_path = (dir / "disp.csv").string();
  c.flat_path = (dir / "flat.csv").string();
  c.widths_path = (dir / "widths.csv").string();
  const auto r = run_cli(c);
  REQUIRE(r.code == 0);
  const auto t = CsvTable::parse(r.out);
  const double expected[] = {-2.34, -2, -1.56, -1.41, -0.47, 0, 0, 1, 1, 1.41, 1.81, 2.56};
  std::vector<double> edges;
  for (double x : t.numbers("lo")) edges.push_back(x);
  for (double x : t.numbers("hi")) edges.push_back(x);
  std::sort(edges.begin(), edges.end());
  REQUIRE(edges.size() == 12);
  for (std::size_t i = 0; i < 12; ++i) CHECK(std::abs(edges[i] - expected[i]) <= 0.01);

  const auto disp = CsvTable::read_file(c.dispersion_path);
  CHECK(disp.header.size() == 7);
  CHECK(disp.rows.size() == 721);
  const auto flat = CsvTable::read_file(c.flat_path);
  REQUIRE(flat.rows.size() == 1);
  CHECK(flat.numbers("value")[0] == doctest::Approx(1.0));
  CHECK(CsvTable::read_file(c.widths_path).header == std::vector<std::string>{"monomer", "model", "valence_eV", "conduction_eV"});

  c.format = cli::Format::Svg;
  c.dispersion_path = c.flat_path = c.widths_path = "";
  const auto svg = run_cli(c);
  CHECK(svg.code == 0);
  CHECK(svg.out.find("<svg") != std::string::npos);
}

TEST_CASE("count command") {
  auto c = config(cli::Command::Count, "PPP", cli::ModelChoice::Fe);
  c.m_first = c.m_last = 20;
  const auto r = run_cli(c);
  REQUIRE(r.code == 0);
  const auto t = CsvTable::parse(r.out);
  const auto sigma = t.numbers("sigma"), x = t.numbers("x");
  CHECK(std::is_sorted(x.begin(), x.end()));
  CHECK(std::is_sorted(sigma.begin(), sigma.end()));
  c.points = 50;
  CHECK(CsvTable::parse(run_cli(c).out).rows.size() == 50);
  c.m_last = 30;
  CHECK(run_cli(c).code == cli::kUsage);
}

TEST_CASE("sweep covers the catalog with polymer limits") {
  auto c = config(cli::Command::Sweep, "");
  c.m_first = 2;
  c.m_last = 3;
  const auto t = CsvTable::parse(run_cli(c).out);
  CHECK(t.rows.size() == 6 * 3);
  CHECK(t.rows[2][2] == "inf");
  CHECK(t.rows[2][3] == "0");
}

TEST_CASE("monomer resolution and error codes") {
  const auto dir = scratch_dir();
  write_text(dir / "Trimer.json",
             R"({"name":"Allyl","n_atoms":4,"bonds":[[1,2],[2,3],[3,4]],"link_b":4,"link_e":1,"n_double_bonds":2})");
  write_text(dir / "broken.json", R"({"name":"X","n_atoms":6,"bonds":[[1,7]],"link_b":1,"link_e":2,"n_double_bonds":1})");

  CHECK(run_cli(config(cli::Command::Gap, "nosuch")).code == cli::kUsage);
  const auto broken = run_cli(config(cli::Command::Gap, (dir / "broken.json").string()));
  CHECK(broken.code == cli::kUsage);
  CHECK(broken.err.find("out of range") != std::string::npos);

  auto by_path = config(cli::Command::Gap, (dir / "Trimer.json").string());
  CHECK(run_cli(by_path).code == 0);

  ::setenv("POLYBAND_CATALOG_DIR", dir.string().c_str(), 1);
  CHECK(cli::resolve_monomer("Trimer").name == "Allyl");
  CHECK(run_cli(config(cli::Command::Catalog, "")).code == cli::kUsage);  // broken.json is listed too
  fs::remove(dir / "broken.json");
  const auto listing = run_cli(config(cli::Command::Catalog, ""));
  CHECK(listing.code == 0);
  CHECK(listing.out.find("Allyl") != std::string::npos);
  ::unsetenv("POLYBAND_CATALOG_DIR");
  CHECK_THROWS_AS(cli::resolve_monomer("Trimer"), GraphError);

  const auto json = run_cli(config(cli::Command::Catalog, "PPf"));
  CHECK(json.code == 0);
  CHECK(parse_monomer(json.out) == catalog_monomer("PPf"));

  auto io = config(cli::Command::Gap, "PA");
  io.output = "/nonexistent-dir/out.csv";
  CHECK(run_cli(io).code == cli::kIo);

  // one atom, one pair: nothing left for a conduction band
  write_text(dir / "atom.json", R"({"name":"C1","n_atoms":1,"bonds":[],"link_b":1,"link_e":1,"n_double_bonds":1})");
  CHECK(run_cli(config(cli::Command::Bands, (dir / "atom.json").string())).code == cli::kNumeric);

  auto bad_beta = config(cli::Command::Gap, "PA");
  bad_beta.consts.beta_eV = -1.0;
  CHECK(run_cli(bad_beta).code == cli::kUsage);
}

TEST_CASE("output files are deterministic") {
  const auto dir = scratch_dir();
  auto c = config(cli::Command::Gap, "PPV", cli::ModelChoice::Both);
  c.m_first = 1;
  c.m_last = 4;
  c.format = cli::Format::Svg;
  c.output = (dir / "a.svg").string();
  REQUIRE(run_cli(c).code == 0);
  c.output = (dir / "b.svg").string();
  REQUIRE(run_cli(c).code == 0);
  std::ifstream a(dir / "a.svg"), b(dir / "b.svg");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(!sa.str().empty());
}
