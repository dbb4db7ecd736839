#include "polyband/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace polyband {

namespace {

constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 36;
constexpr int kMarginBottom = 56;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  for (char& c : s)
    if (c == ',') c = '.';
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  return (f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0) * mag;
}

struct Frame {
  double x0, x1, y0, y1;
  int w, h;

  double px(double x) const { return kMarginLeft + (x - x0) / (x1 - x0) * (w - kMarginLeft - kMarginRight); }
  double py(double y) const { return h - kMarginBottom - (y - y0) / (y1 - y0) * (h - kMarginTop - kMarginBottom); }
};

void widen(double& lo, double& hi) {
  if (hi - lo <= 1e-12 * std::max(1.0, std::abs(hi))) {
    lo -= 0.5;
    hi += 0.5;
  } else {
    const double pad = 0.04 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
}

void axes(std::ostringstream& out, const Frame& f, const std::string& xlabel, const std::string& ylabel) {
  const double left = f.px(f.x0), right = f.px(f.x1), top = f.py(f.y1), bottom = f.py(f.y0);
  out << "<rect x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\"" << fixed(right - left)
      << "\" height=\"" << fixed(bottom - top) << "\" fill=\"none\" stroke=\"#000\"/>\n";
  auto ticks = [&](double lo, double hi, bool horizontal) {
    const double step = nice_step(hi - lo);
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
      const double v = std::abs(t) < 1e-12 * step ? 0.0 : t;
      char label[32];
      std::snprintf(label, sizeof label, "%g", v);
      if (horizontal) {
        const double x = f.px(v);
        out << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(bottom) << "\" x2=\"" << fixed(x) << "\" y2=\""
            << fixed(bottom + 5) << "\" stroke=\"#000\"/>\n";
        out << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(bottom + 18) << "\" text-anchor=\"middle\">" << label
            << "</text>\n";
      } else {
        const double y = f.py(v);
        out << "<line x1=\"" << fixed(left - 5) << "\" y1=\"" << fixed(y) << "\" x2=\"" << fixed(left) << "\" y2=\""
            << fixed(y) << "\" stroke=\"#000\"/>\n";
        out << "<text x=\"" << fixed(left - 8) << "\" y=\"" << fixed(y + 4) << "\" text-anchor=\"end\">" << label
            << "</text>\n";
      }
    }
  };
  ticks(f.x0, f.x1, true);
  ticks(f.y0, f.y1, false);
  out << "<text x=\"" << fixed(0.5 * (left + right)) << "\" y=\"" << fixed(f.h - 10.0)
      << "\" text-anchor=\"middle\">" << escape(xlabel) << "</text>\n";
  out << "<text x=\"16\" y=\"" << fixed(0.5 * (top + bottom)) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << fixed(0.5 * (top + bottom)) << ")\">" << escape(ylabel) << "</text>\n";
}

void edge_marks(std::ostringstream& out, const Frame& f, const std::vector<double>& marks) {
  const double bottom = f.py(f.y0);
  for (double x : marks) {
    if (x < f.x0 || x > f.x1) continue;
    out << "<line x1=\"" << fixed(f.px(x)) << "\" y1=\"" << fixed(bottom - 8) << "\" x2=\"" << fixed(f.px(x))
        << "\" y2=\"" << fixed(bottom) << "\" stroke=\"#d62728\"/>\n";
  }
}

std::string header(const SvgOptions& o) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << o.width << "\" height=\"" << o.height
      << "\" viewBox=\"0 0 " << o.width << ' ' << o.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
  if (!o.title.empty())
    out << "<text x=\"" << o.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(o.title)
        << "</text>\n";
  return out.str();
}

std::string gap_plot(const CsvTable& t, const SvgOptions& o) {
  const auto xs = t.numbers("inv_m");
  const auto ys = t.numbers("gap_eV");
  const bool by_model = t.has_column("model"), by_monomer = t.has_column("monomer");
  // series keyed by label, in order of first appearance
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    std::string key;
    if (by_monomer) key += t.rows[i][t.column("monomer")];
    if (by_model) key += (key.empty() ? "" : " ") + t.rows[i][t.column("model")];
    if (!series.count(key)) order.push_back(key);
    series[key].emplace_back(xs[i], ys[i]);
  }
  double x1 = *std::max_element(xs.begin(), xs.end());
  double y0 = std::min(0.0, *std::min_element(ys.begin(), ys.end()));
  double y1 = *std::max_element(ys.begin(), ys.end());
  double x0 = 0.0;
  widen(x0, x1);
  x0 = std::min(x0, 0.0);
  widen(y0, y1);
  Frame f{x0, x1, y0, y1, o.width, o.height};
  std::ostringstream out;
  out << header(o);
  axes(out, f, "1/m", "gap (eV)");
  for (std::size_t s = 0; s < order.size(); ++s) {
    auto pts = series[order[s]];
    std::sort(pts.begin(), pts.end());
    const char* colour = kPalette[s % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      out << (i ? " " : "") << fixed(f.px(pts[i].first)) << ',' << fixed(f.py(pts[i].second));
    out << "\"/>\n";
    for (auto [x, y] : pts)
      out << "<circle cx=\"" << fixed(f.px(x)) << "\" cy=\"" << fixed(f.py(y)) << "\" r=\"2.5\" fill=\"" << colour
          << "\"/>\n";
    if (!order[s].empty())
      out << "<text x=\"" << fixed(f.px(x0) + 10) << "\" y=\"" << fixed(f.py(y1) + 16.0 + 14.0 * static_cast<double>(s))
          << "\" fill=\"" << colour << "\">" << escape(order[s]) << "</text>\n";
  }
  edge_marks(out, f, o.x_ticks);
  out << "</svg>\n";
  return out.str();
}

std::string counting_plot(const CsvTable& t, const SvgOptions& o) {
  const auto xs = t.numbers("x");
  const auto ys = t.numbers("sigma");
  double x0 = *std::min_element(xs.begin(), xs.end()), x1 = *std::max_element(xs.begin(), xs.end());
  double y0 = 0.0, y1 = *std::max_element(ys.begin(), ys.end());
  widen(x0, x1);
  widen(y0, y1);
  y0 = std::max(y0, -0.05 * (y1 - y0));
  Frame f{x0, x1, y0, y1, o.width, o.height};
  std::ostringstream out;
  out << header(o);
  axes(out, f, "x", "sigma");
  out << "<path fill=\"none\" stroke=\"" << kPalette[0] << "\" d=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i == 0) {
      out << 'M' << fixed(f.px(xs[0])) << ',' << fixed(f.py(ys[0]));
    } else {
      // sigma(x_i) holds on (x_{i-1}, x_i]
      out << " V" << fixed(f.py(ys[i])) << " H" << fixed(f.px(xs[i]));
    }
  }
  out << "\"/>\n";
  edge_marks(out, f, o.x_ticks);
  out << "</svg>\n";
  return out.str();
}

std::string bands_plot(const CsvTable& t, const SvgOptions& o) {
  const auto idx = t.numbers("band_index");
  const auto lo = t.numbers("lo");
  const auto hi = t.numbers("hi");
  const std::size_t flag_col = t.column("flat_flag");
  double x0 = *std::min_element(lo.begin(), lo.end()), x1 = *std::max_element(hi.begin(), hi.end());
  double y0 = *std::min_element(idx.begin(), idx.end()) - 0.5, y1 = *std::max_element(idx.begin(), idx.end()) + 0.5;
  widen(x0, x1);
  Frame f{x0, x1, y0, y1, o.width, o.height};
  std::ostringstream out;
  out << header(o);
  axes(out, f, "energy", "band");
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const double y = f.py(idx[i]);
    const bool flat = t.rows[i][flag_col] == "1";
    if (flat || hi[i] - lo[i] <= 0.0) {
      out << "<circle cx=\"" << fixed(f.px(lo[i])) << "\" cy=\"" << fixed(y) << "\" r=\"4\" fill=\"" << kPalette[1]
          << "\"/>\n";
    } else {
      out << "<line x1=\"" << fixed(f.px(lo[i])) << "\" y1=\"" << fixed(y) << "\" x2=\"" << fixed(f.px(hi[i]))
          << "\" y2=\"" << fixed(y) << "\" stroke=\"" << kPalette[0] << "\" stroke-width=\"6\"/>\n";
    }
  }
  std::vector<double> marks = o.x_ticks;
  if (marks.empty()) {
    marks = lo;
    marks.insert(marks.end(), hi.begin(), hi.end());
  }
  edge_marks(out, f, marks);
  out << "</svg>\n";
  return out.str();
}

}  // namespace

PlotKind parse_plot_kind(std::string_view name) {
  if (name == "gap-vs-invm") return PlotKind::GapVsInvM;
  if (name == "counting") return PlotKind::Counting;
  if (name == "bands") return PlotKind::Bands;
  throw std::invalid_argument("unknown plot kind '" + std::string(name) + "'");
}

std::string to_string(PlotKind kind) {
  switch (kind) {
    case PlotKind::GapVsInvM: return "gap-vs-invm";
    case PlotKind::Counting: return "counting";
    case PlotKind::Bands: return "bands";
  }
  return {};
}

std::string render_svg(const CsvTable& data, PlotKind kind, const SvgOptions& options) {
  if (data.empty()) throw std::invalid_argument("cannot plot an empty series");
  if (options.width <= kMarginLeft + kMarginRight || options.height <= kMarginTop + kMarginBottom)
    throw std::invalid_argument("plot area too small");
  switch (kind) {
    case PlotKind::GapVsInvM: return gap_plot(data, options);
    case PlotKind::Counting: return counting_plot(data, options);
    case PlotKind::Bands: return bands_plot(data, options);
  }
  throw std::invalid_argument("unknown plot kind");
}

}  // namespace polyband
