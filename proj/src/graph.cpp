#include "polyband/graph.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace polyband {

namespace {

using nlohmann::json;

bool connected(int n, const std::vector<Bond>& bonds) {
  if (n <= 1) return true;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (auto [i, j] : bonds) {
    int a = find(i), b = find(j);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

int line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

int require_int(const json& doc, const char* field) {
  if (!doc.contains(field)) throw ParseError(std::string("missing field '") + field + "'");
  const auto& v = doc.at(field);
  if (!v.is_number_integer()) throw ParseError(std::string("field '") + field + "' must be an integer");
  return v.get<int>();
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

MonomerSpec make_spec(std::string name, int n_atoms, std::vector<Bond> one_based, int link_b, int link_e,
                      std::vector<int> dangling, int n_double, std::vector<int> trim = {}) {
  MonomerSpec s;
  s.name = std::move(name);
  s.n_atoms = n_atoms;
  for (auto [i, j] : one_based) s.bonds.emplace_back(std::min(i, j) - 1, std::max(i, j) - 1);
  std::sort(s.bonds.begin(), s.bonds.end());
  s.link_b = link_b - 1;
  s.link_e = link_e - 1;
  for (int d : dangling) s.dangling.push_back(d - 1);
  s.n_double_bonds = n_double;
  for (int t : trim) s.trim_last.push_back(t - 1);
  s.validate();
  return s;
}

std::vector<Bond> benzene_ring() { return {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 1}}; }

}  // namespace

void MonomerSpec::validate() const {
  if (name.empty()) throw ParseError("field 'name' must be a non-empty string");
  if (n_atoms < 1) throw ParseError("field 'n_atoms' must be positive");
  auto in_range = [&](int v) { return v >= 0 && v < n_atoms; };
  std::set<Bond> seen;
  for (std::size_t k = 0; k < bonds.size(); ++k) {
    auto [i, j] = bonds[k];
    std::string where = "bonds[" + std::to_string(k) + "] = [" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + "]";
    if (!in_range(i) || !in_range(j))
      throw ParseError(where + ": vertex index out of range 1.." + std::to_string(n_atoms));
    if (i == j) throw ParseError(where + ": self-loop");
    if (!seen.insert({std::min(i, j), std::max(i, j)}).second) throw ParseError(where + ": duplicate bond");
  }
  if (!in_range(link_b)) throw ParseError("field 'link_b': vertex index out of range");
  if (!in_range(link_e)) throw ParseError("field 'link_e': vertex index out of range");
  if (link_b == link_e && n_atoms != 1) throw ParseError("fields 'link_b' and 'link_e' must differ");
  std::set<int> dang;
  for (int d : dangling) {
    if (!in_range(d)) throw ParseError("field 'dangling': vertex index out of range");
    if (!dang.insert(d).second) throw ParseError("field 'dangling': duplicate vertex");
  }
  if (n_double_bonds < 1 || n_double_bonds > (n_atoms + 1) / 2)
    throw ParseError("field 'n_double_bonds' must lie in 1..ceil(n_atoms/2)");
  if (!connected(n_atoms, bonds)) throw ParseError("monomer graph is disconnected");
  if (!trim_last.empty()) {
    std::set<int> cut;
    for (int t : trim_last) {
      if (!in_range(t)) throw ParseError("field 'trim_last': vertex index out of range");
      if (!cut.insert(t).second) throw ParseError("field 'trim_last': duplicate vertex");
    }
    if (cut.count(link_e)) throw ParseError("field 'trim_last' must not contain link_e");
    if (trim_last.size() % 2 != 0) throw ParseError("field 'trim_last' must hold an even number of atoms");
    if (static_cast<int>(trim_last.size()) >= n_atoms) throw ParseError("field 'trim_last' removes every atom");
    if (static_cast<int>(trim_last.size()) / 2 >= n_double_bonds)
      throw ParseError("field 'trim_last' removes every double bond");
    std::vector<int> keep_index(n_atoms, -1);
    int kept = 0;
    for (int v = 0; v < n_atoms; ++v)
      if (!cut.count(v)) keep_index[v] = kept++;
    std::vector<Bond> rest;
    for (auto [i, j] : bonds)
      if (keep_index[i] >= 0 && keep_index[j] >= 0) rest.emplace_back(keep_index[i], keep_index[j]);
    if (!connected(kept, rest)) throw ParseError("field 'trim_last' disconnects the final monomer");
  }
}

int MonomerSpec::electron_pairs(int m) const {
  return n_double_bonds * m - static_cast<int>(trim_last.size()) / 2;
}

Eigen::MatrixXd MonomerSpec::adjacency() const {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n_atoms, n_atoms);
  for (auto [i, j] : bonds) c(i, j) = c(j, i) = 1.0;
  return c;
}

void ModelConstants::validate() const {
  if (!(beta_eV > 0) || !(epsilon_eV > 0) || !(bond_length_angstrom > 0))
    throw std::invalid_argument("beta, epsilon and bond length must be strictly positive");
}

OligomerGraph::OligomerGraph(int n_vertices, std::vector<Bond> bonds, int monomer_count, MonomerSpec source,
                             int dangling_vertices)
    : n_vertices_(n_vertices),
      bonds_(std::move(bonds)),
      monomer_count_(monomer_count),
      source_(std::move(source)),
      dangling_vertices_(dangling_vertices),
      adjacency_(Eigen::MatrixXd::Zero(n_vertices, n_vertices)),
      bond_lengths_(Eigen::MatrixXd::Zero(n_vertices, n_vertices)) {
  if (n_vertices_ < 1) throw GraphError("graph needs at least one vertex");
  for (auto& [i, j] : bonds_) {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n_vertices_ || i == j) throw GraphError("invalid bond");
    if (adjacency_(i, j) != 0.0) throw GraphError("duplicate bond");
    adjacency_(i, j) = adjacency_(j, i) = 1.0;
    bond_lengths_(i, j) = bond_lengths_(j, i) = 1.0;
  }
}

bool OligomerGraph::is_connected() const { return connected(n_vertices_, bonds_); }

bool OligomerGraph::is_bipartite() const {
  std::vector<int> colour(n_vertices_, -1);
  std::vector<std::vector<int>> nbrs(n_vertices_);
  for (auto [i, j] : bonds_) {
    nbrs[i].push_back(j);
    nbrs[j].push_back(i);
  }
  for (int s = 0; s < n_vertices_; ++s) {
    if (colour[s] >= 0) continue;
    colour[s] = 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : nbrs[v]) {
        if (colour[w] < 0) {
          colour[w] = 1 - colour[v];
          stack.push_back(w);
        } else if (colour[w] == colour[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

bool OligomerGraph::is_equilateral() const {
  for (auto [i, j] : bonds_)
    if (bond_lengths_(i, j) != 1.0) return false;
  return true;
}

double OligomerGraph::total_length() const {
  double sum = 0.0;
  for (auto [i, j] : bonds_) sum += bond_lengths_(i, j);
  return sum;
}

MonomerSpec parse_monomer(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_of(text, e.byte)) + ": malformed monomer file: " + e.what());
  }
  if (!doc.is_object()) throw ParseError("line 1: monomer file must be a JSON object");

  MonomerSpec s;
  if (!doc.contains("name") || !doc["name"].is_string()) throw ParseError("field 'name' must be a string");
  s.name = doc["name"].get<std::string>();
  s.n_atoms = require_int(doc, "n_atoms");
  s.link_b = require_int(doc, "link_b") - 1;
  s.link_e = require_int(doc, "link_e") - 1;
  s.n_double_bonds = require_int(doc, "n_double_bonds");

  if (!doc.contains("bonds") || !doc["bonds"].is_array()) throw ParseError("field 'bonds' must be an array");
  const auto& bonds = doc["bonds"];
  for (std::size_t k = 0; k < bonds.size(); ++k) {
    const auto& b = bonds[k];
    if (!b.is_array() || b.size() != 2 || !b[0].is_number_integer() || !b[1].is_number_integer())
      throw ParseError("bonds[" + std::to_string(k) + "]: expected a pair of integers");
    int i = b[0].get<int>() - 1, j = b[1].get<int>() - 1;
    s.bonds.emplace_back(std::min(i, j), std::max(i, j));
  }
  if (doc.contains("dangling")) {
    const auto& d = doc["dangling"];
    if (!d.is_array()) throw ParseError("field 'dangling' must be an array");
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (!d[k].is_number_integer()) throw ParseError("dangling[" + std::to_string(k) + "]: expected an integer");
      s.dangling.push_back(d[k].get<int>() - 1);
    }
  }
  if (doc.contains("trim_last")) {
    const auto& t = doc["trim_last"];
    if (!t.is_array()) throw ParseError("field 'trim_last' must be an array");
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (!t[k].is_number_integer()) throw ParseError("trim_last[" + std::to_string(k) + "]: expected an integer");
      s.trim_last.push_back(t[k].get<int>() - 1);
    }
  }
  s.validate();
  std::sort(s.bonds.begin(), s.bonds.end());
  return s;
}

std::string serialize_monomer(const MonomerSpec& spec) {
  std::vector<Bond> sorted = spec.bonds;
  std::sort(sorted.begin(), sorted.end());
  std::ostringstream out;
  out << "{\n  \"name\": " << json(spec.name).dump() << ",\n";
  out << "  \"n_atoms\": " << spec.n_atoms << ",\n";
  out << "  \"bonds\": [";
  for (std::size_t k = 0; k < sorted.size(); ++k)
    out << (k ? ", " : "") << "[" << sorted[k].first + 1 << ", " << sorted[k].second + 1 << "]";
  out << "],\n";
  out << "  \"link_b\": " << spec.link_b + 1 << ",\n";
  out << "  \"link_e\": " << spec.link_e + 1 << ",\n";
  out << "  \"dangling\": [";
  for (std::size_t k = 0; k < spec.dangling.size(); ++k) out << (k ? ", " : "") << spec.dangling[k] + 1;
  out << "],\n";
  if (!spec.trim_last.empty()) {
    out << "  \"trim_last\": [";
    for (std::size_t k = 0; k < spec.trim_last.size(); ++k) out << (k ? ", " : "") << spec.trim_last[k] + 1;
    out << "],\n";
  }
  out << "  \"n_double_bonds\": " << spec.n_double_bonds << "\n}\n";
  return out.str();
}

MonomerSpec load_monomer_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open monomer file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_monomer(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

OligomerGraph build_oligomer(const MonomerSpec& spec, int m, bool include_dangling) {
  if (m < 1) throw GraphError("monomer count must be at least 1");
  spec.validate();
  const int n = spec.n_atoms;
  // global index of atom i in copy a, or -1 when trimmed away
  std::vector<int> index(static_cast<std::size_t>(m) * n);
  std::set<int> cut(spec.trim_last.begin(), spec.trim_last.end());
  int next = 0;
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < n; ++i)
      index[static_cast<std::size_t>(a * n + i)] = (a == m - 1 && cut.count(i)) ? -1 : next++;
  auto at = [&](int a, int i) { return index[static_cast<std::size_t>(a * n + i)]; };

  std::vector<Bond> bonds;
  bonds.reserve(static_cast<std::size_t>(m) * (spec.bonds.size() + 1));
  for (int a = 0; a < m; ++a) {
    for (auto [i, j] : spec.bonds)
      if (at(a, i) >= 0 && at(a, j) >= 0) bonds.emplace_back(at(a, i), at(a, j));
    if (a + 1 < m) {
      int u = at(a, spec.link_b), v = at(a + 1, spec.link_e);
      bonds.emplace_back(std::min(u, v), std::max(u, v));
    }
  }
  int extra = 0;
  if (include_dangling) {
    std::set<int> anchors;
    for (int d : spec.dangling) {
      if (d == spec.link_e || d != spec.link_b) anchors.insert(at(0, d));      // first copy
      if (d == spec.link_b || d != spec.link_e) anchors.insert(at(m - 1, d));  // last copy
    }
    anchors.erase(-1);
    for (int anchor : anchors) {
      bonds.emplace_back(anchor, next++);
      ++extra;
    }
  }
  return OligomerGraph(next, std::move(bonds), m, spec, extra);
}

const std::vector<MonomerSpec>& catalog() {
  static const std::vector<MonomerSpec> specs = [] {
    std::vector<MonomerSpec> v;
    v.push_back(make_spec("PA", 2, {{1, 2}}, 2, 1, {1, 2}, 1));
    v.push_back(make_spec("PPf", 6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {4, 6}}, 5, 3, {}, 3));
    v.push_back(make_spec("PPP", 6, benzene_ring(), 4, 1, {}, 3));
    v.push_back(make_spec("PMP", 6, benzene_ring(), 3, 1, {}, 3));
    auto ppv = benzene_ring();
    ppv.insert(ppv.end(), {{4, 7}, {7, 8}});
    v.push_back(make_spec("PPV", 8, ppv, 8, 1, {}, 4, {7, 8}));
    auto pmpv = benzene_ring();
    pmpv.insert(pmpv.end(), {{3, 7}, {7, 8}});
    v.push_back(make_spec("PmPV", 8, pmpv, 8, 1, {}, 4, {7, 8}));
    return v;
  }();
  return specs;
}

const MonomerSpec& catalog_monomer(std::string_view name) {
  const auto key = lower(name);
  for (const auto& s : catalog())
    if (lower(s.name) == key) return s;
  throw GraphError("unknown monomer '" + std::string(name) + "'");
}

}  // namespace polyband
