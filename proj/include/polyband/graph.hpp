#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polyband {

/// Raised for malformed monomer input. The message carries the offending
/// field (and line, when the JSON itself does not parse).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a graph is structurally unusable for the requested model.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Undirected bond between two 0-based vertices, always stored with first < second.
using Bond = std::pair<int, int>;

/// One repeat unit. Indices are 0-based here; files and printed output use 1-based labels.
struct MonomerSpec {
  std::string name;
  int n_atoms = 0;
  std::vector<Bond> bonds;  // sorted, first < second
  int link_b = 0;           // bond to the next monomer leaves here
  int link_e = 0;           // bond from the previous monomer arrives here
  std::vector<int> dangling;
  int n_double_bonds = 0;
  /// Vertices of the final copy left out of an oligomer (a trailing linker
  /// with nothing to link to). Must hold an even number of atoms.
  std::vector<int> trim_last;

  /// Electron pairs of the m-oligomer: N * m less those of the trimmed atoms.
  int electron_pairs(int m) const;

  /// Throws ParseError describing the first violated invariant.
  void validate() const;

  Eigen::MatrixXd adjacency() const;

  bool operator==(const MonomerSpec&) const = default;
};

enum class Model { Hmo, Fe };

/// Energy scales. |beta| is the resonance integral, epsilon = hbar^2 / (2 m_e L^2).
struct ModelConstants {
  double beta_eV = 3.05;
  double alpha_eV = 0.0;
  double epsilon_eV = 1.95;
  double bond_length_angstrom = 1.4;

  void validate() const;
};

/// The m-fold chained graph. Immutable once built.
class OligomerGraph {
 public:
  OligomerGraph(int n_vertices, std::vector<Bond> bonds, int monomer_count, MonomerSpec source,
                int dangling_vertices = 0);

  int n_vertices() const { return n_vertices_; }
  int monomer_count() const { return monomer_count_; }
  /// Number of extra degree-1 vertices materialized as free ends. They are
  /// numbered last and act as hard walls (psi = 0) in the free-electron model.
  int dangling_vertices() const { return dangling_vertices_; }
  int carbon_count() const { return n_vertices_ - dangling_vertices_; }
  bool is_terminal(int v) const { return v >= carbon_count(); }
  /// Occupied pairs for the oligomer this graph was built as.
  int electron_pairs() const { return source_.electron_pairs(monomer_count_); }
  const std::vector<Bond>& bonds() const { return bonds_; }
  const MonomerSpec& source() const { return source_; }

  const Eigen::MatrixXd& adjacency() const { return adjacency_; }
  const Eigen::MatrixXd& bond_lengths() const { return bond_lengths_; }
  Eigen::VectorXd valency() const { return adjacency_.rowwise().sum(); }

  bool is_connected() const;
  bool is_bipartite() const;
  /// True when every bond has unit length.
  bool is_equilateral() const;
  double total_length() const;

 private:
  int n_vertices_;
  std::vector<Bond> bonds_;
  int monomer_count_;
  MonomerSpec source_;
  int dangling_vertices_;
  Eigen::MatrixXd adjacency_;
  Eigen::MatrixXd bond_lengths_;
};

/// Parses the JSON monomer format. 1-based indices in the text become 0-based.
MonomerSpec parse_monomer(std::string_view text);

/// Canonical text form: bonds sorted, i < j, 1-based.
std::string serialize_monomer(const MonomerSpec& spec);

MonomerSpec load_monomer_file(const std::string& path);

/// Chains m copies of `spec`, joining link_b of copy a to link_e of copy a+1.
/// Vertices listed in trim_last are dropped from the final copy.
///
/// With `include_dangling`, free-end bonds are attached: a dangling vertex equal
/// to link_e is terminated on the first copy only, one equal to link_b on the
/// last copy only, and any other listed vertex on both the first and last copies.
/// Dangling vertices are appended after the m * n_atoms carbon vertices.
OligomerGraph build_oligomer(const MonomerSpec& spec, int m, bool include_dangling = false);

/// PA, PPf, PPP, PMP, PPV, PmPV in that order.
const std::vector<MonomerSpec>& catalog();

/// Case-insensitive catalog lookup; throws GraphError when absent.
const MonomerSpec& catalog_monomer(std::string_view name);

}  // namespace polyband
