#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace polyband {

enum class ModelTag { HmoLambda, FeMuTilde, FeMu, ElectronVolt };

inline constexpr double kDefaultMultiplicityTolerance = 1e-8;

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A group of (numerically) equal eigenvalues.
struct Multiplet {
  double value;
  int multiplicity;
};

/// Ascending eigenvalues with the tolerance used to group them into multiplets.
struct Spectrum {
  std::vector<double> values;
  double multiplicity_tolerance = kDefaultMultiplicityTolerance;
  ModelTag tag = ModelTag::HmoLambda;
  /// Column j belongs to values[j]; present only when requested.
  std::optional<Eigen::MatrixXd> vectors;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }

  /// Consecutive values are chained into one multiplet while neighbours differ by
  /// at most the tolerance.
  std::vector<Multiplet> multiplets() const;
  /// Number of values within the tolerance of x.
  int multiplicity_of(double x) const;
};

/// Dense real symmetric eigenproblem. Throws std::invalid_argument on
/// non-finite or non-symmetric input.
Spectrum eig_symmetric(const Eigen::MatrixXd& a, bool want_vectors = false,
                       double multiplicity_tolerance = kDefaultMultiplicityTolerance);

/// Hermitian eigenvalues via the real 2n x 2n embedding [[Re, -Im], [Im, Re]],
/// whose spectrum is that of A with every value doubled.
Spectrum eig_hermitian(const Eigen::MatrixXcd& a, double multiplicity_tolerance = kDefaultMultiplicityTolerance);

/// Full (doubled) spectrum of the real embedding used by eig_hermitian.
std::vector<double> hermitian_embedding_values(const Eigen::MatrixXcd& a);

/// C u = mu V u with V positive diagonal, solved as V^-1/2 C V^-1/2.
Spectrum eig_generalized(const Eigen::MatrixXd& c, const Eigen::VectorXd& v_diagonal, bool want_vectors = false,
                         double multiplicity_tolerance = kDefaultMultiplicityTolerance);

}  // namespace polyband
