#include "polyband/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace polyband {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

template <typename Matrix>
void check_finite_square(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix must be square");
  if (!a.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
}

double scale_of(double norm) { return std::max(1.0, norm); }

}  // namespace

std::vector<Multiplet> Spectrum::multiplets() const {
  std::vector<Multiplet> out;
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i + 1;
    double sum = values[i];
    while (j < values.size() && values[j] - values[j - 1] <= multiplicity_tolerance) sum += values[j++];
    out.push_back({sum / static_cast<double>(j - i), static_cast<int>(j - i)});
    i = j;
  }
  return out;
}

int Spectrum::multiplicity_of(double x) const {
  auto lo = std::lower_bound(values.begin(), values.end(), x - multiplicity_tolerance);
  auto hi = std::upper_bound(values.begin(), values.end(), x + multiplicity_tolerance);
  return static_cast<int>(hi - lo);
}

Spectrum eig_symmetric(const Eigen::MatrixXd& a, bool want_vectors, double multiplicity_tolerance) {
  check_finite_square(a);
  Spectrum s;
  s.multiplicity_tolerance = multiplicity_tolerance;
  if (a.rows() == 0) return s;
  const double norm = a.norm();
  if ((a - a.transpose()).norm() > kSymmetryTolerance * scale_of(norm))
    throw std::invalid_argument("matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      a, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("symmetric eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  s.values.assign(ev.data(), ev.data() + ev.size());
  if (want_vectors) s.vectors = solver.eigenvectors();
  return s;
}

std::vector<double> hermitian_embedding_values(const Eigen::MatrixXcd& a) {
  const auto n = a.rows();
  Eigen::MatrixXd big(2 * n, 2 * n);
  big.topLeftCorner(n, n) = a.real();
  big.bottomRightCorner(n, n) = a.real();
  big.topRightCorner(n, n) = -a.imag();
  big.bottomLeftCorner(n, n) = a.imag();
  return eig_symmetric(big).values;
}

Spectrum eig_hermitian(const Eigen::MatrixXcd& a, double multiplicity_tolerance) {
  check_finite_square(a);
  const double norm = a.norm();
  if ((a - a.adjoint()).norm() > kSymmetryTolerance * scale_of(norm))
    throw std::invalid_argument("matrix is not Hermitian");
  const auto doubled = hermitian_embedding_values(a);
  Spectrum s;
  s.multiplicity_tolerance = multiplicity_tolerance;
  s.values.reserve(doubled.size() / 2);
  for (std::size_t i = 0; i + 1 < doubled.size(); i += 2) s.values.push_back(0.5 * (doubled[i] + doubled[i + 1]));
  return s;
}

Spectrum eig_generalized(const Eigen::MatrixXd& c, const Eigen::VectorXd& v_diagonal, bool want_vectors,
                         double multiplicity_tolerance) {
  check_finite_square(c);
  if (v_diagonal.size() != c.rows()) throw std::invalid_argument("valency size does not match matrix");
  if (!(v_diagonal.array() > 0.0).all()) throw std::invalid_argument("valency diagonal must be strictly positive");
  if ((c - c.transpose()).norm() > kSymmetryTolerance * scale_of(c.norm()))
    throw std::invalid_argument("matrix is not symmetric");
  const Eigen::VectorXd inv_sqrt = v_diagonal.array().rsqrt();
  Eigen::MatrixXd reduced = inv_sqrt.asDiagonal() * c * inv_sqrt.asDiagonal();
  reduced = 0.5 * (reduced + reduced.transpose()).eval();
  Spectrum s = eig_symmetric(reduced, want_vectors, multiplicity_tolerance);
  s.tag = ModelTag::FeMuTilde;
  if (s.vectors) {
    // back-transform to generalized eigenvectors u = V^-1/2 w
    *s.vectors = inv_sqrt.asDiagonal() * (*s.vectors);
  }
  return s;
}

}  // namespace polyband
