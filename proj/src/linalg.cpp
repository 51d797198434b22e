#include "atto/linalg.hpp"

#include <algorithm>

#include <Eigen/SVD>

namespace atto {

namespace {

double threshold(const Eigen::VectorXd& sigma, double rel_tol) {
  const double top = sigma.size() > 0 ? sigma[0] : 0.0;
  return rel_tol * std::max(1.0, top);
}

}  // namespace

Matrix outer(const Vector& x, const Vector& y) { return x * y.adjoint(); }

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)[0];
}

Eigen::VectorXd singular_values(const Matrix& a) {
  if (a.size() == 0) return Eigen::VectorXd();
  return Eigen::JacobiSVD<Matrix>(a).singularValues();
}

Matrix null_space(const Matrix& a, double rel_tol) {
  const auto cols = a.cols();
  if (a.rows() == 0) return Matrix::Identity(cols, cols);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double tol = threshold(sigma, rel_tol);
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma[rank] > tol) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

Matrix orthonormal_range(const Matrix& a, double rel_tol) {
  if (a.cols() == 0) return Matrix(a.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  const double tol = threshold(sigma, rel_tol);
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma[rank] > tol) ++rank;
  return svd.matrixU().leftCols(rank);
}

double subspace_distance(const Matrix& u, const Matrix& v) {
  if (u.cols() != v.cols() || u.rows() != v.rows()) return 1.0;
  if (u.cols() == 0) return 0.0;
  const Matrix residual = v - u * (u.adjoint() * v);
  return std::min(1.0, operator_norm(residual));
}

Eigen::Index numerical_rank(const Matrix& a, double rel_tol) {
  const auto sigma = singular_values(a);
  const double tol = threshold(sigma, rel_tol);
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma[rank] > tol) ++rank;
  return rank;
}

}  // namespace atto
