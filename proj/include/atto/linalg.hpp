#pragma once

#include "atto/types.hpp"

namespace atto {

/// x (x) y, the rank-one map f -> <f, y> x, as the matrix x y^H.
Matrix outer(const Vector& x, const Vector& y);

double operator_norm(const Matrix& a);
Eigen::VectorXd singular_values(const Matrix& a);

/// Orthonormal basis (columns) of the numerical null space; singular values
/// below rel_tol * max(1, sigma_max) count as zero.
Matrix null_space(const Matrix& a, double rel_tol = 1e-8);

/// Orthonormal basis of the column span, same threshold rule.
Matrix orthonormal_range(const Matrix& a, double rel_tol = 1e-8);

/// Sine of the largest principal angle between two orthonormal column sets of
/// equal size. Returns 1 when the dimensions differ.
double subspace_distance(const Matrix& u, const Matrix& v);

/// Numerical rank with the same threshold rule as null_space.
Eigen::Index numerical_rank(const Matrix& a, double rel_tol = 1e-8);

}  // namespace atto
