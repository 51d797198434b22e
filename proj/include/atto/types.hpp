#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace atto {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

enum class ErrorKind {
  InvalidArgument,
  NotDivisible,
  ConstantInner,
  GridMismatch,
  OutsideDisk,
  NyquistViolation,
  DimensionMismatch,
  SingularSystem,
  NotInClass,
  QuotientConstant,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

// <x, y> = sum_i x_i conj(y_i), linear in the first slot.
inline Complex inner(const Vector& x, const Vector& y) { return y.dot(x); }

}  // namespace atto
