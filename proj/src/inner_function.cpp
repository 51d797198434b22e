#include "atto/inner_function.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <utility>

namespace atto {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::ConstantInner: return "ConstantInner";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::OutsideDisk: return "OutsideDisk";
    case ErrorKind::NyquistViolation: return "NyquistViolation";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::NotInClass: return "NotInClass";
    case ErrorKind::QuotientConstant: return "QuotientConstant";
  }
  return "Unknown";
}

InnerFunction::InnerFunction(std::vector<Complex> zeros, Complex constant)
  : zeros_(std::move(zeros)), constant_(constant) {
  for (const auto& a : zeros_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || std::abs(a) > kMaxZeroModulus) {
      throw Error(ErrorKind::InvalidArgument,
                  "Blaschke zero outside the admissible disk |a| <= 1 - 1e-6");
    }
  }
  if (std::abs(std::abs(constant_) - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "unimodular constant must have modulus 1");
  }
}

InnerFunction InnerFunction::monomial(std::size_t n) {
  return InnerFunction(std::vector<Complex>(n, Complex{0.0, 0.0}), n % 2 == 0 ? 1.0 : -1.0);
}

InnerFunction InnerFunction::blaschke_factor(Complex a, std::size_t multiplicity) {
  return InnerFunction(std::vector<Complex>(multiplicity, a), 1.0);
}

Complex InnerFunction::operator()(Complex z) const {
  Complex value = constant_;
  for (const auto& a : zeros_) {
    value *= (a - z) / (1.0 - std::conj(a) * z);
  }
  return value;
}

InnerFunction InnerFunction::operator*(const InnerFunction& other) const {
  auto zeros = zeros_;
  zeros.insert(zeros.end(), other.zeros_.begin(), other.zeros_.end());
  return InnerFunction(std::move(zeros), constant_ * other.constant_);
}

InnerFunction InnerFunction::with_constant(Complex constant) const {
  return InnerFunction(zeros_, constant);
}

namespace {

// Greedy nearest-zero matching of `small` into `large`. Returns, for each
// zero of `large`, whether it was consumed; nullopt when some zero of `small`
// has no partner.
std::optional<std::vector<bool>> match_zeros(const std::vector<Complex>& small,
                                             const std::vector<Complex>& large) {
  std::vector<bool> used(large.size(), false);
  for (const auto& a : small) {
    std::size_t best = large.size();
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < large.size(); ++j) {
      if (used[j]) continue;
      double d = std::abs(large[j] - a);
      if (d < best_distance) {
        best_distance = d;
        best = j;
      }
    }
    if (best == large.size() || best_distance > kZeroPairingTolerance) return std::nullopt;
    used[best] = true;
  }
  return used;
}

}  // namespace

bool divides(const InnerFunction& a, const InnerFunction& t) {
  return match_zeros(a.zeros(), t.zeros()).has_value();
}

InnerFunction quotient(const InnerFunction& t, const InnerFunction& a) {
  auto used = match_zeros(a.zeros(), t.zeros());
  if (!used) throw Error(ErrorKind::NotDivisible, "inner function does not divide");
  std::vector<Complex> rest;
  for (std::size_t j = 0; j < t.zeros().size(); ++j) {
    if (!(*used)[j]) rest.push_back(t.zeros()[j]);
  }
  return InnerFunction(std::move(rest), t.constant() / a.constant());
}

InnerFunction gcd(const InnerFunction& a, const InnerFunction& b) {
  std::vector<bool> used(b.zeros().size(), false);
  std::vector<Complex> common;
  for (const auto& z : a.zeros()) {
    for (std::size_t j = 0; j < b.zeros().size(); ++j) {
      if (!used[j] && std::abs(b.zeros()[j] - z) <= kZeroPairingTolerance) {
        used[j] = true;
        common.push_back(z);
        break;
      }
    }
  }
  return InnerFunction(std::move(common), 1.0);
}

bool same_zeros(const InnerFunction& a, const InnerFunction& b) {
  return a.degree() == b.degree() && divides(a, b);
}

}  // namespace atto
