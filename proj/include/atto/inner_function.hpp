#pragma once

#include <cstddef>
#include <vector>

#include "atto/types.hpp"

namespace atto {

// Zeros closer to the circle than this are rejected at construction.
inline constexpr double kMaxZeroModulus = 1.0 - 1e-6;
// Two zeros closer than this are treated as the same zero when matching.
inline constexpr double kZeroPairingTolerance = 1e-8;

/// A finite Blaschke product  c * prod_a (a - z) / (1 - conj(a) z).
///
/// The monomial z^n is stored as n zeros at the origin with constant (-1)^n,
/// so that evaluation reproduces z^n exactly.
class InnerFunction {
public:
  InnerFunction() = default;
  explicit InnerFunction(std::vector<Complex> zeros, Complex constant = 1.0);

  static InnerFunction monomial(std::size_t n);
  /// b_a^m, with b_a(z) = (a - z) / (1 - conj(a) z).
  static InnerFunction blaschke_factor(Complex a, std::size_t multiplicity = 1);

  const std::vector<Complex>& zeros() const noexcept { return zeros_; }
  Complex constant() const noexcept { return constant_; }
  std::size_t degree() const noexcept { return zeros_.size(); }
  bool is_constant() const noexcept { return zeros_.empty(); }

  Complex operator()(Complex z) const;
  Complex at_zero() const { return (*this)(Complex{0.0, 0.0}); }

  InnerFunction operator*(const InnerFunction& other) const;
  InnerFunction with_constant(Complex constant) const;

private:
  std::vector<Complex> zeros_;
  Complex constant_{1.0, 0.0};
};

/// True iff the zero multiset of `a` is contained in that of `t`.
bool divides(const InnerFunction& a, const InnerFunction& t);

/// t / a. Zeros are the multiset difference, constants are divided so that
/// quotient(t, a) * a == t pointwise. Throws NotDivisible.
InnerFunction quotient(const InnerFunction& t, const InnerFunction& a);

/// Greatest common divisor, normalized to constant 1.
InnerFunction gcd(const InnerFunction& a, const InnerFunction& b);

/// Same zero multiset up to the pairing tolerance (constants ignored).
bool same_zeros(const InnerFunction& a, const InnerFunction& b);

}  // namespace atto
