#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "atto/inner_function.hpp"
#include "atto/types.hpp"

namespace atto {

struct PairOptions {
  std::size_t max_theta_degree = 8;
  double max_modulus = 0.8;
  std::size_t min_quotient_degree = 0;
};

struct InnerPair {
  InnerFunction theta;
  InnerFunction alpha;
};

/// The single seeded source of randomness for property suites.
class InstanceGenerator {
public:
  explicit InstanceGenerator(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  std::size_t integer(std::size_t lo, std::size_t hi);  // inclusive
  Complex gaussian();
  Complex unimodular();
  /// Uniform in the disk of the given radius.
  Complex in_disk(double radius);

  /// A divisible pair alpha <= theta. Zeros include exact origins, repeated
  /// zeros, and random unimodular constants.
  InnerPair pair(const PairOptions& options = {});
  InnerFunction inner(std::size_t degree, double max_modulus);

  Vector gaussian_vector(std::size_t n);
  /// Coefficients c_0..c_degree of a polynomial.
  std::vector<Complex> polynomial(std::size_t degree);
  std::map<long, Complex> laurent(long lo, long hi);

  std::mt19937_64& engine() noexcept { return engine_; }

private:
  std::vector<Complex> zero_list(std::size_t degree, double max_modulus);

  std::mt19937_64 engine_;
};

}  // namespace atto
