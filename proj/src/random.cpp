#include "atto/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace atto {

double InstanceGenerator::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

std::size_t InstanceGenerator::integer(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
}

Complex InstanceGenerator::gaussian() {
  std::normal_distribution<double> n;
  const double re = n(engine_);
  const double im = n(engine_);
  return {re, im};
}

Complex InstanceGenerator::unimodular() { return std::polar(1.0, uniform(-std::numbers::pi, std::numbers::pi)); }

Complex InstanceGenerator::in_disk(double radius) {
  const double r = radius * std::sqrt(uniform(0.0, 1.0));
  return std::polar(r, uniform(-std::numbers::pi, std::numbers::pi));
}

std::vector<Complex> InstanceGenerator::zero_list(std::size_t degree, double max_modulus) {
  std::vector<Complex> zeros;
  while (zeros.size() < degree) {
    const double roll = uniform(0.0, 1.0);
    if (roll < 0.25) {
      zeros.emplace_back(0.0, 0.0);
    } else if (roll < 0.45 && !zeros.empty()) {
      zeros.push_back(zeros[integer(0, zeros.size() - 1)]);
    } else {
      zeros.push_back(in_disk(max_modulus));
    }
  }
  return zeros;
}

InnerFunction InstanceGenerator::inner(std::size_t degree, double max_modulus) {
  return InnerFunction(zero_list(degree, max_modulus), unimodular());
}

InnerPair InstanceGenerator::pair(const PairOptions& options) {
  const std::size_t lowest = 1 + options.min_quotient_degree;
  if (options.max_theta_degree < lowest) {
    throw Error(ErrorKind::InvalidArgument, "max_theta_degree too small for the requested quotient");
  }
  const std::size_t n = integer(lowest, options.max_theta_degree);
  const std::size_t m = integer(1, n - options.min_quotient_degree);
  auto zeros = zero_list(n, options.max_modulus);
  std::shuffle(zeros.begin(), zeros.end(), engine_);
  std::vector<Complex> alpha_zeros(zeros.begin(), zeros.begin() + static_cast<std::ptrdiff_t>(m));
  std::shuffle(zeros.begin(), zeros.end(), engine_);
  return {InnerFunction(zeros, unimodular()), InnerFunction(alpha_zeros, unimodular())};
}

Vector InstanceGenerator::gaussian_vector(std::size_t n) {
  Vector v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = gaussian();
  return v;
}

std::vector<Complex> InstanceGenerator::polynomial(std::size_t degree) {
  std::vector<Complex> c(degree + 1);
  for (auto& x : c) x = gaussian();
  return c;
}

std::map<long, Complex> InstanceGenerator::laurent(long lo, long hi) {
  std::map<long, Complex> c;
  for (long k = lo; k <= hi; ++k) c[k] = gaussian();
  return c;
}

}  // namespace atto
