#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "atto/inner_function.hpp"
#include "atto/types.hpp"

namespace atto {

inline constexpr std::size_t kDefaultGridFloor = 256;
inline constexpr std::size_t kMaxGridSize = std::size_t{1} << 20;
inline constexpr double kTailTolerance = 1e-12;

/// Samples of a function on the circle at z_j = exp(2 pi i j / M).
class GridFunction {
public:
  GridFunction() = default;
  explicit GridFunction(Vector samples);

  static GridFunction zeros(std::size_t m);
  static GridFunction constant(std::size_t m, Complex value);
  static GridFunction monomial(std::size_t m, long k);
  static GridFunction from_function(std::size_t m, const std::function<Complex(Complex)>& f);
  static GridFunction from_inner(std::size_t m, const InnerFunction& f);
  /// Sum of c_k z^k over the map entries; negative k allowed.
  static GridFunction from_laurent(std::size_t m, const std::map<long, Complex>& coefficients);

  std::size_t size() const noexcept { return static_cast<std::size_t>(samples_.size()); }
  const Vector& samples() const noexcept { return samples_; }
  Complex operator[](std::size_t j) const { return samples_[static_cast<Eigen::Index>(j)]; }

  GridFunction conj() const;
  GridFunction operator+(const GridFunction& g) const;
  GridFunction operator-(const GridFunction& g) const;
  GridFunction operator*(const GridFunction& g) const;
  GridFunction operator*(Complex s) const;
  GridFunction operator-() const;
  GridFunction& operator+=(const GridFunction& g);
  GridFunction& operator-=(const GridFunction& g);

  /// Fourier coefficients in FFT order: entry k holds index k for k < M/2 and
  /// index k - M otherwise.
  Vector fourier_coefficients() const;
  static GridFunction from_fourier(const Vector& coefficients);

  Complex mean() const;
  double l2_norm() const;
  double sup_norm() const;
  /// l2 mass of the Fourier coefficients with |index| > M/4.
  double tail_mass() const;

private:
  Vector samples_;
};

GridFunction operator*(Complex s, const GridFunction& f);

/// The grid point z_j.
Complex grid_point(std::size_t m, std::size_t j);
/// All grid points as a function (the identity map on the circle).
GridFunction identity_function(std::size_t m);

/// (1/M) sum_j f(z_j) conj(g(z_j)). Throws GridMismatch.
Complex inner_product(const GridFunction& f, const GridFunction& g);

/// Riesz projection onto H^2 (indices >= 0).
GridFunction project_plus(const GridFunction& f);
/// Projection onto conj(H^2_0) (indices < 0, with index M/2 counted as negative).
GridFunction project_minus(const GridFunction& f);

/// P_theta f = theta P^-(conj(theta) P f), with theta given by its samples.
GridFunction model_projection(const GridFunction& theta, const GridFunction& f);

/// Grid floor, honouring the ATTO_GRID_FLOOR environment variable.
std::size_t grid_floor();

/// Smallest admissible grid for the given inner functions and an extra
/// polynomial degree budget (symbol data). Doubles until every basis function
/// and every inner function has tail mass below kTailTolerance.
std::size_t select_grid_size(const std::vector<InnerFunction>& inner_functions,
                             std::size_t extra_degree = 0,
                             std::size_t floor = grid_floor());

/// Throws NyquistViolation if the Fourier tail of `phi` beyond M/4 is not
/// negligible relative to max(1, ||phi||).
void check_band_limit(const GridFunction& phi, double tolerance = kTailTolerance);

}  // namespace atto
