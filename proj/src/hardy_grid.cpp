#include "atto/hardy_grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>

namespace atto {

namespace {

bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

std::size_t next_power_of_two(std::size_t m) {
  std::size_t p = 1;
  while (p < m) p <<= 1;
  return p;
}

void require_same_size(const GridFunction& f, const GridFunction& g) {
  if (f.size() != g.size()) {
    throw Error(ErrorKind::GridMismatch, "grid functions live on different grids (" +
                                             std::to_string(f.size()) + " vs " +
                                             std::to_string(g.size()) + ")");
  }
}

// Copies of the kissfft plan are cheap; one per call keeps everything pure.
Vector forward_fft(const Vector& x) {
  Eigen::FFT<double> fft;
  Vector out;
  fft.fwd(out, x);
  return out;
}

Vector inverse_fft(const Vector& x) {
  Eigen::FFT<double> fft;
  Vector out;
  fft.inv(out, x);
  return out;
}

}  // namespace

GridFunction::GridFunction(Vector samples) : samples_(std::move(samples)) {
  const auto m = static_cast<std::size_t>(samples_.size());
  if (!is_power_of_two(m)) {
    throw Error(ErrorKind::InvalidArgument, "grid size must be a power of two");
  }
  if (!samples_.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, "grid function has non-finite samples");
  }
}

GridFunction GridFunction::zeros(std::size_t m) {
  return GridFunction(Vector::Zero(static_cast<Eigen::Index>(m)));
}

GridFunction GridFunction::constant(std::size_t m, Complex value) {
  return GridFunction(Vector::Constant(static_cast<Eigen::Index>(m), value));
}

GridFunction GridFunction::monomial(std::size_t m, long k) {
  Vector s(static_cast<Eigen::Index>(m));
  const auto mm = static_cast<long>(m);
  for (long j = 0; j < mm; ++j) {
    // Reduce the phase exactly before taking the exponential.
    long r = ((k % mm) * j) % mm;
    if (r < 0) r += mm;
    s[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(m));
  }
  return GridFunction(std::move(s));
}

GridFunction GridFunction::from_function(std::size_t m, const std::function<Complex(Complex)>& f) {
  Vector s(static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) s[static_cast<Eigen::Index>(j)] = f(grid_point(m, j));
  return GridFunction(std::move(s));
}

GridFunction GridFunction::from_inner(std::size_t m, const InnerFunction& f) {
  return from_function(m, [&f](Complex z) { return f(z); });
}

GridFunction GridFunction::from_laurent(std::size_t m, const std::map<long, Complex>& coefficients) {
  auto out = zeros(m);
  for (const auto& [k, c] : coefficients) out += monomial(m, k) * c;
  return out;
}

GridFunction GridFunction::conj() const { return GridFunction(samples_.conjugate()); }

GridFunction GridFunction::operator+(const GridFunction& g) const {
  require_same_size(*this, g);
  return GridFunction(samples_ + g.samples_);
}

GridFunction GridFunction::operator-(const GridFunction& g) const {
  require_same_size(*this, g);
  return GridFunction(samples_ - g.samples_);
}

GridFunction GridFunction::operator*(const GridFunction& g) const {
  require_same_size(*this, g);
  return GridFunction(samples_.cwiseProduct(g.samples_));
}

GridFunction GridFunction::operator*(Complex s) const { return GridFunction(samples_ * s); }

GridFunction GridFunction::operator-() const { return GridFunction(-samples_); }

GridFunction& GridFunction::operator+=(const GridFunction& g) {
  require_same_size(*this, g);
  samples_ += g.samples_;
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& g) {
  require_same_size(*this, g);
  samples_ -= g.samples_;
  return *this;
}

GridFunction operator*(Complex s, const GridFunction& f) { return f * s; }

Vector GridFunction::fourier_coefficients() const {
  return forward_fft(samples_) / static_cast<double>(samples_.size());
}

GridFunction GridFunction::from_fourier(const Vector& coefficients) {
  return GridFunction(inverse_fft(coefficients) * static_cast<double>(coefficients.size()));
}

Complex GridFunction::mean() const { return samples_.mean(); }

double GridFunction::l2_norm() const {
  return std::sqrt(samples_.squaredNorm() / static_cast<double>(samples_.size()));
}

double GridFunction::sup_norm() const {
  return samples_.size() == 0 ? 0.0 : samples_.cwiseAbs().maxCoeff();
}

double GridFunction::tail_mass() const {
  const auto c = fourier_coefficients();
  const auto m = c.size();
  double mass = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto index = k < m / 2 ? k : k - m;
    if (std::abs(index) > m / 4) mass += std::norm(c[k]);
  }
  return std::sqrt(mass);
}

Complex grid_point(std::size_t m, std::size_t j) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m));
}

GridFunction identity_function(std::size_t m) { return GridFunction::monomial(m, 1); }

Complex inner_product(const GridFunction& f, const GridFunction& g) {
  require_same_size(f, g);
  return g.samples().dot(f.samples()) / static_cast<double>(f.size());
}

GridFunction project_plus(const GridFunction& f) {
  auto c = f.fourier_coefficients();
  const auto m = c.size();
  c.tail(m / 2).setZero();
  return GridFunction::from_fourier(c);
}

GridFunction project_minus(const GridFunction& f) {
  auto c = f.fourier_coefficients();
  const auto m = c.size();
  c.head(m / 2).setZero();
  return GridFunction::from_fourier(c);
}

GridFunction model_projection(const GridFunction& theta, const GridFunction& f) {
  return theta * project_minus(theta.conj() * project_plus(f));
}

std::size_t grid_floor() {
  if (const char* env = std::getenv("ATTO_GRID_FLOOR")) {
    char* end = nullptr;
    const auto value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value >= 16) {
      return next_power_of_two(static_cast<std::size_t>(value));
    }
    throw Error(ErrorKind::InvalidArgument, "ATTO_GRID_FLOOR must be an integer >= 16");
  }
  return kDefaultGridFloor;
}

namespace {

// Headroom for products of inner functions with symbol polynomials, whose
// tails scale with the coefficient mass of the polynomial.
constexpr double kSelectionTolerance = 1e-2 * kTailTolerance;

// Largest tail over the inner functions and the Takenaka-Malmquist functions
// of their zero lists; these bound the tails of every basis function and
// product built on the grid.
double worst_tail(std::size_t m, const std::vector<InnerFunction>& inner_functions) {
  double worst = 0.0;
  for (const auto& f : inner_functions) {
    worst = std::max(worst, GridFunction::from_inner(m, f).tail_mass());
    std::vector<Complex> seen;
    for (const auto& a : f.zeros()) {
      auto e = GridFunction::from_function(m, [&](Complex z) {
        Complex v = std::sqrt(1.0 - std::norm(a)) / (1.0 - std::conj(a) * z);
        for (const auto& b : seen) v *= (z - b) / (1.0 - std::conj(b) * z);
        return v;
      });
      worst = std::max(worst, e.tail_mass());
      seen.push_back(a);
    }
  }
  return worst;
}

}  // namespace

std::size_t select_grid_size(const std::vector<InnerFunction>& inner_functions,
                             std::size_t extra_degree, std::size_t floor) {
  std::size_t total_degree = 0;
  for (const auto& f : inner_functions) total_degree += f.degree();
  std::size_t m = next_power_of_two(std::max(floor, 8 * (total_degree + extra_degree + 4)));
  double tail = worst_tail(m, inner_functions);
  while (tail >= kSelectionTolerance) {
    if (2 * m > kMaxGridSize) break;
    const double finer = worst_tail(2 * m, inner_functions);
    // Near the circle the tail stalls at the rounding floor.
    if (tail < kTailTolerance && finer > 0.5 * tail) break;
    m <<= 1;
    tail = finer;
  }
  if (tail >= kTailTolerance) {
    throw Error(ErrorKind::NyquistViolation, "no grid up to 2^20 resolves the inner functions");
  }
  return m;
}

void check_band_limit(const GridFunction& phi, double tolerance) {
  const double scale = std::max(1.0, phi.l2_norm());
  const double tail = phi.tail_mass();
  if (tail >= tolerance * scale) {
    throw Error(ErrorKind::NyquistViolation,
                "symbol is not resolved by the grid (Fourier tail " + std::to_string(tail) + ")");
  }
}

}  // namespace atto
