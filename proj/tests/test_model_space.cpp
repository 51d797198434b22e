#include <cmath>

#include "doctest.h"
#include "atto/linalg.hpp"
#include "atto/model_space.hpp"
#include "atto/random.hpp"

using namespace atto;

namespace {

constexpr std::size_t M = 1024;

InnerFunction lambda_example() {
  return InnerFunction::monomial(3) * InnerFunction::blaschke_factor(0.3, 2);
}

// P_theta f = theta P^-(conj(theta) P f), independent of the basis.
GridFunction projection_oracle(const InnerFunction& theta, const GridFunction& f) {
  auto t = GridFunction::from_inner(f.size(), theta);
  return t * project_minus(t.conj() * project_plus(f));
}

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

GridFunction random_l2(InstanceGenerator& gen, std::size_t m) {
  return GridFunction::from_laurent(m, gen.laurent(-12, 12));
}

}  // namespace

TEST_CASE("monomial model space has the monomial basis") {
  auto space = ModelSpace::build(InnerFunction::monomial(5), M);
  CHECK(space.dim() == 5);
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK((space.basis(k) - GridFunction::monomial(M, static_cast<long>(k))).sup_norm() < 1e-13);
  }
}

TEST_CASE("one-dimensional model space is spanned by the normalized kernel") {
  auto theta = InnerFunction::blaschke_factor(0.3);
  auto space = ModelSpace::build(theta, M);
  REQUIRE(space.dim() == 1);
  auto t = GridFunction::from_inner(M, theta);
  auto k0 = GridFunction::constant(M, 1.0) - std::conj(theta.at_zero()) * t;
  auto k0n = k0 * (1.0 / k0.l2_norm());
  CHECK(std::abs(std::abs(inner_product(space.basis(0), k0n)) - 1.0) < 1e-12);
}

TEST_CASE("basis is orthonormal and lies in the model space") {
  auto theta = lambda_example();
  auto space = ModelSpace::build(theta, M);
  CHECK(space.dim() == 5);
  Matrix gram = space.basis_samples().adjoint() * space.basis_samples() / double(M);
  CHECK(max_abs(gram - Matrix::Identity(5, 5)) < 1e-10);
  auto t = GridFunction::from_inner(M, theta);
  for (std::size_t k = 0; k < space.dim(); ++k) {
    for (long j = 0; j <= static_cast<long>(space.dim()); ++j) {
      CHECK(std::abs(inner_product(space.basis(k), t * GridFunction::monomial(M, j))) < 1e-12);
    }
  }
}

TEST_CASE("constant inner functions are rejected") {
  try {
    (void)ModelSpace::build(InnerFunction({}, Complex(0.0, 1.0)), M);
    FAIL("expected ConstantInner");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConstantInner);
  }
}

TEST_CASE("projection agrees with theta P^- conj(theta) P") {
  InstanceGenerator gen(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto [theta, alpha] = gen.pair();
    auto space = ModelSpace::build(theta, M);
    auto f = random_l2(gen, M);
    auto direct = space.synthesize(space.project(f));
    CHECK((direct - projection_oracle(theta, f)).l2_norm() < 1e-9 * f.l2_norm());
  }
}

TEST_CASE("projection examples") {
  auto z2 = ModelSpace::build(InnerFunction::monomial(2), M);
  CHECK(z2.project(GridFunction::monomial(M, -1)).norm() < 1e-15);

  auto space = ModelSpace::build(lambda_example(), M);
  auto k0 = space.synthesize(space.kernels().k0);
  CHECK((space.project(k0) - space.kernels().k0).norm() < 1e-12);

  // P_theta conj(h) = conj(h(0)) k0 for analytic h.
  InstanceGenerator gen(5);
  auto h = gen.polynomial(6);
  std::map<long, Complex> hc;
  for (std::size_t k = 0; k < h.size(); ++k) hc[static_cast<long>(k)] = h[k];
  auto hg = GridFunction::from_laurent(M, hc);
  auto expected = std::conj(h[0]) * space.kernels().k0;
  CHECK((space.project(hg.conj()) - expected).norm() < 1e-10);
}

TEST_CASE("kernels") {
  for (std::size_t n = 1; n <= 6; ++n) {
    auto space = ModelSpace::build(InnerFunction::monomial(n), M);
    Vector e0 = Vector::Zero(n);
    e0[0] = 1.0;
    Vector elast = Vector::Zero(n);
    elast[n - 1] = 1.0;
    CHECK((space.kernels().k0 - e0).norm() < 1e-13);
    CHECK((space.kernels().k0_tilde - elast).norm() < 1e-13);
  }
  auto b = ModelSpace::build(InnerFunction::blaschke_factor(0.3), M);
  CHECK(b.kernels().k0.squaredNorm() == doctest::Approx(0.91).epsilon(1e-12));
  CHECK(b.kernels().k0_tilde.squaredNorm() == doctest::Approx(0.91).epsilon(1e-12));

  InstanceGenerator gen(6);
  for (int trial = 0; trial < 10; ++trial) {
    auto [theta, alpha] = gen.pair();
    auto space = ModelSpace::build(theta, M);
    const auto& kv = space.kernels();
    double expected = 1.0 - std::norm(theta.at_zero());
    CHECK(kv.k0.squaredNorm() == doctest::Approx(expected).epsilon(1e-10));
    CHECK(kv.k0_tilde.squaredNorm() == doctest::Approx(expected).epsilon(1e-10));
    auto t = space.theta_samples();
    auto one = GridFunction::constant(M, 1.0);
    CHECK(space.residual(one - std::conj(theta.at_zero()) * t) < 1e-10);
    CHECK(space.residual(identity_function(M).conj() * (t - theta.at_zero() * one)) < 1e-10);
    Vector f = gen.gaussian_vector(space.dim());
    CHECK(std::abs(inner(f, kv.k0) - space.evaluate(f, 0.0)) < 1e-10);
  }
}

TEST_CASE("conjugate kernel splits along the quotient") {
  auto pair = SpacePair::build(InnerFunction::monomial(5), InnerFunction::monomial(2), 0, M);
  Vector expected = pair.quotient0 * pair.inclusion * pair.alpha_space.kernels().k0_tilde +
                    pair.alpha_times_quotient * pair.quotient_space->kernels().k0_tilde;
  CHECK((pair.theta_space.kernels().k0_tilde - expected).norm() < 1e-12);
  Vector z4 = Vector::Zero(5);
  z4[4] = 1.0;
  CHECK((expected - z4).norm() < 1e-12);
}

TEST_CASE("kernel_at reproduces point values") {
  auto z2 = ModelSpace::build(InnerFunction::monomial(2), M);
  auto k = z2.kernel_at(0.5);
  CHECK(std::abs(k[0] - 1.0) < 1e-14);
  CHECK(std::abs(k[1] - 0.5) < 1e-14);
  CHECK_THROWS_AS(z2.kernel_at(Complex(1.0, 0.0)), Error);

  InstanceGenerator gen(7);
  for (int trial = 0; trial < 5; ++trial) {
    auto [theta, alpha] = gen.pair();
    auto space = ModelSpace::build(theta, M);
    CHECK((space.kernel_at(0.0) - space.kernels().k0).norm() < 1e-10);
    for (int i = 0; i < 10; ++i) {
      Complex lambda = gen.in_disk(0.7);
      Vector f = gen.gaussian_vector(space.dim());
      auto kl = space.kernel_at(lambda);
      CHECK(std::abs(inner(f, kl) - space.evaluate(f, lambda)) < 1e-9);
      // Closed-form kernel against a grid projection of its formula.
      const Complex tl = theta(lambda);
      auto kg = GridFunction::from_function(M, [&](Complex z) {
        return (1.0 - std::conj(tl) * theta(z)) / (1.0 - std::conj(lambda) * z);
      });
      CHECK((space.project(kg) - kl).norm() < 1e-9);
      CHECK(space.residual(kg) < 1e-9);
    }
  }
}

TEST_CASE("evaluate matches the synthesized grid function on the circle") {
  InstanceGenerator gen(8);
  auto [theta, alpha] = gen.pair();
  auto space = ModelSpace::build(theta, M);
  Vector c = gen.gaussian_vector(space.dim());
  auto g = space.synthesize(c);
  for (std::size_t j = 0; j < M; j += 37) {
    CHECK(std::abs(space.evaluate(c, grid_point(M, j)) - g[j]) < 1e-12);
  }
}

TEST_CASE("conjugation") {
  auto z5 = ModelSpace::build(InnerFunction::monomial(5), M);
  const auto& j5 = z5.conjugation().matrix;
  for (int k = 0; k < 5; ++k) {
    for (int r = 0; r < 5; ++r) {
      CHECK(std::abs(j5(r, k) - (r == 4 - k ? 1.0 : 0.0)) < 1e-13);
    }
  }

  InstanceGenerator gen(9);
  for (int trial = 0; trial < 10; ++trial) {
    auto [theta, alpha] = gen.pair();
    auto pair = SpacePair::build(theta, alpha, 0, M);
    const auto& space = pair.theta_space;
    const auto& c = space.conjugation();
    const auto n = static_cast<Eigen::Index>(space.dim());
    CHECK(max_abs(c.matrix * c.matrix.conjugate() - Matrix::Identity(n, n)) < 1e-10);
    Vector v = gen.gaussian_vector(space.dim());
    CHECK(std::abs(c(v).norm() - v.norm()) < 1e-10 * v.norm());
    CHECK((c(space.kernels().k0) - space.kernels().k0_tilde).norm() < 1e-10);

    // C(f1 + alpha f2) = C_q f2 + q C_alpha f1
    Vector f1 = gen.gaussian_vector(pair.alpha_space.dim());
    Vector f2 = gen.gaussian_vector(pair.quotient_dim());
    Vector f = pair.inclusion * f1 + pair.alpha_times_quotient * f2;
    Vector rhs = pair.quotient_times_alpha * pair.alpha_space.conjugation()(f1);
    if (pair.quotient_space) rhs += pair.quotient_inclusion * pair.quotient_space->conjugation()(f2);
    CHECK((c(f) - rhs).norm() < 1e-9);
  }
}

TEST_CASE("compressed shift") {
  auto z4 = ModelSpace::build(InnerFunction::monomial(4), M);
  const auto& s = z4.compressed_shift().shift;
  for (int r = 0; r < 4; ++r) {
    for (int k = 0; k < 4; ++k) CHECK(std::abs(s(r, k) - (r == k + 1 ? 1.0 : 0.0)) < 1e-13);
  }

  InstanceGenerator gen(10);
  for (int trial = 0; trial < 10; ++trial) {
    auto [theta, alpha] = gen.pair();
    auto space = ModelSpace::build(theta, M);
    const auto& sh = space.compressed_shift();
    const auto& kv = space.kernels();
    const Complex t0 = space.theta_at_zero();
    const auto n = static_cast<Eigen::Index>(space.dim());
    CHECK((sh.adjoint * kv.k0 + std::conj(t0) * kv.k0_tilde).norm() < 1e-10);
    CHECK((sh.shift * kv.k0_tilde + t0 * kv.k0).norm() < 1e-10);
    CHECK(max_abs(Matrix::Identity(n, n) - sh.shift * sh.adjoint - outer(kv.k0, kv.k0)) < 1e-10);
    CHECK(max_abs(Matrix::Identity(n, n) - sh.adjoint * sh.shift - outer(kv.k0_tilde, kv.k0_tilde)) < 1e-10);

    // S* f = conj(z)(f - f(0)) computed on the grid.
    Vector f = gen.gaussian_vector(space.dim());
    auto g = space.synthesize(f);
    auto expected = identity_function(M).conj() * (g - GridFunction::constant(M, space.evaluate(f, 0.0)));
    CHECK((space.synthesize(sh.adjoint * f) - expected).l2_norm() < 1e-10);
    // S f = z f - <f, k0~> theta
    auto sf = identity_function(M) * g - inner(f, kv.k0_tilde) * space.theta_samples();
    CHECK((space.synthesize(sh.shift * f) - sf).l2_norm() < 1e-10);
  }
}

TEST_CASE("decomposition identities") {
  auto pair = SpacePair::build(InnerFunction::monomial(5), InnerFunction::monomial(2), 0, M);
  Vector z3 = Vector::Zero(5);
  z3[3] = 1.0;
  auto split = decompose(pair, z3);
  CHECK(split.alpha_part.norm() < 1e-13);
  CHECK(std::abs(split.quotient_part[1] - 1.0) < 1e-13);
  CHECK(std::abs(split.quotient_part[0]) + std::abs(split.quotient_part[2]) < 1e-13);

  InstanceGenerator gen(12);
  for (int trial = 0; trial < 15; ++trial) {
    auto [theta, alpha] = gen.pair();
    auto p = SpacePair::build(theta, alpha, 0, M);
    const auto n = static_cast<Eigen::Index>(p.theta_space.dim());
    Matrix first(n, n), second(n, n);
    first << p.inclusion, p.alpha_times_quotient;
    second << p.quotient_inclusion, p.quotient_times_alpha;
    CHECK(max_abs(first.adjoint() * first - Matrix::Identity(n, n)) < 1e-10);
    CHECK(max_abs(second.adjoint() * second - Matrix::Identity(n, n)) < 1e-10);

    Vector f = gen.gaussian_vector(p.theta_space.dim());
    auto s1 = decompose(p, f);
    CHECK((p.inclusion * s1.alpha_part + p.alpha_times_quotient * s1.quotient_part - f).norm() < 1e-9);
    auto s2 = decompose_quotient_first(p, f);
    CHECK((p.quotient_inclusion * s2.quotient_part + p.quotient_times_alpha * s2.alpha_part - f).norm() < 1e-9);

    const auto& kt = p.theta_space.kernels();
    const auto& ka = p.alpha_space.kernels();
    Vector k0 = p.inclusion * ka.k0;
    Vector kt_expected = p.quotient0 * p.inclusion * ka.k0_tilde;
    if (p.quotient_space) {
      k0 += std::conj(p.alpha0) * p.alpha_times_quotient * p.quotient_space->kernels().k0;
      kt_expected += p.alpha_times_quotient * p.quotient_space->kernels().k0_tilde;
    }
    CHECK((kt.k0 - k0).norm() < 1e-10);
    CHECK((kt.k0_tilde - kt_expected).norm() < 1e-10);
    CHECK((p.inclusion.adjoint() * kt.k0_tilde - p.quotient0 * ka.k0_tilde).norm() < 1e-10);
  }
}

TEST_CASE("intertwining and conjugation-projection interplay") {
  InstanceGenerator gen(13);
  for (int trial = 0; trial < 20; ++trial) {
    auto [theta, alpha] = gen.pair();
    auto p = SpacePair::build(theta, alpha, 0, M);
    Matrix pa = p.inclusion.adjoint();
    const auto& st = p.theta_space.compressed_shift();
    const auto& sa = p.alpha_space.compressed_shift();
    CHECK(operator_norm(pa * st.shift - sa.shift * pa) < 1e-9);
    CHECK(operator_norm(st.adjoint * p.inclusion - p.inclusion * sa.adjoint) < 1e-9);

    Vector f = gen.gaussian_vector(p.theta_space.dim());
    Vector lhs = pa * p.theta_space.conjugation()(f);
    Vector rhs = p.alpha_space.conjugation()(p.quotient_times_alpha.adjoint() * f);
    CHECK((lhs - rhs).norm() < 1e-9);
  }
}

TEST_CASE("k0 is cyclic for the compressed shift") {
  InstanceGenerator gen(14);
  for (int trial = 0; trial < 10; ++trial) {
    auto [theta, alpha] = gen.pair();
    auto space = ModelSpace::build(theta, M);
    const auto n = static_cast<Eigen::Index>(space.dim());
    Matrix krylov(n, n);
    Vector v = space.kernels().k0;
    for (Eigen::Index k = 0; k < n; ++k) {
      krylov.col(k) = v;
      v = space.compressed_shift().shift * v;
    }
    auto sigma = singular_values(krylov);
    CHECK(sigma[n - 1] > 1e-8);
  }
}

TEST_CASE("basis ordering is deterministic") {
  InnerFunction a({Complex(0.5, 0.0), 0.0, Complex(0.0, 0.5), Complex(0.5, 0.0)});
  auto z = ordered_zeros(a);
  CHECK(z[0] == Complex(0.0, 0.0));
  CHECK(z[1] == Complex(0.5, 0.0));
  CHECK(z[2] == Complex(0.5, 0.0));
  CHECK(z[3] == Complex(0.0, 0.5));
}
