#pragma once

#include <cstddef>
#include <vector>

#include "atto/model_space.hpp"
#include "atto/operator.hpp"
#include "atto/types.hpp"

namespace atto {

/// mu in K^2_alpha, nu in K^2_theta with A - S*_alpha A S_theta = mu (x) k0~^theta + k0~^alpha (x) nu.
struct CharData {
  Vector mu;
  Vector nu;
};

/// A - S_alpha A S*_theta for A: K_theta -> K_alpha.
Matrix defect_one(const SpacePair& pair, const Matrix& a);
/// A - S*_alpha A S_theta for A: K_theta -> K_alpha.
Matrix defect_two(const SpacePair& pair, const Matrix& a);
/// B - S_theta B S*_alpha for B: K_alpha -> K_theta.
Matrix defect_one_reverse(const SpacePair& pair, const Matrix& b);
/// B - S*_theta B S_alpha for B: K_alpha -> K_theta.
Matrix defect_two_reverse(const SpacePair& pair, const Matrix& b);

/// psi (x) k0^theta + k0^alpha (x) chi.
Matrix rank_two_first(const SpacePair& pair, const SymbolPair& symbol);
/// mu (x) k0~^theta + k0~^alpha (x) nu.
Matrix rank_two_second(const SpacePair& pair, const CharData& data);

/// mu = C_alpha chi_alpha, nu = C_alpha psi + S*_theta(alpha chi_q), where
/// chi = chi_q + q chi_alpha.
CharData mu_nu_from_symbol(const SpacePair& pair, const SymbolPair& symbol);

/// (mu + conj(b) k0~^alpha, nu - b k0~^theta).
CharData char_gauge_shift(const SpacePair& pair, const CharData& data, Complex b);

struct MembershipReport {
  bool in_class = false;
  double residual = 0.0;
  double tolerance = 0.0;
  SymbolPair symbol;  // gauge <chi, k0^theta> = 0
};

/// Reads (psi, chi) off the first defect and accepts when the rank-two form
/// reproduces it to 1e-8 (1 + ||A||).
MembershipReport membership_extract(const SpacePair& pair, const Matrix& a);

struct RankOneReport {
  // Conditions on the symbol.
  bool symbol_first = false;   // psi = s k0^alpha and P_q chi = -conj(s) k0^q
  bool symbol_second = false;  // P_alpha(conj(q) chi) = const k0^alpha
  Complex s{0.0, 0.0};
  double first_residual = 0.0;
  double second_residual = 0.0;
  // Shape of the second defect.
  bool defect_first = false;   // D2 = mu (x) k0~^theta
  bool defect_second = false;  // D2 = k0~^alpha (x) nu
  double defect_first_residual = 0.0;
  double defect_second_residual = 0.0;
  Eigen::Index rank = 0;
  Eigen::VectorXd singular_values;
};

RankOneReport rank_one_conditions(const SpacePair& pair, const SymbolPair& symbol,
                                  double tolerance = 1e-8);

/// Six projection identities for the pieces of mu and nu, plus the three
/// scalar compressions of the rank-two forms onto kernel lines.
std::vector<IdentityCheck> projection_identity_suite(const SpacePair& pair, const SymbolPair& symbol);

struct SeriesResult {
  Matrix sum;
  std::size_t terms = 0;
  double last_term_norm = 0.0;
};
/// sum_k (S*_alpha)^k D (S_theta)^k, stopped when a term drops below
/// tolerance (1 + ||partial sum||).
SeriesResult series_operator(const SpacePair& pair, const Matrix& d, double tolerance = 1e-15,
                             std::size_t max_terms = 100000);

}  // namespace atto
