#pragma once

#include "atto/characterize.hpp"
#include "atto/model_space.hpp"
#include "atto/operator.hpp"

namespace atto {

enum class GaugeKind { ChiAtZero, PsiAtZero };

/// Fixes one value of the symbol at the origin. Default: chi(0) = 0.
struct Gauge {
  GaugeKind kind = GaugeKind::ChiAtZero;
  Complex value{0.0, 0.0};
};

/// a = psi(0), b = conj(chi_alpha(0)), c = conj(chi(0)).
struct RecoveryScalars {
  Complex a;
  Complex b;
  Complex c;
  Complex determinant;  // of the 2x2 system actually solved
};

/// Solves
///   a + conj(theta(0)) alpha(0) b + ||k0^alpha||^2 c = <A k0^theta, k0^alpha>
///   q(0) a + b                                         = <A k0~^theta, k0~^alpha>
/// in the two unknowns left free by the gauge.
RecoveryScalars recover_scalars(const SpacePair& pair, const Matrix& a, const Gauge& gauge = {});

struct ActionsRecovery {
  SymbolPair symbol;
  RecoveryScalars scalars;
  double min_alpha_gap = 0.0;  // min over the grid of |alpha - alpha(0)|
};

/// Symbol from A k0^theta, A k0~^theta and C_theta A* k0^alpha by solving the
/// pointwise 3x3 system for X = psi, Y = alpha conj(chi_alpha),
/// Z = q conj(chi_q); then chi = q conj(Z) + theta conj(Y).
/// Throws NotInClass, SingularSystem.
ActionsRecovery recover_symbol_from_actions(const SpacePair& pair, const Matrix& a,
                                            const Gauge& gauge = {});

struct MuNuExtraction {
  CharData data;    // gauge <nu, k0~^theta> = 0
  double residual;  // ||D2 - mu (x) k0~ - k0~ (x) nu||
};
MuNuExtraction extract_mu_nu(const SpacePair& pair, const Matrix& a);
/// Same, starting from a second defect D2 = A - S*_alpha A S_theta.
MuNuExtraction mu_nu_from_defect(const SpacePair& pair, const Matrix& d2);

/// The (mu, nu) gauge with P_q(conj(alpha) nu) orthogonal to k0~^q.
/// Throws QuotientConstant when theta/alpha is constant.
CharData canonicalize_mu_nu(const SpacePair& pair, const CharData& data);

struct MuNuRecovery {
  SymbolPair symbol;
  Complex c{0.0, 0.0};  // <P_q conj(alpha) nu, k0~^q> / ||k0~^q||^2
  bool symmetric = false;
  double residual = 0.0;  // second defect of the recovered operator against the data
};

/// psi = C_alpha P_alpha(nu - c k0~^theta),
/// chi = S_q P_q conj(alpha)(nu - c k0~^theta) + q C_alpha(mu + conj(c) k0~^alpha);
/// psi = C_alpha nu, chi = C_theta mu when theta/alpha is constant.
/// Throws NotInClass if the recovered operator misses the data.
MuNuRecovery recover_symbol_from_mu_nu(const SpacePair& pair, const CharData& data);

}  // namespace atto
