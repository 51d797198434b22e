#pragma once

#include <string>
#include <vector>

#include "atto/hardy_grid.hpp"
#include "atto/model_space.hpp"
#include "atto/types.hpp"

namespace atto {

/// A bounded operator K^2_domain -> K^2_codomain in Takenaka-Malmquist bases.
struct AttoMatrix {
  InnerFunction domain;
  InnerFunction codomain;
  Matrix matrix;
};

/// psi in K^2_alpha (alpha coordinates), chi in K^2_theta (theta coordinates);
/// the symbol is psi + conj(chi).
struct SymbolPair {
  Vector psi;
  Vector chi;
};

/// Matrix of f -> P_codomain(phi f) on K^2_domain. Both spaces must share a grid.
Matrix compress(const ModelSpace& domain, const ModelSpace& codomain, const GridFunction& phi);

/// A_phi^{theta,alpha}: K^2_theta -> K^2_alpha. Throws NyquistViolation when
/// phi is not resolved by the grid.
AttoMatrix build_atto(const SpacePair& pair, const GridFunction& phi);
AttoMatrix build_atto(const SpacePair& pair, const SymbolPair& symbol);
/// A_phi^{alpha,theta}: K^2_alpha -> K^2_theta.
AttoMatrix build_atto_reverse(const SpacePair& pair, const GridFunction& phi);

AttoMatrix adjoint(const AttoMatrix& a);

GridFunction symbol_function(const SpacePair& pair, const SymbolPair& symbol);

/// psi = P_alpha(P phi), chi = P_theta(conj(P^- phi)); the constant mode goes
/// to the analytic part.
SymbolPair normalize_symbol(const SpacePair& pair, const GridFunction& phi);

/// ||A_phi|| <= 1e-8 (1 + sup |phi|).
bool is_zero_symbol(const SpacePair& pair, const GridFunction& phi);

/// (psi + c k0^alpha, chi - conj(c) k0^theta).
SymbolPair gauge_shift(const SpacePair& pair, const SymbolPair& symbol, Complex c);

struct GaugeFit {
  Complex c;
  double residual;  // distance of (b - a) from the gauge line
};
/// Least-squares c with b - a = (c k0^alpha, -conj(c) k0^theta).
GaugeFit fit_gauge(const SpacePair& pair, const SymbolPair& a, const SymbolPair& b);
bool is_gauge_trivial(const SpacePair& pair, const SymbolPair& symbol, double tolerance = 1e-8);

struct KernelReport {
  Matrix numerical;        // orthonormal basis, theta coordinates
  InnerFunction common;    // gcd(alpha, phi)
  InnerFunction multiplier;  // alpha / gcd(alpha, phi)
  bool prediction_available = false;
  Matrix predicted;        // orthonormal basis of multiplier * K_{theta / multiplier}
  double angle = 1.0;      // sine of the largest principal angle
  bool dimensions_match = false;
  double membership_residual = 0.0;  // max ||P^-(conj(multiplier) f)|| over numerical f
};

/// Kernel of A_phi^{theta,alpha} for an inner symbol phi.
KernelReport kernel_inner_symbol(const InnerFunction& theta, const InnerFunction& alpha,
                                 const InnerFunction& phi, std::size_t grid_size = 0);

/// Experimental: for theta <= alpha, ker A_{conj(phi)}^{theta,alpha} against K_{gcd(theta,phi)}.
struct ConjugateKernelReport {
  Matrix numerical;
  Matrix predicted;
  double angle = 1.0;
  bool dimensions_match = false;
};
ConjugateKernelReport kernel_conjugate_inner_symbol(const InnerFunction& theta,
                                                    const InnerFunction& alpha,
                                                    const InnerFunction& phi,
                                                    std::size_t grid_size = 0);

struct IdentityCheck {
  std::string name;
  double residual;   // L2 distance between the two sides
  double magnitude;  // L2 norm of the right-hand side
};

/// The eight actions of A_psi, A_conj(chi) and their reverses on k0, k0~,
/// matrix action against closed forms.
std::vector<IdentityCheck> kernel_action_suite(const SpacePair& pair, const SymbolPair& symbol);

}  // namespace atto
