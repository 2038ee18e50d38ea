#pragma once

// Fidelity functionals on pairs of positive definite matrices: the base-dependent
// generalized fidelity F_R, its unitary-factor form, the named fidelities
// (Uhlmann, Holevo, Matsumoto), z-fidelities, Log-Euclidean fidelity and the
// one-sided / symmetrized polar families Phi_P, Phi_Q, F^pol_x.

#include <string>
#include <vector>

#include "genfid/linalg.hpp"

namespace genfid {

struct FidelityReport {
  Complex value;
  double imag_residual = 0.0;  // |Im value|
  std::string base_used;

  [[nodiscard]] double real() const noexcept { return value.real(); }
};

struct UnitaryFormResult {
  FidelityReport report;
  UnitaryM u_p;  // Pol(P^{1/2} R^{1/2})
  UnitaryM u_q;  // Pol(Q^{1/2} R^{1/2})
};

/// Polar factors of P^{1/2}R^{1/2} and Q^{1/2}R^{1/2} expressed in the eigenbasis of R.
struct BasePolarFactors {
  MatrixC basis;   // eigenvectors of R
  MatrixC p_half;  // V* P^{1/2} V
  MatrixC q_half;  // V* Q^{1/2} V
  MatrixC u_p;     // V* Pol(P^{1/2} R^{1/2}) V
  MatrixC u_q;     // V* Pol(Q^{1/2} R^{1/2}) V
};

struct PolarCurve {
  std::vector<double> xs;
  std::vector<double> phi_p;
  std::vector<double> phi_q;
  std::vector<double> f_pol;
};

/// Tr[(R^{1/2} P R^{1/2})^{1/2} R^{-1} (R^{1/2} Q R^{1/2})^{1/2}]. Complex in general.
FidelityReport generalized_fidelity(const PDMatrix& p, const PDMatrix& q, const PDMatrix& r,
                                    const ToleranceProfile& tol = kDefaultTolerances);

BasePolarFactors base_polar_factors(const PDMatrix& p, const PDMatrix& q, const PDMatrix& r,
                                    const ToleranceProfile& tol = kDefaultTolerances);

/// Tr[Q^{1/2} U_Q U_P* P^{1/2}] with U_P = Pol(P^{1/2}R^{1/2}), U_Q = Pol(Q^{1/2}R^{1/2}).
UnitaryFormResult unitary_form_fidelity(const PDMatrix& p, const PDMatrix& q, const PDMatrix& r,
                                        const ToleranceProfile& tol = kDefaultTolerances);

/// F_P(P,Q) = Tr|Q^{1/2} P^{1/2}| (trace norm, from singular values).
FidelityReport uhlmann(const PDMatrix& p, const PDMatrix& q,
                       const ToleranceProfile& tol = kDefaultTolerances);

/// F_I(P,Q) = Tr(P^{1/2} Q^{1/2}).
FidelityReport holevo(const PDMatrix& p, const PDMatrix& q,
                      const ToleranceProfile& tol = kDefaultTolerances);

/// F_{P^-1}(P,Q) = Tr[P (P^{-1/2} Q P^{-1/2})^{1/2}].
FidelityReport matsumoto(const PDMatrix& p, const PDMatrix& q,
                         const ToleranceProfile& tol = kDefaultTolerances);

/// Tr[(P^{1/(4z)} Q^{1/(2z)} P^{1/(4z)})^z], evaluated as the sum of sigma^{2z} over the
/// singular values of Q^{1/(4z)} P^{1/(4z)}. For z > 100 the powers are taken in log space.
FidelityReport z_fidelity(const PDMatrix& p, const PDMatrix& q, double z,
                          const ToleranceProfile& tol = kDefaultTolerances);

/// Tr exp((log P + log Q) / 2).
FidelityReport log_euclidean(const PDMatrix& p, const PDMatrix& q,
                             const ToleranceProfile& tol = kDefaultTolerances);

/// Phi_P(x) = F_{P^x}(P,Q) = Tr[P^{(1-x)/2} (P^{x/2} Q P^{x/2})^{1/2}].
FidelityReport phi_p(const PDMatrix& p, const PDMatrix& q, double x,
                     const ToleranceProfile& tol = kDefaultTolerances);

/// Phi_Q(x) = F_{Q^x}(P,Q) = Tr[Q^{(1-x)/2} (Q^{x/2} P Q^{x/2})^{1/2}].
FidelityReport phi_q(const PDMatrix& p, const PDMatrix& q, double x,
                     const ToleranceProfile& tol = kDefaultTolerances);

/// (Phi_P(x) + Phi_Q(x)) / 2.
FidelityReport f_pol(const PDMatrix& p, const PDMatrix& q, double x,
                     const ToleranceProfile& tol = kDefaultTolerances);

PolarCurve polar_curve(const PDMatrix& p, const PDMatrix& q, const std::vector<double>& xs,
                       const ToleranceProfile& tol = kDefaultTolerances);

}  // namespace genfid
