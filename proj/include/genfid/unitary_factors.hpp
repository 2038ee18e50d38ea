#pragma once

// Unitary factors W = U_Q U_P* of generalized fidelities: computation, the
// attainability test MW ~ PD, stratum sampling and Holevo-stratum membership.

#include <optional>

#include "genfid/holevo.hpp"

namespace genfid {

/// M W = S D S^{-1} with D positive diagonal.
struct StratumDecomposition {
  UnitaryM w;
  MatrixC s;
  PDMatrix d_pos;
  double residual = 0.0;
};

struct AttainabilityVerdict {
  bool can_arise = false;
  std::optional<StratumDecomposition> witness;
  Complex det_w;
  double residual = 0.0;        // from the similarity test, +inf when rejected on spectrum
  double max_imag_ratio = 0.0;
  double min_real_ratio = 0.0;
};

/// W = Pol(Q^{1/2}R^{1/2}) Pol(P^{1/2}R^{1/2})*, cross-checked against Pol(A M)*.
UnitaryM unitary_factor_of_base(const PairContext& ctx, const PDMatrix& r,
                                const ToleranceProfile& tol = kDefaultTolerances);

AttainabilityVerdict can_arise(const PairContext& ctx, const UnitaryM& w,
                               const ToleranceProfile& tol = kDefaultTolerances);

/// A = S^{-*} C S^{-1} for C commuting with D; certifies A M W > 0.
PDMatrix sample_a_set(const PairContext& ctx, const StratumDecomposition& witness,
                      const PDMatrix& c, const ToleranceProfile& tol = kDefaultTolerances);

/// Base R_A for A = sample_a_set(...), with its unitary factor checked against W.
PDMatrix stratum_base(const PairContext& ctx, const StratumDecomposition& witness,
                      const PDMatrix& c, const ToleranceProfile& tol = kDefaultTolerances);

/// can_arise(w) and Tr(W X) = Tr(X).
bool is_holevo_stratum_unitary(const PairContext& ctx, const UnitaryM& w,
                               const ToleranceProfile& tol = kDefaultTolerances);

/// Tolerance for comparing two polar factors of a matrix with condition number kappa.
[[nodiscard]] double polar_factor_tolerance(double kappa, Eigen::Index d,
                                            const ToleranceProfile& tol = kDefaultTolerances);

}  // namespace genfid
