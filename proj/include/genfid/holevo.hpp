#pragma once

// Bases R with F_R(P,Q) = F^H(P,Q) for a fixed pair: the commutant generator,
// the A <-> R bijection, the trace criterion and the universal base search.

#include <cstdint>
#include <optional>

#include "genfid/fidelities.hpp"

namespace genfid {

/// Precomputed powers of a fixed pair.
struct PairContext {
  PDMatrix p;
  PDMatrix q;
  PDMatrix h;   // P^{-1/4} Q^{1/2} P^{-1/4}
  MatrixC m;    // P^{-1/2} Q^{1/2}
  MatrixC x;    // P^{1/2} Q^{1/2}
  double fH = 0.0;

  MatrixC p_half;
  MatrixC p_mhalf;
  MatrixC p_quarter;
  MatrixC p_mquarter;
  MatrixC q_half;
};

struct HolevoVerdict {
  bool is_holevo = false;
  Complex fidelity;
  bool polar_slice = false;
  UnitaryM w = UnitaryM::identity(1);
  double trace_residual = 0.0;  // |Tr(WX) - Tr(X)|
  double cross_check = 0.0;     // |fidelity - F_R(P,Q)| from the direct formula
};

PairContext pair_context(const PDMatrix& p, const PDMatrix& q,
                         const ToleranceProfile& tol = kDefaultTolerances);

/// R_B = P^{-1/4} B P^{1/2} B P^{-1/4} for B commuting with h.
PDMatrix holevo_base_from_commutant(const PairContext& ctx, const PDMatrix& b,
                                    const ToleranceProfile& tol = kDefaultTolerances);

/// R_B with B = h^t.
PDMatrix power_family_base(const PairContext& ctx, double t,
                           const ToleranceProfile& tol = kDefaultTolerances);

/// A = (P^{1/2} R P^{1/2})^{1/2}.
PDMatrix a_of_r(const PairContext& ctx, const PDMatrix& r,
                const ToleranceProfile& tol = kDefaultTolerances);

/// R = P^{-1/2} A^2 P^{-1/2}.
PDMatrix r_of_a(const PairContext& ctx, const PDMatrix& a,
                const ToleranceProfile& tol = kDefaultTolerances);

/// Trace criterion with W = Pol(A M)*. Throws ResidualCheck if the criterion value and
/// the direct formula disagree.
HolevoVerdict is_holevo_base(const PairContext& ctx, const PDMatrix& r,
                             const ToleranceProfile& tol = kDefaultTolerances);

/// Closed form of F_{diag(r,1)} for P = diag(4,1), Q = [[2,1],[1,2]], checked against
/// the direct formula. Throws WrongContext for any other pair.
double solve_diagonal_family(const PairContext& ctx, double r,
                             const ToleranceProfile& tol = kDefaultTolerances);

/// Root r_* = 13 + 15 sqrt(3) / 2 of the diagonal family, besides r = 1.
double diagonal_family_root();

/// With P = I, searches seeded Q until F_R(I,Q) != F^H(I,Q). Scalar R returns nullopt
/// after checking `seeds` random pairs. Throws SearchExhausted for non-scalar R without
/// a witness.
std::optional<PDMatrix> falsify_universal_base(const PDMatrix& r, int seeds,
                                               std::uint64_t base_seed = 0,
                                               const ToleranceProfile& tol = kDefaultTolerances);

[[nodiscard]] bool is_scalar_base(const PDMatrix& r, const ToleranceProfile& tol = kDefaultTolerances);

}  // namespace genfid
