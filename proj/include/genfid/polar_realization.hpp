#pragma once

// Monotonicity scans of the polar families, bisection realization of values in
// [F^M, F^U] along the polar paths, pointwise recovery of F_z (z >= 1/2) and F^LE,
// and the z < 1/2 counterexample.

#include <array>
#include <string_view>
#include <vector>

#include "genfid/fidelities.hpp"

namespace genfid {

enum class PolarPath { P_path, Q_path, symmetrized };

std::string_view to_string(PolarPath path);

struct RealizationResult {
  double theta = 0.0;  // in [-1, 1]
  PolarPath path = PolarPath::P_path;
  double achieved = 0.0;
  double target = 0.0;
  double residual = 0.0;  // |achieved - target|
  int iterations = 0;
};

using RealizationTriple = std::array<RealizationResult, 3>;  // P_path, Q_path, symmetrized

struct PathViolation {
  double left = 0.0;   // max wrong-direction difference over adjacent pairs with x <= 1
  double right = 0.0;  // same for pairs with x >= 1
  double grid_max = 0.0;
  double argmax = 0.0;
};

struct MonotonicityScan {
  std::vector<double> grid;
  PathViolation phi_p;
  PathViolation phi_q;
  PathViolation f_pol;

  [[nodiscard]] double worst() const;
};

struct CounterexampleWitness {
  double z = 0.0;
  double c = 0.0;
  double epsilon = 0.0;
  PDMatrix rho;
  PDMatrix sigma;
  double fz = 0.0;
  double fu = 0.0;
  double limit_fz = 0.0;  // F_z at epsilon = 1e-6
  double limit_fu = 0.0;  // F^U at epsilon = 1e-6
};

/// Adjacent-pair violations of the two-range monotonicity for Phi_P, Phi_Q and F^pol.
/// Pairs straddling x = 1 belong to neither range and are skipped.
MonotonicityScan scan_monotonicity(const PDMatrix& p, const PDMatrix& q,
                                   const std::vector<double>& grid,
                                   const ToleranceProfile& tol = kDefaultTolerances);

/// Bisection on [-1, 1] for theta with path(theta) = target, run to bisect_width.
/// Constant curves return theta = 0; endpoint targets return the endpoint.
RealizationResult realize_on_path(const PDMatrix& p, const PDMatrix& q, double target,
                                  PolarPath path,
                                  const ToleranceProfile& tol = kDefaultTolerances);

RealizationTriple realize_all_paths(const PDMatrix& p, const PDMatrix& q, double target,
                                    const ToleranceProfile& tol = kDefaultTolerances);

/// Realizes F_z(P,Q) on all three paths. Throws ZBelowHalf for z < 1/2.
RealizationTriple recover_z(const PDMatrix& p, const PDMatrix& q, double z,
                            const ToleranceProfile& tol = kDefaultTolerances);

RealizationTriple recover_log_euclidean(const PDMatrix& p, const PDMatrix& q,
                                        const ToleranceProfile& tol = kDefaultTolerances);

/// Regularized rank-one pair with F_z > F^U + margin_tol, epsilon halved from 1/8.
CounterexampleWitness build_z_counterexample(Eigen::Index d, double z, double c,
                                             const ToleranceProfile& tol = kDefaultTolerances);

/// sum_i w_i F_{R_i}(P,Q).
FidelityReport interior_fidelity(const PDMatrix& p, const PDMatrix& q,
                                 const std::vector<double>& weights,
                                 const std::vector<PDMatrix>& bases,
                                 const ToleranceProfile& tol = kDefaultTolerances);

}  // namespace genfid
