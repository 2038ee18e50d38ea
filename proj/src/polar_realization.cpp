#include "genfid/polar_realization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace genfid {

std::string_view to_string(PolarPath path) {
  switch (path) {
    case PolarPath::P_path: return "P";
    case PolarPath::Q_path: return "Q";
    case PolarPath::symmetrized: return "symmetrized";
  }
  return "?";
}

double MonotonicityScan::worst() const {
  return std::max({phi_p.left, phi_p.right, phi_q.left, phi_q.right, f_pol.left, f_pol.right});
}

namespace {

PathViolation violations(const std::vector<double>& grid, const std::vector<double>& f) {
  constexpr double kNone = -std::numeric_limits<double>::infinity();
  PathViolation v{kNone, kNone, f.front(), grid.front()};
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k] > v.grid_max) {
      v.grid_max = f[k];
      v.argmax = grid[k];
    }
  }
  for (std::size_t k = 0; k + 1 < f.size(); ++k) {
    const double lo = grid[k];
    const double hi = grid[k + 1];
    if (hi <= 1.0) v.left = std::max(v.left, f[k] - f[k + 1]);
    if (lo >= 1.0) v.right = std::max(v.right, f[k + 1] - f[k]);
  }
  v.left = std::max(v.left, 0.0);
  v.right = std::max(v.right, 0.0);
  return v;
}

std::function<double(double)> path_function(const PDMatrix& p, const PDMatrix& q,
                                             PolarPath path, const ToleranceProfile& tol) {
  switch (path) {
    case PolarPath::P_path:
      return [&p, &q, &tol](double x) { return phi_p(p, q, x, tol).real(); };
    case PolarPath::Q_path:
      return [&p, &q, &tol](double x) { return phi_q(p, q, x, tol).real(); };
    case PolarPath::symmetrized:
      return [&p, &q, &tol](double x) { return f_pol(p, q, x, tol).real(); };
  }
  throw Error(ErrorKind::InvalidArgument, "unknown path");
}

}  // namespace

MonotonicityScan scan_monotonicity(const PDMatrix& p, const PDMatrix& q,
                                   const std::vector<double>& grid,
                                   const ToleranceProfile& tol) {
  if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "empty grid");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!std::isfinite(grid[k])) throw Error(ErrorKind::InvalidArgument, "non-finite grid point");
    if (k > 0 && !(grid[k] > grid[k - 1])) {
      std::ostringstream os;
      os << "grid not strictly ascending at index " << k;
      throw Error(ErrorKind::UnsortedGrid, os.str());
    }
  }
  const PolarCurve c = polar_curve(p, q, grid, tol);
  return {grid, violations(grid, c.phi_p), violations(grid, c.phi_q), violations(grid, c.f_pol)};
}

RealizationResult realize_on_path(const PDMatrix& p, const PDMatrix& q, double target,
                                  PolarPath path, const ToleranceProfile& tol) {
  if (!std::isfinite(target)) throw Error(ErrorKind::InvalidArgument, "target must be finite");
  const auto f = path_function(p, q, path, tol);
  const double f_lo = f(-1.0);
  const double f_hi = f(1.0);
  const double accept = tol.realize_tol * std::max(1.0, std::abs(target));
  if (target < f_lo - accept || target > f_hi + accept) {
    std::ostringstream os;
    os.precision(15);
    os << "target " << target << " outside [F^M, F^U] = [" << f_lo << ", " << f_hi << "]";
    throw Error(ErrorKind::TargetOutOfInterval, os.str());
  }
  RealizationResult res;
  res.path = path;
  res.target = target;
  const auto finish = [&](double theta, double value, int iters) {
    res.theta = theta;
    res.achieved = value;
    res.residual = std::abs(value - target);
    res.iterations = iters;
    return res;
  };

  // Flat curve: every theta realizes the value, the canonical answer is 0.
  if (f_hi - f_lo <= accept) return finish(0.0, f(0.0), 0);
  if (std::abs(f_hi - target) <= accept) return finish(1.0, f_hi, 0);
  if (std::abs(f_lo - target) <= accept) return finish(-1.0, f_lo, 0);

  const double goal = std::clamp(target, f_lo, f_hi);
  double lo = -1.0;
  double hi = 1.0;
  double best_theta = 0.0;
  double best_value = f_lo;
  double best_res = std::numeric_limits<double>::infinity();
  int it = 0;
  while (it < tol.bisect_max_iter && hi - lo >= tol.bisect_width) {
    ++it;
    const double mid = 0.5 * (lo + hi);
    const double v = f(mid);
    const double r = std::abs(v - target);
    if (r < best_res) {
      best_res = r;
      best_theta = mid;
      best_value = v;
    }
    if (v == goal) break;
    if (v < goal) lo = mid; else hi = mid;
  }
  if (best_res > accept) {
    std::ostringstream os;
    os << "bisection on the " << to_string(path) << " path reached residual " << best_res;
    throw Error(ErrorKind::ResidualCheck, os.str());
  }
  return finish(best_theta, best_value, it);
}

RealizationTriple realize_all_paths(const PDMatrix& p, const PDMatrix& q, double target,
                                    const ToleranceProfile& tol) {
  return {realize_on_path(p, q, target, PolarPath::P_path, tol),
          realize_on_path(p, q, target, PolarPath::Q_path, tol),
          realize_on_path(p, q, target, PolarPath::symmetrized, tol)};
}

RealizationTriple recover_z(const PDMatrix& p, const PDMatrix& q, double z,
                            const ToleranceProfile& tol) {
  if (!(z >= 0.5)) {
    std::ostringstream os;
    os << "z = " << z << " < 1/2 admits no generalized-fidelity realization in general; "
       << "use the counterexample construction";
    throw Error(ErrorKind::ZBelowHalf, os.str());
  }
  return realize_all_paths(p, q, z_fidelity(p, q, z, tol).real(), tol);
}

RealizationTriple recover_log_euclidean(const PDMatrix& p, const PDMatrix& q,
                                        const ToleranceProfile& tol) {
  return realize_all_paths(p, q, log_euclidean(p, q, tol).real(), tol);
}

namespace {

PDMatrix regularize(const VectorC& v, double eps, const ToleranceProfile& tol) {
  const auto d = v.size();
  const MatrixC m = (1.0 - eps) * (v * v.adjoint()) +
                    (eps / static_cast<double>(d)) * MatrixC::Identity(d, d);
  return PDMatrix(m, tol);
}

}  // namespace

CounterexampleWitness build_z_counterexample(Eigen::Index d, double z, double c,
                                             const ToleranceProfile& tol) {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "counterexample needs d >= 2");
  if (!(z > 0.0 && z < 0.5)) throw Error(ErrorKind::InvalidArgument, "z must lie in (0, 1/2)");
  if (!(c > 0.0 && c < 1.0)) throw Error(ErrorKind::InvalidArgument, "c must lie in (0, 1)");
  VectorC psi = VectorC::Zero(d);
  VectorC phi = VectorC::Zero(d);
  psi(0) = 1.0;
  phi(0) = c;
  phi(1) = std::sqrt(1.0 - c * c);

  constexpr double kLimitEps = 1e-6;
  const PDMatrix p_lim = regularize(psi, kLimitEps, tol);
  const PDMatrix q_lim = regularize(phi, kLimitEps, tol);
  const double limit_fz = z_fidelity(p_lim, q_lim, z, tol).real();
  const double limit_fu = uhlmann(p_lim, q_lim, tol).real();

  for (double eps = 0.125; eps >= 1e-8; eps *= 0.5) {
    PDMatrix rho = regularize(psi, eps, tol);
    PDMatrix sigma = regularize(phi, eps, tol);
    const double fz = z_fidelity(rho, sigma, z, tol).real();
    const double fu = uhlmann(rho, sigma, tol).real();
    if (fz > fu + tol.margin_tol) {
      return {z, c, eps, std::move(rho), std::move(sigma), fz, fu, limit_fz, limit_fu};
    }
  }
  std::ostringstream os;
  os << "no epsilon >= 1e-8 separates F_z from F^U for z = " << z << ", c = " << c;
  throw Error(ErrorKind::NoEpsilonFound, os.str());
}

FidelityReport interior_fidelity(const PDMatrix& p, const PDMatrix& q,
                                 const std::vector<double>& weights,
                                 const std::vector<PDMatrix>& bases,
                                 const ToleranceProfile& tol) {
  if (weights.empty() || weights.size() != bases.size()) {
    throw Error(ErrorKind::BadWeights, "need one weight per base and at least one base");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw Error(ErrorKind::BadWeights, "negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "weights sum to " << sum;
    throw Error(ErrorKind::BadWeights, os.str());
  }
  Complex total = 0.0;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    total += weights[i] * generalized_fidelity(p, q, bases[i], tol).value;
  }
  return {total, std::abs(total.imag()), "interior"};
}

}  // namespace genfid
