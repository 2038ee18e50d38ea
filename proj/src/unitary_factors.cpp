#include "genfid/unitary_factors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace genfid {

namespace {

double condition_number(const MatrixC& x) {
  Eigen::JacobiSVD<MatrixC, Eigen::NoQRPreconditioner> svd(x);
  const VectorR& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

}  // namespace

double polar_factor_tolerance(double kappa, Eigen::Index d, const ToleranceProfile& tol) {
  // The polar factor moves by about kappa times the relative perturbation of its argument.
  const double eps = std::numeric_limits<double>::epsilon();
  return std::max(tol.recon_tol, 1e3 * eps * kappa) * std::sqrt(static_cast<double>(d));
}

UnitaryM unitary_factor_of_base(const PairContext& ctx, const PDMatrix& r,
                                const ToleranceProfile& tol) {
  const auto d = ctx.p.dim();
  require_same_dim(ctx.p.matrix(), r.matrix(), "base");
  const BasePolarFactors f = base_polar_factors(ctx.p, ctx.q, r, tol);
  UnitaryM w(f.basis * f.u_q * f.u_p.adjoint() * f.basis.adjoint(), tol);

  const MatrixC am = a_of_r(ctx, r, tol).matrix() * ctx.m;
  const MatrixC w_alt = polar_unitary(am, tol).adjoint();
  const double gap = (w.matrix() - w_alt).norm();
  if (gap > polar_factor_tolerance(condition_number(am), d, tol)) {
    std::ostringstream os;
    os << "U_Q U_P* and Pol(AM)* differ by " << gap;
    throw Error(ErrorKind::ResidualCheck, os.str());
  }
  return w;
}

AttainabilityVerdict can_arise(const PairContext& ctx, const UnitaryM& w,
                               const ToleranceProfile& tol) {
  require_same_dim(ctx.m, w.matrix(), "unitary");
  const SimilarityWitness sim = similar_to_pd(ctx.m * w.matrix(), tol);
  AttainabilityVerdict v;
  v.det_w = w.det();
  v.can_arise = sim.is_similar;
  v.residual = sim.residual;
  v.max_imag_ratio = sim.max_imag_ratio;
  v.min_real_ratio = sim.min_real_ratio;
  if (sim.is_similar) v.witness = StratumDecomposition{w, *sim.s, *sim.dpos, sim.residual};
  return v;
}

PDMatrix sample_a_set(const PairContext& ctx, const StratumDecomposition& witness,
                      const PDMatrix& c, const ToleranceProfile& tol) {
  const auto d = ctx.p.dim();
  require_same_dim(witness.s, c.matrix(), "commutant element");
  const MatrixC& dm = witness.d_pos.matrix();
  if (!commutes(c.matrix(), dm, tol.comm_tol)) {
    std::ostringstream os;
    os << "C does not commute with D (relative commutator "
       << commutator_ratio(c.matrix(), dm) << ")";
    throw Error(ErrorKind::NotCommuting, os.str());
  }
  // Restrict C to the block commutant of D, blocks being eigenvalue clusters.
  const VectorR dv = dm.diagonal().real();
  const double rho = dv.cwiseAbs().maxCoeff();
  MatrixC cb = c.matrix();
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      if (std::abs(dv(i) - dv(j)) >= tol.spec_tol * rho) cb(i, j) = 0.0;

  Eigen::FullPivLU<MatrixC> lu(witness.s);
  if (!lu.isInvertible()) throw Error(ErrorKind::Singular, "S is not invertible");
  const MatrixC s_inv = lu.inverse();
  MatrixC a = s_inv.adjoint() * cb * s_inv;
  a = (a + a.adjoint()) / 2.0;
  PDMatrix out(a, tol);

  const MatrixC amw = out.matrix() * ctx.m * witness.w.matrix();
  if (!is_positive_definite(amw, tol.sim_tol)) {
    throw Error(ErrorKind::ResidualCheck, "A M W is not positive definite");
  }
  return out;
}

PDMatrix stratum_base(const PairContext& ctx, const StratumDecomposition& witness,
                      const PDMatrix& c, const ToleranceProfile& tol) {
  const PDMatrix a = sample_a_set(ctx, witness, c, tol);
  PDMatrix r = r_of_a(ctx, a, tol);
  const UnitaryM w = unitary_factor_of_base(ctx, r, tol);
  const double gap = (w.matrix() - witness.w.matrix()).norm();
  const double kappa = condition_number(a.matrix() * ctx.m);
  if (gap > polar_factor_tolerance(kappa, ctx.p.dim(), tol)) {
    std::ostringstream os;
    os << "stratum base reproduces W only to " << gap;
    throw Error(ErrorKind::ResidualCheck, os.str());
  }
  return r;
}

bool is_holevo_stratum_unitary(const PairContext& ctx, const UnitaryM& w,
                               const ToleranceProfile& tol) {
  if (!can_arise(ctx, w, tol).can_arise) return false;
  const Complex tr_x = ctx.x.trace();
  const Complex tr_wx = (w.matrix() * ctx.x).trace();
  return std::abs(tr_wx - tr_x) <= tol.fid_tol * std::max(1.0, std::abs(tr_x));
}

}  // namespace genfid
