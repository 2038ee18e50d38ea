#include "genfid/holevo.hpp"

#include <cmath>
#include <sstream>

namespace genfid {

namespace {

MatrixC hermitize(const MatrixC& x) { return (x + x.adjoint()) / 2.0; }

bool complex_close(Complex a, Complex b, double scale, const ToleranceProfile& tol) {
  return std::abs(a - b) <= tol.fid_tol * std::max(1.0, scale);
}

}  // namespace

PairContext pair_context(const PDMatrix& p, const PDMatrix& q, const ToleranceProfile& tol) {
  require_same_dim(p.matrix(), q.matrix(), "pair");
  const auto pw = [&p](double t) { return p.apply([t](double l) { return std::pow(l, t); }); };
  const MatrixC p_half = pw(0.5);
  const MatrixC p_mhalf = pw(-0.5);
  const MatrixC p_quarter = pw(0.25);
  const MatrixC p_mquarter = pw(-0.25);
  const MatrixC q_half = q.apply([](double l) { return std::sqrt(l); });
  PDMatrix h(hermitize(p_mquarter * q_half * p_mquarter), tol);
  const MatrixC x = p_half * q_half;
  const Complex tr = x.trace();
  if (std::abs(tr.imag()) > tol.imag_tol * std::abs(tr)) {
    throw Error(ErrorKind::ResidualCheck, "Tr(P^{1/2} Q^{1/2}) is not real");
  }
  return {p, q, std::move(h), p_mhalf * q_half, x, tr.real(),
          p_half, p_mhalf, p_quarter, p_mquarter, q_half};
}

PDMatrix holevo_base_from_commutant(const PairContext& ctx, const PDMatrix& b,
                                    const ToleranceProfile& tol) {
  require_same_dim(ctx.p.matrix(), b.matrix(), "commutant element");
  if (!commutes(b.matrix(), ctx.h.matrix(), tol.comm_tol)) {
    std::ostringstream os;
    os << "B does not commute with H (relative commutator "
       << commutator_ratio(b.matrix(), ctx.h.matrix()) << ")";
    throw Error(ErrorKind::NotCommuting, os.str());
  }
  const MatrixC& b_m = b.matrix();
  return PDMatrix(hermitize(ctx.p_mquarter * b_m * ctx.p_half * b_m * ctx.p_mquarter), tol);
}

PDMatrix power_family_base(const PairContext& ctx, double t, const ToleranceProfile& tol) {
  if (!std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "t must be finite");
  return holevo_base_from_commutant(ctx, pd_power(ctx.h, t, tol), tol);
}

PDMatrix a_of_r(const PairContext& ctx, const PDMatrix& r, const ToleranceProfile& tol) {
  require_same_dim(ctx.p.matrix(), r.matrix(), "base");
  const PDMatrix inner(hermitize(ctx.p_half * r.matrix() * ctx.p_half), tol);
  return pd_sqrt(inner, tol);
}

PDMatrix r_of_a(const PairContext& ctx, const PDMatrix& a, const ToleranceProfile& tol) {
  require_same_dim(ctx.p.matrix(), a.matrix(), "A");
  const MatrixC& am = a.matrix();
  return PDMatrix(hermitize(ctx.p_mhalf * am * am * ctx.p_mhalf), tol);
}

HolevoVerdict is_holevo_base(const PairContext& ctx, const PDMatrix& r,
                             const ToleranceProfile& tol) {
  const PDMatrix a = a_of_r(ctx, r, tol);
  const MatrixC am = a.matrix() * ctx.m;
  UnitaryM w(polar_unitary(am, tol).adjoint(), tol);
  const Complex fidelity = (ctx.q_half * w.matrix() * ctx.p_half).trace();
  const Complex direct = generalized_fidelity(ctx.p, ctx.q, r, tol).value;

  HolevoVerdict v;
  v.fidelity = fidelity;
  v.cross_check = std::abs(fidelity - direct);
  if (!complex_close(fidelity, direct, std::abs(direct), tol)) {
    std::ostringstream os;
    os.precision(17);
    os << "trace criterion " << fidelity << " disagrees with direct formula " << direct;
    throw Error(ErrorKind::ResidualCheck, os.str());
  }
  const Complex tr_x = ctx.x.trace();
  v.trace_residual = std::abs((w.matrix() * ctx.x).trace() - tr_x);
  v.is_holevo = complex_close(fidelity, Complex(ctx.fH, 0.0), ctx.fH, tol);
  // AM > 0 is read with the similarity tolerance on Hermiticity: its rounding grows
  // with cond(A) cond(M).
  v.polar_slice = v.is_holevo && is_positive_definite(am, tol.sim_tol);
  v.w = std::move(w);
  return v;
}

double diagonal_family_root() { return 13.0 + 15.0 * std::sqrt(3.0) / 2.0; }

double solve_diagonal_family(const PairContext& ctx, double r, const ToleranceProfile& tol) {
  if (!std::isfinite(r) || !(r > 0.0)) throw Error(ErrorKind::InvalidArgument, "r must be > 0");
  MatrixC p_ref(2, 2);
  p_ref << 4.0, 0.0, 0.0, 1.0;
  MatrixC q_ref(2, 2);
  q_ref << 2.0, 1.0, 1.0, 2.0;
  if (ctx.p.dim() != 2 || (ctx.p.matrix() - p_ref).norm() > tol.recon_tol * p_ref.norm() ||
      (ctx.q.matrix() - q_ref).norm() > tol.recon_tol * q_ref.norm()) {
    throw Error(ErrorKind::WrongContext,
                "diagonal family closed form needs P = diag(4,1), Q = [[2,1],[1,2]]");
  }
  const double s3 = std::sqrt(3.0);
  const double sr = std::sqrt(r);
  const double closed = ((4.0 + s3) * sr + 2.0 * (1.0 + s3)) /
                        std::sqrt(2.0 * r + 2.0 + 2.0 * std::sqrt(3.0 * r));
  MatrixC rm = MatrixC::Zero(2, 2);
  rm(0, 0) = r;
  rm(1, 1) = 1.0;
  const Complex direct = generalized_fidelity(ctx.p, ctx.q, PDMatrix(rm, tol), tol).value;
  if (!complex_close(direct, Complex(closed, 0.0), closed, tol)) {
    std::ostringstream os;
    os.precision(17);
    os << "closed form " << closed << " disagrees with direct formula " << direct;
    throw Error(ErrorKind::ResidualCheck, os.str());
  }
  return closed;
}

bool is_scalar_base(const PDMatrix& r, const ToleranceProfile& tol) {
  const auto d = r.dim();
  const MatrixC dev = r.matrix() - (r.trace() / static_cast<double>(d)) * MatrixC::Identity(d, d);
  return dev.norm() <= tol.scalar_tol * r.matrix().norm();
}

std::optional<PDMatrix> falsify_universal_base(const PDMatrix& r, int seeds,
                                               std::uint64_t base_seed,
                                               const ToleranceProfile& tol) {
  if (seeds < 1) throw Error(ErrorKind::InvalidArgument, "seed budget must be positive");
  const auto d = r.dim();
  const PDMatrix id = PDMatrix::identity(d);
  const bool scalar = is_scalar_base(r, tol);
  for (int s = 0; s < seeds; ++s) {
    const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(s);
    if (scalar) {
      // Any pair works for a scalar base; sample both sides.
      const PDMatrix p = random_pd(d, 2 * seed, 1e3);
      const PDMatrix q = random_pd(d, 2 * seed + 1, 1e3);
      const Complex f = generalized_fidelity(p, q, r, tol).value;
      const double fh = holevo(p, q, tol).real();
      if (!complex_close(f, Complex(fh, 0.0), fh, tol)) {
        std::ostringstream os;
        os.precision(17);
        os << "scalar base gave F_R = " << f << " against F^H = " << fh;
        throw Error(ErrorKind::ResidualCheck, os.str());
      }
      continue;
    }
    PDMatrix q = random_pd(d, seed, 1e3);
    const Complex f = generalized_fidelity(id, q, r, tol).value;
    const double fh = holevo(id, q, tol).real();
    if (!complex_close(f, Complex(fh, 0.0), fh, tol)) return q;
  }
  if (scalar) return std::nullopt;
  std::ostringstream os;
  os << "no witness Q in " << seeds << " seeds for a non-scalar base";
  throw Error(ErrorKind::SearchExhausted, os.str());
}

}  // namespace genfid
