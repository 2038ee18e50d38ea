#include "genfid/fidelities.hpp"

#include <cmath>
#include <sstream>

namespace genfid {

namespace {

void require_pair(const PDMatrix& p, const PDMatrix& q) {
  require_same_dim(p.matrix(), q.matrix(), "fidelity arguments");
}

// Square root of a Hermitian matrix that is positive definite up to rounding of a
// product of PD factors. No positivity threshold beyond strict positivity.
MatrixC herm_sqrt(const MatrixC& x) {
  const MatrixC h = (x + x.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<MatrixC> es(h);
  const VectorR& l = es.eigenvalues();
  if (!(l.minCoeff() > 0.0)) {
    std::ostringstream os;
    os << "intermediate matrix lost positivity (lambda_min = " << l.minCoeff() << ")";
    throw Error(ErrorKind::NotPD, os.str());
  }
  return es.eigenvectors() * l.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

FidelityReport real_report(double value, std::string base) {
  if (!std::isfinite(value) || !(value > 0.0)) {
    std::ostringstream os;
    os << base << " fidelity evaluated to non-positive value " << value;
    throw Error(ErrorKind::ResidualCheck, os.str());
  }
  return {Complex(value, 0.0), 0.0, std::move(base)};
}

FidelityReport checked_named(Complex value, std::string base, const ToleranceProfile& tol) {
  const double im = std::abs(value.imag());
  if (im > tol.imag_tol * std::abs(value)) {
    std::ostringstream os;
    os << base << " fidelity has imaginary residual " << im;
    throw Error(ErrorKind::ResidualCheck, os.str());
  }
  auto r = real_report(value.real(), std::move(base));
  r.imag_residual = im;
  return r;
}

// Tr[A^{(1-x)/2} (A^{x/2} B A^{x/2})^{1/2}], computed in the eigenbasis of A as
// sum_ij a_i^{(1-x)/2} |W_ij|^2 s_j where Y = B~^{1/2} A^{x/2} = U S W*. Every term is
// non-negative, and the column-graded SVD keeps accuracy when A^{x/2} is badly scaled.
double polar_path(const PDMatrix& a, const PDMatrix& b, double x) {
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "x must be finite");
  const VectorR& la = a.eigenvalues();
  const MatrixC& va = a.eigenvectors();
  const MatrixC b_half = va.adjoint() * b.apply([](double l) { return std::sqrt(l); }) * va;
  const VectorR col_scale = la.unaryExpr([x](double l) { return std::pow(l, x / 2.0); });
  const MatrixC y = b_half * col_scale.cast<Complex>().asDiagonal();
  Eigen::JacobiSVD<MatrixC, Eigen::NoQRPreconditioner> svd(y, Eigen::ComputeFullV);
  const VectorR& s = svd.singularValues();
  const MatrixC& w = svd.matrixV();
  const VectorR outer = la.unaryExpr([x](double l) { return std::pow(l, (1.0 - x) / 2.0); });
  double total = 0.0;
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    double col = 0.0;
    for (Eigen::Index i = 0; i < la.size(); ++i) col += outer(i) * std::norm(w(i, j));
    total += col * s(j);
  }
  return total;
}

}  // namespace

BasePolarFactors base_polar_factors(const PDMatrix& p, const PDMatrix& q, const PDMatrix& r,
                                    const ToleranceProfile& tol) {
  require_pair(p, q);
  require_same_dim(p.matrix(), r.matrix(), "base");
  // P^{1/2} R^{1/2} = V (P~^{1/2} L^{1/2}) V* in the eigenbasis of R. The bracket is
  // column-graded, so its Jacobi SVD keeps accuracy for ill-conditioned R.
  const MatrixC& v = r.eigenvectors();
  const VectorR l_half = r.eigenvalues().cwiseSqrt();
  const auto sq = [](double l) { return std::sqrt(l); };
  BasePolarFactors f;
  f.p_half = v.adjoint() * p.apply(sq) * v;
  f.q_half = v.adjoint() * q.apply(sq) * v;
  f.u_p = polar_unitary(f.p_half * l_half.cast<Complex>().asDiagonal(), tol);
  f.u_q = polar_unitary(f.q_half * l_half.cast<Complex>().asDiagonal(), tol);
  f.basis = v;
  return f;
}

FidelityReport generalized_fidelity(const PDMatrix& p, const PDMatrix& q, const PDMatrix& r,
                                    const ToleranceProfile& tol) {
  // (R^{1/2} P R^{1/2})^{1/2} = U_P* P^{1/2} R^{1/2}, and R^{-1} cancels between the two roots.
  const BasePolarFactors f = base_polar_factors(p, q, r, tol);
  const Complex value = (f.q_half * f.u_q * f.u_p.adjoint() * f.p_half).trace();
  return {value, std::abs(value.imag()), "R"};
}

UnitaryFormResult unitary_form_fidelity(const PDMatrix& p, const PDMatrix& q, const PDMatrix& r,
                                        const ToleranceProfile& tol) {
  const BasePolarFactors f = base_polar_factors(p, q, r, tol);
  const MatrixC& v = f.basis;
  UnitaryM u_p(v * f.u_p * v.adjoint(), tol);
  UnitaryM u_q(v * f.u_q * v.adjoint(), tol);
  const auto sq = [](double l) { return std::sqrt(l); };
  const Complex value =
      (q.apply(sq) * u_q.matrix() * u_p.matrix().adjoint() * p.apply(sq)).trace();
  return {{value, std::abs(value.imag()), "R (unitary form)"}, std::move(u_p), std::move(u_q)};
}

FidelityReport uhlmann(const PDMatrix& p, const PDMatrix& q, const ToleranceProfile& tol) {
  require_pair(p, q);
  (void)tol;
  const auto sq = [](double l) { return std::sqrt(l); };
  const MatrixC y = q.apply(sq) * p.apply(sq);
  Eigen::JacobiSVD<MatrixC, Eigen::NoQRPreconditioner> svd(y);
  return real_report(svd.singularValues().sum(), "uhlmann");
}

FidelityReport holevo(const PDMatrix& p, const PDMatrix& q, const ToleranceProfile& tol) {
  require_pair(p, q);
  const auto sq = [](double l) { return std::sqrt(l); };
  return checked_named((p.apply(sq) * q.apply(sq)).trace(), "holevo", tol);
}

FidelityReport matsumoto(const PDMatrix& p, const PDMatrix& q, const ToleranceProfile& tol) {
  require_pair(p, q);
  const MatrixC p_mhalf = p.apply([](double l) { return 1.0 / std::sqrt(l); });
  const MatrixC mean_core = herm_sqrt(p_mhalf * q.matrix() * p_mhalf);
  return checked_named((p.matrix() * mean_core).trace(), "matsumoto", tol);
}

FidelityReport z_fidelity(const PDMatrix& p, const PDMatrix& q, double z,
                          const ToleranceProfile& tol) {
  require_pair(p, q);
  (void)tol;
  if (!std::isfinite(z) || !(z > 0.0)) {
    std::ostringstream os;
    os << "z must be finite and positive (got " << z << ")";
    throw Error(ErrorKind::NonPositiveZ, os.str());
  }
  const double e = 1.0 / (4.0 * z);
  const auto pw = [e](double l) { return std::pow(l, e); };
  const MatrixC y = q.apply(pw) * p.apply(pw);
  Eigen::JacobiSVD<MatrixC, Eigen::NoQRPreconditioner> svd(y);
  const VectorR& s = svd.singularValues();
  double total = 0.0;
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    if (s(j) <= 0.0) continue;
    total += z > 100.0 ? std::exp(2.0 * z * std::log(s(j))) : std::pow(s(j), 2.0 * z);
  }
  std::ostringstream base;
  base << "z=" << z;
  return real_report(total, base.str());
}

FidelityReport log_euclidean(const PDMatrix& p, const PDMatrix& q, const ToleranceProfile& tol) {
  require_pair(p, q);
  const MatrixC sum = pd_log(p, tol).matrix() + pd_log(q, tol).matrix();
  Eigen::SelfAdjointEigenSolver<MatrixC> es((sum + sum.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  double total = 0.0;
  for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j)
    total += std::exp(es.eigenvalues()(j) / 2.0);
  return real_report(total, "log-euclidean");
}

FidelityReport phi_p(const PDMatrix& p, const PDMatrix& q, double x, const ToleranceProfile&) {
  require_pair(p, q);
  return real_report(polar_path(p, q, x), "P^x");
}

FidelityReport phi_q(const PDMatrix& p, const PDMatrix& q, double x, const ToleranceProfile&) {
  require_pair(p, q);
  return real_report(polar_path(q, p, x), "Q^x");
}

FidelityReport f_pol(const PDMatrix& p, const PDMatrix& q, double x,
                     const ToleranceProfile& tol) {
  const double a = phi_p(p, q, x, tol).real();
  const double b = phi_q(p, q, x, tol).real();
  return real_report((a + b) / 2.0, "polar");
}

PolarCurve polar_curve(const PDMatrix& p, const PDMatrix& q, const std::vector<double>& xs,
                       const ToleranceProfile& tol) {
  PolarCurve c;
  c.xs = xs;
  c.phi_p.reserve(xs.size());
  c.phi_q.reserve(xs.size());
  c.f_pol.reserve(xs.size());
  for (double x : xs) {
    const double a = phi_p(p, q, x, tol).real();
    const double b = phi_q(p, q, x, tol).real();
    c.phi_p.push_back(a);
    c.phi_q.push_back(b);
    c.f_pol.push_back((a + b) / 2.0);
  }
  return c;
}

}  // namespace genfid
