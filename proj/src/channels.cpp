#include "genfid/channels.hpp"

#include <cmath>
#include <sstream>

namespace genfid {

std::string_view to_string(DPIBranch b) {
  switch (b) {
    case DPIBranch::input_commuting: return "input_commuting";
    case DPIBranch::output_commuting: return "output_commuting";
    case DPIBranch::factored: return "factored";
    case DPIBranch::none: return "none";
  }
  return "?";
}

KrausSet::KrausSet(std::vector<MatrixC> kraus, Unchecked) : kraus_(std::move(kraus)) {
  d_out_ = kraus_.front().rows();
  d_in_ = kraus_.front().cols();
}

KrausSet::KrausSet(std::vector<MatrixC> kraus, const ToleranceProfile& tol)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw Error(ErrorKind::InvalidArgument, "empty Kraus set");
  d_out_ = kraus_.front().rows();
  d_in_ = kraus_.front().cols();
  if (d_in_ < 1 || d_out_ < 1) throw Error(ErrorKind::InvalidArgument, "empty Kraus operator");
  MatrixC sum = MatrixC::Zero(d_in_, d_in_);
  for (std::size_t i = 0; i < kraus_.size(); ++i) {
    const MatrixC& k = kraus_[i];
    if (k.rows() != d_out_ || k.cols() != d_in_) {
      std::ostringstream os;
      os << "Kraus operator " << i << " is " << k.rows() << "x" << k.cols() << ", expected "
         << d_out_ << "x" << d_in_;
      throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    if (!k.allFinite()) throw Error(ErrorKind::InvalidArgument, "non-finite Kraus entry");
    sum += k.adjoint() * k;
  }
  const double dev = (sum - MatrixC::Identity(d_in_, d_in_)).norm();
  if (dev > tol.channel_tol * std::sqrt(static_cast<double>(d_in_))) {
    std::ostringstream os;
    os << "Kraus set is not trace preserving (||sum K*K - I||_F = " << dev << ")";
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
}

KrausSet KrausSet::identity(Eigen::Index d) {
  return KrausSet({MatrixC::Identity(d, d)}, Unchecked{});
}

KrausSet KrausSet::unitary(const UnitaryM& u) { return KrausSet({u.matrix()}, Unchecked{}); }

KrausSet KrausSet::depolarizing(Eigen::Index d) {
  std::vector<MatrixC> ks;
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      MatrixC k = MatrixC::Zero(d, d);
      k(i, j) = s;
      ks.push_back(std::move(k));
    }
  return KrausSet(std::move(ks), Unchecked{});
}

KrausSet KrausSet::pinching(const UnitaryM& u) {
  std::vector<MatrixC> ks;
  for (Eigen::Index j = 0; j < u.dim(); ++j) ks.push_back(u.matrix().col(j) * u.matrix().col(j).adjoint());
  return KrausSet(std::move(ks));
}

KrausSet KrausSet::pinching(Eigen::Index d) { return pinching(UnitaryM::identity(d)); }

KrausSet KrausSet::random(Eigen::Index d_in, Eigen::Index d_out, int n_kraus,
                          std::uint64_t seed) {
  if (n_kraus < 1) throw Error(ErrorKind::InvalidArgument, "need at least one Kraus operator");
  std::vector<MatrixC> gs;
  MatrixC s = MatrixC::Zero(d_in, d_in);
  for (int i = 0; i < n_kraus; ++i) {
    gs.push_back(random_gaussian(d_out, d_in, seed * 1000003ULL + static_cast<std::uint64_t>(i)));
    s += gs.back().adjoint() * gs.back();
  }
  const PDMatrix s_pd((s + s.adjoint()) / 2.0);
  const MatrixC s_mhalf = s_pd.apply([](double l) { return 1.0 / std::sqrt(l); });
  for (auto& g : gs) g = g * s_mhalf;
  return KrausSet(std::move(gs));
}

KrausSet KrausSet::compose(const KrausSet& gamma, const KrausSet& m, const ToleranceProfile& tol) {
  if (gamma.d_in() != m.d_out()) {
    throw Error(ErrorKind::DimensionMismatch, "composed channels have incompatible dimensions");
  }
  std::vector<MatrixC> ks;
  for (const auto& g : gamma.kraus())
    for (const auto& k : m.kraus()) ks.push_back(g * k);
  return KrausSet(std::move(ks), tol);
}

PDMatrix apply_channel(const KrausSet& k, const PDMatrix& p, const ToleranceProfile& tol) {
  if (p.dim() != k.d_in()) {
    std::ostringstream os;
    os << "channel expects " << k.d_in() << "x" << k.d_in() << " input, got " << p.dim();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
  MatrixC out = MatrixC::Zero(k.d_out(), k.d_out());
  for (const auto& ki : k.kraus()) out += ki * p.matrix() * ki.adjoint();
  out = (out + out.adjoint()) / 2.0;
  const double tr_in = p.trace();
  const double tr_out = out.trace().real();
  if (std::abs(tr_out - tr_in) > tol.channel_tol * std::max(1.0, std::abs(tr_in))) {
    throw Error(ErrorKind::ResidualCheck, "channel output trace differs from input trace");
  }
  try {
    return PDMatrix(out, tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotPD) throw;
    throw Error(ErrorKind::OutputNotPD, std::string("channel output is not positive definite: ") +
                                            e.what());
  }
}

namespace {

void require_x(double x) {
  if (!std::isfinite(x) || x < -1.0 || x > 1.0) {
    throw Error(ErrorKind::InvalidArgument, "x must lie in [-1, 1]");
  }
}

DPIVerdict evaluate(const PDMatrix& p, const PDMatrix& q, const PDMatrix& lp,
                    const PDMatrix& lq, double x, DPIBranch branch, bool applies,
                    std::string reason, const ToleranceProfile& tol) {
  DPIVerdict v;
  v.branch = branch;
  v.applies = applies;
  v.reason = std::move(reason);
  v.lhs = f_pol(lp, lq, x, tol).real();
  v.rhs = f_pol(p, q, x, tol).real();
  v.holds = v.lhs >= v.rhs - tol.fid_tol * std::max(1.0, std::abs(v.rhs));
  return v;
}

void hypothesis(bool ok, const char* what, double ratio) {
  if (ok) return;
  std::ostringstream os;
  os << what << " (relative commutator " << ratio << ")";
  throw Error(ErrorKind::HypothesesNotMet, os.str());
}

}  // namespace

DPIVerdict check_dpi_commutative(const KrausSet& k, const PDMatrix& p, const PDMatrix& q,
                                 double x, DPIBranch branch, const ToleranceProfile& tol) {
  require_x(x);
  require_same_dim(p.matrix(), q.matrix(), "inputs");
  const PDMatrix lp = apply_channel(k, p, tol);
  const PDMatrix lq = apply_channel(k, q, tol);
  switch (branch) {
    case DPIBranch::input_commuting:
      hypothesis(commutes(p.matrix(), q.matrix(), tol.comm_tol), "inputs do not commute",
                 commutator_ratio(p.matrix(), q.matrix()));
      return evaluate(p, q, lp, lq, x, branch, true, "[P,Q] = 0", tol);
    case DPIBranch::output_commuting:
      hypothesis(commutes(lp.matrix(), lq.matrix(), tol.comm_tol), "outputs do not commute",
                 commutator_ratio(lp.matrix(), lq.matrix()));
      return evaluate(p, q, lp, lq, x, branch, true, "[L(P),L(Q)] = 0", tol);
    case DPIBranch::factored:
      throw Error(ErrorKind::InvalidArgument, "factored branch needs check_dpi_factored");
    case DPIBranch::none:
      break;
  }
  throw Error(ErrorKind::InvalidArgument, "no branch selected");
}

DPIVerdict check_dpi_factored(const KrausSet& gamma, const KrausSet& m, const PDMatrix& p,
                              const PDMatrix& q, double x, const std::vector<PDMatrix>& probes,
                              const ToleranceProfile& tol) {
  require_x(x);
  require_same_dim(p.matrix(), q.matrix(), "inputs");
  std::vector<PDMatrix> images{apply_channel(m, p, tol), apply_channel(m, q, tol)};
  for (const auto& pr : probes) images.push_back(apply_channel(m, pr, tol));
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      const MatrixC& a = images[i].matrix();
      const MatrixC& b = images[j].matrix();
      hypothesis(commutes(a, b, tol.comm_tol), "inner channel range is not commuting",
                 commutator_ratio(a, b));
    }
  const PDMatrix lp = apply_channel(gamma, images[0], tol);
  const PDMatrix lq = apply_channel(gamma, images[1], tol);
  return evaluate(p, q, lp, lq, x, DPIBranch::factored, true, "L = G o M, M commuting range", tol);
}

DPIVerdict explore_dpi(const KrausSet& k, const PDMatrix& p, const PDMatrix& q, double x,
                       const ToleranceProfile& tol) {
  require_x(x);
  const PDMatrix lp = apply_channel(k, p, tol);
  const PDMatrix lq = apply_channel(k, q, tol);
  if (commutes(p.matrix(), q.matrix(), tol.comm_tol)) {
    return evaluate(p, q, lp, lq, x, DPIBranch::input_commuting, true, "[P,Q] = 0", tol);
  }
  if (commutes(lp.matrix(), lq.matrix(), tol.comm_tol)) {
    return evaluate(p, q, lp, lq, x, DPIBranch::output_commuting, true, "[L(P),L(Q)] = 0", tol);
  }
  return evaluate(p, q, lp, lq, x, DPIBranch::none, false, "no commutative interface", tol);
}

}  // namespace genfid
