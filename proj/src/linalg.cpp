#include "genfid/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace genfid {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NotPD: return "NotPD";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonPositiveZ: return "NonPositiveZ";
    case ErrorKind::ZBelowHalf: return "ZBelowHalf";
    case ErrorKind::UnsortedGrid: return "UnsortedGrid";
    case ErrorKind::TargetOutOfInterval: return "TargetOutOfInterval";
    case ErrorKind::NoEpsilonFound: return "NoEpsilonFound";
    case ErrorKind::BadWeights: return "BadWeights";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::WrongContext: return "WrongContext";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::OutputNotPD: return "OutputNotPD";
    case ErrorKind::HypothesesNotMet: return "HypothesesNotMet";
    case ErrorKind::ResidualCheck: return "ResidualCheck";
  }
  return "Unknown";
}

bool ToleranceProfile::fid_close(double a, double b) const {
  return std::abs(a - b) <= fid_tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

void require_square_finite(const MatrixC& x, const char* what) {
  if (x.rows() == 0 || x.rows() != x.cols()) {
    std::ostringstream os;
    os << what << " must be square and non-empty (got " << x.rows() << "x" << x.cols() << ")";
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
  if (!x.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " has non-finite entries");
  }
}

void require_same_dim(const MatrixC& a, const MatrixC& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << what << ": " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x" << b.cols();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
}

// ---------------------------------------------------------------------------
// HermMatrix

HermMatrix::HermMatrix(const MatrixC& x, const ToleranceProfile& tol) {
  require_square_finite(x, "Hermitian matrix");
  const double dev = (x - x.adjoint()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, x.norm());
  if (dev > tol.herm_tol * scale) {
    std::ostringstream os;
    os << "max |x_ij - conj(x_ji)| = " << dev << " exceeds " << tol.herm_tol * scale;
    throw Error(ErrorKind::NonHermitian, os.str());
  }
  m_ = (x + x.adjoint()) / 2.0;
}

Eigendecomposition herm_eig(const HermMatrix& h) {
  Eigen::SelfAdjointEigenSolver<MatrixC> es(h.matrix());
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::ResidualCheck, "Hermitian eigensolver did not converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

// ---------------------------------------------------------------------------
// PDMatrix

namespace {

void check_positive(const VectorR& values, const ToleranceProfile& tol) {
  if (!values.allFinite()) throw Error(ErrorKind::NotPD, "non-finite eigenvalue");
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  if (!(hi > 0.0) || !(lo > tol.pd_tol * hi)) {
    std::ostringstream os;
    os << "eigenvalue range [" << lo << ", " << hi << "] violates lambda_min > " << tol.pd_tol
       << " * lambda_max";
    throw Error(ErrorKind::NotPD, os.str());
  }
}

}  // namespace

PDMatrix::PDMatrix(const MatrixC& x, const ToleranceProfile& tol) {
  init(HermMatrix(x, tol).matrix(), tol);
}

PDMatrix::PDMatrix(const HermMatrix& h, const ToleranceProfile& tol) { init(h.matrix(), tol); }

void PDMatrix::init(const MatrixC& hermitian, const ToleranceProfile& tol) {
  auto eig = std::make_shared<Eigendecomposition>(herm_eig(HermMatrix(hermitian, tol)));
  check_positive(eig->values, tol);
  m_ = hermitian;
  eig_ = std::move(eig);
}

PDMatrix PDMatrix::from_eig(const VectorR& values, const MatrixC& vectors,
                            const ToleranceProfile& tol) {
  if (values.size() != vectors.rows() || vectors.rows() != vectors.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "eigenvalue/eigenvector sizes disagree");
  }
  check_positive(values, tol);
  const auto n = values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return values(a) < values(b); });
  auto eig = std::make_shared<Eigendecomposition>();
  eig->values.resize(n);
  eig->vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    eig->values(k) = values(order[static_cast<std::size_t>(k)]);
    eig->vectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
  }
  MatrixC m = eig->vectors * eig->values.asDiagonal() * eig->vectors.adjoint();
  PDMatrix out;
  out.m_ = (m + m.adjoint()) / 2.0;
  out.eig_ = std::move(eig);
  return out;
}

PDMatrix PDMatrix::identity(Eigen::Index d) {
  return from_eig(VectorR::Ones(d), MatrixC::Identity(d, d));
}

const VectorR& PDMatrix::eigenvalues() const noexcept { return eig_->values; }
const MatrixC& PDMatrix::eigenvectors() const noexcept { return eig_->vectors; }

double PDMatrix::condition() const noexcept {
  return eig_->values.maxCoeff() / eig_->values.minCoeff();
}

// ---------------------------------------------------------------------------
// UnitaryM

UnitaryM::UnitaryM(const MatrixC& u, const ToleranceProfile& tol) {
  require_square_finite(u, "unitary matrix");
  const auto d = u.rows();
  const double dev = (u.adjoint() * u - MatrixC::Identity(d, d)).norm();
  if (dev > tol.unitary_tol * std::sqrt(static_cast<double>(d))) {
    std::ostringstream os;
    os << "||u*u - I||_F = " << dev;
    throw Error(ErrorKind::NotUnitary, os.str());
  }
  m_ = u;
}

UnitaryM UnitaryM::identity(Eigen::Index d) { return {MatrixC::Identity(d, d), Unchecked{}}; }

UnitaryM UnitaryM::adjoint() const { return {m_.adjoint(), Unchecked{}}; }

// ---------------------------------------------------------------------------
// Functional calculus

PDMatrix pd_power(const PDMatrix& p, double t, const ToleranceProfile& tol) {
  if (!std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "exponent must be finite");
  const VectorR v = p.eigenvalues().unaryExpr([t](double l) { return std::pow(l, t); });
  return PDMatrix::from_eig(v, p.eigenvectors(), tol);
}

PDMatrix pd_sqrt(const PDMatrix& p, const ToleranceProfile& tol) {
  const VectorR v = p.eigenvalues().cwiseSqrt();
  return PDMatrix::from_eig(v, p.eigenvectors(), tol);
}

PDMatrix pd_inverse(const PDMatrix& p, const ToleranceProfile& tol) {
  const VectorR v = p.eigenvalues().cwiseInverse();
  return PDMatrix::from_eig(v, p.eigenvectors(), tol);
}

HermMatrix pd_log(const PDMatrix& p, const ToleranceProfile& tol) {
  return HermMatrix(p.apply([](double l) { return std::log(l); }), tol);
}

PDMatrix pd_exp(const HermMatrix& h, const ToleranceProfile& tol) {
  const auto eig = herm_eig(h);
  const VectorR v = eig.values.unaryExpr([](double l) { return std::exp(l); });
  return PDMatrix::from_eig(v, eig.vectors, tol);
}

// ---------------------------------------------------------------------------
// Polar decomposition

namespace {

using Svd = Eigen::JacobiSVD<MatrixC, Eigen::NoQRPreconditioner>;

Svd checked_svd(const MatrixC& x, const ToleranceProfile& tol) {
  require_square_finite(x, "polar input");
  Svd svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (!(smax > 0.0) || !(smin > tol.inv_tol * smax)) {
    std::ostringstream os;
    os << "sigma_min / sigma_max = " << (smax > 0.0 ? smin / smax : 0.0);
    throw Error(ErrorKind::Singular, os.str());
  }
  return svd;
}

}  // namespace

PolarPair polar_decompose(const MatrixC& x, const ToleranceProfile& tol) {
  const auto svd = checked_svd(x, tol);
  const MatrixC& wl = svd.matrixU();
  const MatrixC& wr = svd.matrixV();
  UnitaryM u(wl * wr.adjoint(), tol);
  PDMatrix p = PDMatrix::from_eig(svd.singularValues(), wr, tol);
  return {std::move(u), std::move(p)};
}

MatrixC polar_unitary(const MatrixC& x, const ToleranceProfile& tol) {
  const auto svd = checked_svd(x, tol);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// ---------------------------------------------------------------------------
// Similarity to the positive definite cone

namespace {

bool is_diagonal(const MatrixC& x) {
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      if (i != j && x(i, j) != Complex(0.0)) return false;
  return true;
}

}  // namespace

SimilarityWitness similar_to_pd(const MatrixC& x, const ToleranceProfile& tol) {
  (void)checked_svd(x, tol);
  const auto d = x.rows();
  const double xnorm = x.norm();
  SimilarityWitness w;

  // Hermitian input: the spectral theorem gives a unitary witness directly.
  if ((x - x.adjoint()).cwiseAbs().maxCoeff() <= tol.herm_tol * std::max(1.0, xnorm)) {
    const HermMatrix h(x, tol);
    MatrixC s;
    VectorR lambda;
    if (is_diagonal(h.matrix())) {
      s = MatrixC::Identity(d, d);
      lambda = h.matrix().diagonal().real();
    } else {
      auto eig = herm_eig(h);
      s = std::move(eig.vectors);
      lambda = std::move(eig.values);
    }
    const double rho = lambda.cwiseAbs().maxCoeff();
    w.max_imag_ratio = 0.0;
    w.min_real_ratio = lambda.minCoeff() / rho;
    if (w.min_real_ratio <= tol.spec_tol) {
      w.residual = std::numeric_limits<double>::infinity();
      return w;
    }
    w.residual = (s * lambda.cast<Complex>().asDiagonal() * s.adjoint() - x).norm() / xnorm;
    w.is_similar = w.residual <= tol.sim_tol;
    if (w.is_similar) {
      w.s = std::move(s);
      w.dpos = PDMatrix::from_eig(lambda, MatrixC::Identity(d, d), tol);
    }
    return w;
  }

  Eigen::ComplexEigenSolver<MatrixC> es(x, true);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::ResidualCheck, "general eigensolver did not converge");
  }
  const VectorC& lambda = es.eigenvalues();
  const double rho = lambda.cwiseAbs().maxCoeff();
  w.max_imag_ratio = lambda.imag().cwiseAbs().maxCoeff() / rho;
  w.min_real_ratio = lambda.real().minCoeff() / rho;
  w.residual = std::numeric_limits<double>::infinity();
  if (w.max_imag_ratio > tol.spec_tol || w.min_real_ratio <= tol.spec_tol) return w;

  MatrixC s = es.eigenvectors();
  for (Eigen::Index j = 0; j < d; ++j) s.col(j).normalize();
  Eigen::FullPivLU<MatrixC> lu(s);
  if (!lu.isInvertible()) return w;
  const VectorR dpos = lambda.real();
  const MatrixC recon = s * dpos.cast<Complex>().asDiagonal() * lu.inverse();
  w.residual = (recon - x).norm() / xnorm;
  if (!std::isfinite(w.residual)) w.residual = std::numeric_limits<double>::infinity();
  w.is_similar = w.residual <= tol.sim_tol;
  if (w.is_similar) {
    w.s = std::move(s);
    w.dpos = PDMatrix::from_eig(dpos, MatrixC::Identity(d, d), tol);
  }
  return w;
}

// ---------------------------------------------------------------------------
// Seeded ensembles

MatrixC random_gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01(0.0, std::sqrt(0.5));
  MatrixC g(rows, cols);
  // Column-major fill order is part of the determinism contract.
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = n01(rng);
      const double im = n01(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

PDMatrix random_pd(Eigen::Index d, std::uint64_t seed, double cond_cap) {
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
  if (!(cond_cap >= 1.0)) throw Error(ErrorKind::InvalidArgument, "cond_cap must be >= 1");
  // Distinct stream from random_unitary for the same seed.
  const MatrixC g = random_gaussian(d, d, seed * 2 + 1);
  const auto eig = herm_eig(HermMatrix(g * g.adjoint()));
  VectorR v = eig.values;
  const double lo = v.minCoeff();
  const double hi = v.maxCoeff();
  // Slightly below the cap so rounding in the reconstruction cannot exceed it.
  const double cap = 1.0 + (cond_cap - 1.0) * (1.0 - 1e-9);
  if (cap <= 1.0 + 1e-12) {
    v.setOnes();
  } else if (hi > cap * lo) {
    const double eps = (hi - cap * lo) / (cap - 1.0);
    v.array() += eps;
  }
  v /= v.sum();
  return PDMatrix::from_eig(v, eig.vectors);
}

UnitaryM random_unitary(Eigen::Index d, std::uint64_t seed) {
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
  return UnitaryM(polar_unitary(random_gaussian(d, d, seed * 2)));
}

// ---------------------------------------------------------------------------
// Predicates

bool is_positive_definite(const MatrixC& x, double rel_herm_tol) {
  if (x.rows() != x.cols() || !x.allFinite()) return false;
  const double n = x.norm();
  if ((x - x.adjoint()).norm() > rel_herm_tol * n) return false;
  const MatrixC h = (x + x.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<MatrixC> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > 0.0;
}

double commutator_ratio(const MatrixC& a, const MatrixC& b) {
  const double denom = a.norm() * b.norm();
  if (denom == 0.0) return 0.0;
  return (a * b - b * a).norm() / denom;
}

bool commutes(const MatrixC& a, const MatrixC& b, double tol) {
  return commutator_ratio(a, b) <= tol;
}

}  // namespace genfid
