#pragma once

// Independent reference implementations in long double. Matrix square roots use the
// Denman-Beavers iteration, polar factors the Newton iteration, the exponential a
// scaled Taylor series; no SVD and no double-precision eigensolver is involved.

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "genfid/linalg.hpp"

namespace oracle {

using LC = std::complex<long double>;
using LMat = Eigen::Matrix<LC, Eigen::Dynamic, Eigen::Dynamic>;

inline LMat widen(const genfid::MatrixC& m) { return m.cast<LC>(); }
inline genfid::MatrixC narrow(const LMat& m) { return m.cast<std::complex<double>>(); }

inline long double rel_gap(const LMat& a, const LMat& b) {
  return (a - b).norm() / std::max<long double>(1.0L, b.norm());
}

inline LMat inv(const LMat& a) { return a.fullPivLu().inverse(); }

/// Principal square root of a matrix with spectrum off the closed negative axis.
inline LMat sqrtm(const LMat& a) {
  const auto n = a.rows();
  LMat y = a;
  LMat z = LMat::Identity(n, n);
  for (int k = 0; k < 200; ++k) {
    // Determinant scaling speeds up the early iterations.
    const long double g =
        std::pow(std::abs(y.determinant() * z.determinant()), -1.0L / (2.0L * n));
    const LMat yi = inv(y);
    const LMat zi = inv(z);
    const LMat y2 = (g * y + zi / g) / 2.0L;
    const LMat z2 = (g * z + yi / g) / 2.0L;
    const long double step = rel_gap(y2, y);
    y = y2;
    z = z2;
    if (step < 1e-17L) break;
  }
  return y;
}

/// p^t for dyadic t = k / 2^m, from products of repeated square roots.
inline LMat dyadic_power(const LMat& p, long double t) {
  const auto n = p.rows();
  long double frac = std::abs(t);
  long double whole = std::floor(frac);
  frac -= whole;
  LMat out = LMat::Identity(n, n);
  for (long k = 0; k < static_cast<long>(whole); ++k) out = out * p;
  LMat root = p;
  for (int bit = 0; bit < 40 && frac > 0.0L; ++bit) {
    root = sqrtm(root);
    frac *= 2.0L;
    if (frac >= 1.0L) {
      out = out * root;
      frac -= 1.0L;
    }
  }
  if (frac > 1e-12L) throw std::invalid_argument("dyadic_power: exponent is not dyadic");
  return t < 0 ? inv(out) : out;
}

/// Unitary polar factor by the Newton iteration X <- (X + X^{-*}) / 2.
inline LMat polar(const LMat& x) {
  LMat u = x;
  for (int k = 0; k < 200; ++k) {
    const LMat next = (u + inv(u).adjoint()) / 2.0L;
    const long double step = rel_gap(next, u);
    u = next;
    if (step < 1e-17L) break;
  }
  return u;
}

/// exp of a Hermitian matrix by scaling and squaring of a Taylor series.
inline LMat expm(const LMat& a) {
  const auto n = a.rows();
  int s = 0;
  long double norm = a.norm();
  while (norm > 0.25L) {
    norm /= 2.0L;
    ++s;
  }
  const LMat b = a / std::ldexp(1.0L, s);
  LMat term = LMat::Identity(n, n);
  LMat sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * b / static_cast<long double>(k);
    sum += term;
  }
  for (int k = 0; k < s; ++k) sum = sum * sum;
  return sum;
}

/// log of a PD matrix by inverse scaling and squaring: repeated square roots then
/// a Gregory series in (X - I)(X + I)^{-1}.
inline LMat logm(const LMat& a) {
  const auto n = a.rows();
  const LMat id = LMat::Identity(n, n);
  LMat x = a;
  int s = 0;
  while ((x - id).norm() > 0.05L && s < 60) {
    x = sqrtm(x);
    ++s;
  }
  const LMat w = (x - id) * inv(x + id);
  const LMat w2 = w * w;
  LMat term = w;
  LMat sum = w;
  for (int k = 1; k < 40; ++k) {
    term = term * w2;
    sum += term / static_cast<long double>(2 * k + 1);
  }
  return std::ldexp(2.0L, s) * sum;
}

inline LC tr(const LMat& a) { return a.trace(); }

/// Tr[(R^{1/2} P R^{1/2})^{1/2} R^{-1} (R^{1/2} Q R^{1/2})^{1/2}].
inline LC generalized(const LMat& p, const LMat& q, const LMat& r) {
  const LMat rh = sqrtm(r);
  return tr(sqrtm(rh * p * rh) * inv(r) * sqrtm(rh * q * rh));
}

/// Tr (P^{1/2} Q P^{1/2})^{1/2}.
inline long double uhlmann(const LMat& p, const LMat& q) {
  const LMat ph = sqrtm(p);
  return tr(sqrtm(ph * q * ph)).real();
}

inline long double holevo(const LMat& p, const LMat& q) { return tr(sqrtm(p) * sqrtm(q)).real(); }

/// Tr[P (P^{-1} Q)^{1/2}]: the geometric mean written with a non-Hermitian root.
inline long double matsumoto(const LMat& p, const LMat& q) {
  return tr(p * sqrtm(inv(p) * q)).real();
}

/// Tr exp((log P + log Q) / 2).
inline long double log_euclidean(const LMat& p, const LMat& q) {
  return tr(expm((logm(p) + logm(q)) / 2.0L)).real();
}

/// Tr[(P^{1/(2z)} Q^{1/(2z)})^z] for z = 2^k, k >= 0, or z = 1/2.
inline long double z_fidelity_dyadic(const LMat& p, const LMat& q, long double z) {
  if (z == 0.5L) return uhlmann(p, q);
  const LMat y = dyadic_power(p, 1.0L / (4.0L * z)) * dyadic_power(q, 1.0L / (2.0L * z)) *
                 dyadic_power(p, 1.0L / (4.0L * z));
  long double zz = z;
  LMat out = LMat::Identity(p.rows(), p.rows());
  LMat base = y;
  while (zz >= 1.0L) {
    if (std::fmod(zz, 2.0L) == 1.0L) out = out * base;
    base = base * base;
    zz = std::floor(zz / 2.0L);
  }
  return tr(out).real();
}

/// Tr[A^{(1-x)/2} (A^{x/2} B A^{x/2})^{1/2}] for dyadic x.
inline long double polar_path(const LMat& a, const LMat& b, long double x) {
  const LMat ax = dyadic_power(a, x / 2.0L);
  return tr(dyadic_power(a, (1.0L - x) / 2.0L) * sqrtm(ax * b * ax)).real();
}

/// Square root of a 2x2 PD matrix in closed form: (X + sqrt(det X) I) / sqrt(tr X + 2 sqrt(det X)).
inline genfid::MatrixC sqrt2x2(const genfid::MatrixC& x) {
  const double s = std::sqrt(x.determinant().real());
  const double t = std::sqrt(x.trace().real() + 2.0 * s);
  return (x + s * genfid::MatrixC::Identity(2, 2)) / t;
}

}  // namespace oracle
