#pragma once

// Dense complex linear algebra on the positive definite cone: Hermitian
// eigendecomposition, principal matrix functions, invertible polar
// decomposition and the similarity-to-positive-definite test.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>

#include <Eigen/Dense>

#include "genfid/error.hpp"
#include "genfid/tolerances.hpp"

namespace genfid {

using Complex = std::complex<double>;
using MatrixC = Eigen::MatrixXcd;
using VectorC = Eigen::VectorXcd;
using VectorR = Eigen::VectorXd;

class UnitaryM;

/// Square, finite complex matrix check. Throws InvalidArgument otherwise.
void require_square_finite(const MatrixC& x, const char* what);

/// A Hermitian matrix. Construction validates
/// max|x_ij - conj(x_ji)| <= herm_tol * max(1, ||x||_F) and stores the exact
/// Hermitian part (x + x*)/2.
class HermMatrix {
 public:
  explicit HermMatrix(const MatrixC& x, const ToleranceProfile& tol = kDefaultTolerances);

  [[nodiscard]] const MatrixC& matrix() const noexcept { return m_; }
  [[nodiscard]] Eigen::Index dim() const noexcept { return m_.rows(); }

 private:
  MatrixC m_;
};

struct Eigendecomposition;

/// A strictly positive definite matrix: every eigenvalue exceeds
/// pd_tol * lambda_max. The eigendecomposition is computed once at construction
/// (it is needed for the positivity test) and shared between copies.
class PDMatrix {
 public:
  explicit PDMatrix(const MatrixC& x, const ToleranceProfile& tol = kDefaultTolerances);
  explicit PDMatrix(const HermMatrix& h, const ToleranceProfile& tol = kDefaultTolerances);

  /// V diag(values) V* for unitary V; validates positivity like the main constructor.
  static PDMatrix from_eig(const VectorR& values, const MatrixC& vectors,
                           const ToleranceProfile& tol = kDefaultTolerances);

  static PDMatrix identity(Eigen::Index d);

  [[nodiscard]] const MatrixC& matrix() const noexcept { return m_; }
  [[nodiscard]] Eigen::Index dim() const noexcept { return m_.rows(); }
  [[nodiscard]] const VectorR& eigenvalues() const noexcept;
  [[nodiscard]] const MatrixC& eigenvectors() const noexcept;
  [[nodiscard]] double trace() const noexcept { return m_.trace().real(); }
  [[nodiscard]] double condition() const noexcept;

  /// f applied on the spectrum: V f(Lambda) V*.
  template <class F>
  [[nodiscard]] MatrixC apply(F&& f) const {
    const auto& v = eigenvectors();
    return v * eigenvalues().unaryExpr(f).asDiagonal() * v.adjoint();
  }

 private:
  PDMatrix() = default;
  void init(const MatrixC& hermitian, const ToleranceProfile& tol);

  MatrixC m_;
  std::shared_ptr<const Eigendecomposition> eig_;
};

/// A unitary matrix: ||u*u - I||_F <= unitary_tol * sqrt(d).
class UnitaryM {
 public:
  explicit UnitaryM(const MatrixC& u, const ToleranceProfile& tol = kDefaultTolerances);
  static UnitaryM identity(Eigen::Index d);

  [[nodiscard]] const MatrixC& matrix() const noexcept { return m_; }
  [[nodiscard]] Eigen::Index dim() const noexcept { return m_.rows(); }
  [[nodiscard]] UnitaryM adjoint() const;
  [[nodiscard]] Complex det() const { return m_.determinant(); }

 private:
  struct Unchecked {};
  UnitaryM(const MatrixC& u, Unchecked) : m_(u) {}
  MatrixC m_;
};

struct Eigendecomposition {
  VectorR values;   // ascending
  MatrixC vectors;  // columns, unitary
};

/// Pol(X): X = u p with u unitary, p positive definite.
struct PolarPair {
  UnitaryM u;
  PDMatrix p;
};

/// Witness for X = s dpos s^-1 with dpos positive diagonal.
struct SimilarityWitness {
  bool is_similar = false;
  std::optional<MatrixC> s;
  std::optional<PDMatrix> dpos;
  double residual = 0.0;          // ||s dpos s^-1 - X||_F / ||X||_F, or +inf
  double max_imag_ratio = 0.0;    // max |Im lambda| / spectral radius
  double min_real_ratio = 0.0;    // min Re lambda / spectral radius
};

[[nodiscard]] Eigendecomposition herm_eig(const HermMatrix& h);

[[nodiscard]] PDMatrix pd_power(const PDMatrix& p, double t,
                                const ToleranceProfile& tol = kDefaultTolerances);
[[nodiscard]] PDMatrix pd_sqrt(const PDMatrix& p, const ToleranceProfile& tol = kDefaultTolerances);
[[nodiscard]] PDMatrix pd_inverse(const PDMatrix& p,
                                  const ToleranceProfile& tol = kDefaultTolerances);
[[nodiscard]] HermMatrix pd_log(const PDMatrix& p, const ToleranceProfile& tol = kDefaultTolerances);
[[nodiscard]] PDMatrix pd_exp(const HermMatrix& h, const ToleranceProfile& tol = kDefaultTolerances);

/// Polar decomposition through the SVD X = W_L S W_R*: u = W_L W_R*, p = W_R S W_R*.
/// Throws Singular when sigma_min <= inv_tol * sigma_max.
[[nodiscard]] PolarPair polar_decompose(const MatrixC& x,
                                        const ToleranceProfile& tol = kDefaultTolerances);

/// Unitary polar factor only.
[[nodiscard]] MatrixC polar_unitary(const MatrixC& x,
                                    const ToleranceProfile& tol = kDefaultTolerances);

/// Is X diagonalizable with strictly positive real spectrum? Decided from a general
/// eigendecomposition; diagonalizability is certified by the S D S^-1 residual.
[[nodiscard]] SimilarityWitness similar_to_pd(const MatrixC& x,
                                              const ToleranceProfile& tol = kDefaultTolerances);

/// Seeded G G* + eps I, shifted so cond <= cond_cap and normalized to unit trace.
[[nodiscard]] PDMatrix random_pd(Eigen::Index d, std::uint64_t seed, double cond_cap);

/// Unitary polar factor of a seeded complex Gaussian matrix.
[[nodiscard]] UnitaryM random_unitary(Eigen::Index d, std::uint64_t seed);

/// Seeded complex Gaussian matrix with i.i.d. N(0,1/2) + i N(0,1/2) entries.
[[nodiscard]] MatrixC random_gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

/// ||x - x*||_F <= rel * ||x||_F and every eigenvalue of the Hermitian part > 0.
[[nodiscard]] bool is_positive_definite(const MatrixC& x, double rel_herm_tol);

/// ||ab - ba||_F <= tol * ||a||_F ||b||_F.
[[nodiscard]] bool commutes(const MatrixC& a, const MatrixC& b, double tol);
[[nodiscard]] double commutator_ratio(const MatrixC& a, const MatrixC& b);

void require_same_dim(const MatrixC& a, const MatrixC& b, const char* what);

}  // namespace genfid
