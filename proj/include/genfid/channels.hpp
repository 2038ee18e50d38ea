#pragma once

// CPTP maps in Kraus form and data-processing checks of F^pol_x under the
// commutative-interface hypotheses.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "genfid/fidelities.hpp"

namespace genfid {

/// Kraus operators K_i (d_out x d_in) with sum K_i* K_i = I within channel_tol.
class KrausSet {
 public:
  KrausSet(std::vector<MatrixC> kraus, const ToleranceProfile& tol = kDefaultTolerances);

  static KrausSet identity(Eigen::Index d);
  static KrausSet unitary(const UnitaryM& u);
  /// p -> Tr(p) I/d.
  static KrausSet depolarizing(Eigen::Index d);
  /// Projection onto the diagonal in the orthonormal basis given by the columns of u.
  static KrausSet pinching(const UnitaryM& u);
  static KrausSet pinching(Eigen::Index d);
  /// K_i = G_i S^{-1/2}, S = sum G_i* G_i, G_i complex Gaussian.
  static KrausSet random(Eigen::Index d_in, Eigen::Index d_out, int n_kraus, std::uint64_t seed);
  /// gamma after m.
  static KrausSet compose(const KrausSet& gamma, const KrausSet& m,
                          const ToleranceProfile& tol = kDefaultTolerances);

  [[nodiscard]] Eigen::Index d_in() const noexcept { return d_in_; }
  [[nodiscard]] Eigen::Index d_out() const noexcept { return d_out_; }
  [[nodiscard]] const std::vector<MatrixC>& kraus() const noexcept { return kraus_; }

 private:
  struct Unchecked {};
  KrausSet(std::vector<MatrixC> kraus, Unchecked);
  std::vector<MatrixC> kraus_;
  Eigen::Index d_in_ = 0;
  Eigen::Index d_out_ = 0;
};

enum class DPIBranch { input_commuting, output_commuting, factored, none };

std::string_view to_string(DPIBranch b);

struct DPIVerdict {
  bool applies = false;
  double lhs = 0.0;  // F^pol_x of the outputs
  double rhs = 0.0;  // F^pol_x of the inputs
  bool holds = false;
  DPIBranch branch = DPIBranch::none;
  std::string reason;
};

/// Sum K_i p K_i*. Throws OutputNotPD if the image leaves the PD cone.
PDMatrix apply_channel(const KrausSet& k, const PDMatrix& p,
                       const ToleranceProfile& tol = kDefaultTolerances);

/// Checks F^pol_x(k(p), k(q)) >= F^pol_x(p, q) under branch input_commuting or
/// output_commuting. Throws HypothesesNotMet when the branch hypothesis fails.
DPIVerdict check_dpi_commutative(const KrausSet& k, const PDMatrix& p, const PDMatrix& q,
                                 double x, DPIBranch branch,
                                 const ToleranceProfile& tol = kDefaultTolerances);

/// Same for the channel gamma o m, where m(p), m(q) and m(probe_i) must all commute.
DPIVerdict check_dpi_factored(const KrausSet& gamma, const KrausSet& m, const PDMatrix& p,
                              const PDMatrix& q, double x, const std::vector<PDMatrix>& probes,
                              const ToleranceProfile& tol = kDefaultTolerances);

/// Evaluates both sides with no hypothesis; applies reports which branch, if any, covers
/// the instance. Nothing is asserted.
DPIVerdict explore_dpi(const KrausSet& k, const PDMatrix& p, const PDMatrix& q, double x,
                       const ToleranceProfile& tol = kDefaultTolerances);

}  // namespace genfid
