#pragma once

namespace genfid {

/// Every numerical threshold used by the library. A single value of this type is
/// threaded through all operations; defaults are sized for double precision at d <= 16.
struct ToleranceProfile {
  double herm_tol = 1e-12;     // Hermiticity, relative to max(1, ||X||_F)
  double unitary_tol = 1e-12;  // ||U*U - I||_F <= unitary_tol * sqrt(d)
  double pd_tol = 1e-10;       // lambda_min > pd_tol * lambda_max
  double recon_tol = 1e-10;    // reconstruction residuals, relative
  double inv_tol = 1e-14;      // sigma_min > inv_tol * sigma_max
  double sim_tol = 1e-8;       // S D S^-1 reconstruction, relative
  double spec_tol = 1e-8;      // spectrum reality / positivity, relative to spectral radius
  double comm_tol = 1e-10;     // ||AB - BA||_F <= comm_tol ||A||_F ||B||_F
  double fid_tol = 1e-9;       // fidelity agreements, absolute plus relative
  double imag_tol = 1e-9;      // |Im F| <= imag_tol * |F| for real-valued fidelities
  double realize_tol = 1e-8;   // realization residual
  double mono_tol = 1e-9;      // adjacent-difference monotonicity violations
  double margin_tol = 1e-6;    // strict separation claims
  double scalar_tol = 1e-10;   // ||R - (Tr R / d) I||_F <= scalar_tol ||R||_F
  double det_tol = 1e-9;       // |det W - 1|
  double channel_tol = 1e-10;  // Kraus completeness and trace preservation

  double bisect_width = 1e-12;
  int bisect_max_iter = 200;

  /// `a` and `b` agree to fid_tol in the absolute-plus-relative sense.
  [[nodiscard]] bool fid_close(double a, double b) const;
};

inline const ToleranceProfile kDefaultTolerances{};

}  // namespace genfid
