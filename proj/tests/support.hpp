#pragma once

#include <cstdint>
#include <utility>

#include "genfid/linalg.hpp"

namespace testing_support {

using genfid::MatrixC;
using genfid::PDMatrix;

inline MatrixC mat2(double a, double b, double c, double d) {
  MatrixC m(2, 2);
  m << a, b, c, d;
  return m;
}

inline PDMatrix example_p() { return PDMatrix(mat2(4, 0, 0, 1)); }
inline PDMatrix example_q() { return PDMatrix(mat2(2, 1, 1, 2)); }

inline PDMatrix diag_pd(std::initializer_list<double> v) {
  MatrixC m = MatrixC::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return PDMatrix(m);
}

/// Seeded pair of dimension d with condition <= cap.
inline std::pair<PDMatrix, PDMatrix> random_pair(std::uint64_t seed, Eigen::Index d,
                                                 double cap = 1e3) {
  return {genfid::random_pd(d, 7919 * seed + 11, cap), genfid::random_pd(d, 7919 * seed + 12, cap)};
}

/// Commuting pair: common random eigenbasis, independent spectra.
inline std::pair<PDMatrix, PDMatrix> commuting_pair(std::uint64_t seed, Eigen::Index d) {
  const MatrixC u = genfid::random_unitary(d, 104729 * seed + 5).matrix();
  const auto lp = genfid::random_pd(d, 104729 * seed + 6, 1e2).eigenvalues();
  const auto lq = genfid::random_pd(d, 104729 * seed + 7, 1e2).eigenvalues().reverse().eval();
  return {PDMatrix::from_eig(lp, u), PDMatrix::from_eig(lq, u)};
}

}  // namespace testing_support
