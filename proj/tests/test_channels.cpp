#include <gtest/gtest.h>

#include <cmath>

#include "genfid/channels.hpp"
#include "support.hpp"

using namespace genfid;
using testing_support::random_pair;

namespace {

const ToleranceProfile& tol = kDefaultTolerances;
const double kXs[] = {-1.0, -0.5, 0.0, 0.5, 1.0};

template <class F>
void expect_kind(ErrorKind kind, F&& f) {
  try {
    f();
    FAIL() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(Kraus, Constructors) {
  const PDMatrix p = random_pd(3, 1, 1e3);
  EXPECT_LT((apply_channel(KrausSet::identity(3), p).matrix() - p.matrix()).norm(), 1e-15);
  const UnitaryM u = random_unitary(3, 2);
  EXPECT_LT((apply_channel(KrausSet::unitary(u), p).matrix() -
             u.matrix() * p.matrix() * u.matrix().adjoint()).norm(), 1e-14);
  const PDMatrix dep = apply_channel(KrausSet::depolarizing(3), p);
  EXPECT_LT((dep.matrix() - (p.trace() / 3.0) * MatrixC::Identity(3, 3)).norm(), 1e-14);
  const PDMatrix pin = apply_channel(KrausSet::pinching(3), p);
  EXPECT_LT((pin.matrix() - MatrixC(p.matrix().diagonal().asDiagonal())).norm(), 1e-15);
  const KrausSet rnd = KrausSet::random(3, 2, 4, 7);
  EXPECT_EQ(rnd.d_out(), 2);
  EXPECT_NEAR(apply_channel(rnd, p).trace(), p.trace(), 1e-12);
}

TEST(Kraus, ValidationErrors) {
  expect_kind(ErrorKind::InvalidArgument, [] { KrausSet k({2.0 * MatrixC::Identity(2, 2)}); });
  expect_kind(ErrorKind::DimensionMismatch,
              [] { KrausSet k({MatrixC::Identity(2, 2), MatrixC::Zero(3, 2)}); });
  expect_kind(ErrorKind::DimensionMismatch,
              [] { (void)apply_channel(KrausSet::identity(2), random_pd(3, 1, 10)); });
  // Rank-deficient output: projection onto a single state.
  MatrixC k0 = MatrixC::Zero(2, 2);
  MatrixC k1 = MatrixC::Zero(2, 2);
  k0(0, 0) = 1.0;
  k1(0, 1) = 1.0;
  expect_kind(ErrorKind::OutputNotPD,
              [&] { (void)apply_channel(KrausSet({k0, k1}), random_pd(2, 1, 10)); });
}

TEST(Dpi, InputCommutingBranch) {
  for (std::uint64_t s = 0; s < 15; ++s) {
    const auto [p, q] = testing_support::commuting_pair(s, 3);
    const KrausSet k = KrausSet::random(3, 3, 3, 100 + s);
    const double fh = holevo(p, q).real();
    for (double x : kXs) {
      const DPIVerdict v = check_dpi_commutative(k, p, q, x, DPIBranch::input_commuting);
      EXPECT_TRUE(v.applies);
      EXPECT_TRUE(v.holds) << v.lhs << " < " << v.rhs;
      EXPECT_NEAR(v.rhs, fh, 1e-9);
      // Hellinger-type contraction.
      const PDMatrix lp = apply_channel(k, p);
      const PDMatrix lq = apply_channel(k, q);
      EXPECT_LE(lp.trace() + lq.trace() - 2 * v.lhs, p.trace() + q.trace() - 2 * v.rhs + 2 * tol.fid_tol);
    }
  }
}

TEST(Dpi, OutputCommutingPinching) {
  for (std::uint64_t s = 0; s < 15; ++s) {
    const auto [p, q] = random_pair(s, 2 + s % 3);
    const KrausSet k = KrausSet::pinching(random_unitary(p.dim(), 50 + s));
    for (double x : kXs) {
      const DPIVerdict v = check_dpi_commutative(k, p, q, x, DPIBranch::output_commuting);
      EXPECT_TRUE(v.holds) << v.lhs << " < " << v.rhs;
    }
  }
}

TEST(Dpi, FactoredBranch) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto [p, q] = random_pair(s, 3);
    const KrausSet m = KrausSet::pinching(3);
    const KrausSet gamma = KrausSet::random(3, 2, 3, 500 + s);
    std::vector<PDMatrix> probes;
    for (std::uint64_t i = 0; i < 4; ++i) probes.push_back(random_pd(3, 60 * s + i, 1e3));
    for (double x : kXs) {
      const DPIVerdict v = check_dpi_factored(gamma, m, p, q, x, probes);
      EXPECT_EQ(v.branch, DPIBranch::factored);
      EXPECT_TRUE(v.holds);
    }
  }
}

TEST(Dpi, HypothesesEnforced) {
  const auto [p, q] = random_pair(1, 3);
  const KrausSet k = KrausSet::random(3, 3, 2, 9);
  expect_kind(ErrorKind::HypothesesNotMet,
              [&] { (void)check_dpi_commutative(k, p, q, 0.0, DPIBranch::input_commuting); });
  expect_kind(ErrorKind::HypothesesNotMet,
              [&] { (void)check_dpi_commutative(k, p, q, 0.0, DPIBranch::output_commuting); });
  expect_kind(ErrorKind::HypothesesNotMet, [&] {
    (void)check_dpi_factored(KrausSet::identity(3), k, p, q, 0.0, {});
  });
  expect_kind(ErrorKind::InvalidArgument, [&] {
    (void)check_dpi_commutative(KrausSet::pinching(3), p, q, 1.5, DPIBranch::output_commuting);
  });
}

TEST(Dpi, ExplorationAssertsNothing) {
  const auto [p, q] = random_pair(2, 3);
  const DPIVerdict v = explore_dpi(KrausSet::random(3, 3, 2, 4), p, q, 0.3);
  EXPECT_FALSE(v.applies);
  EXPECT_EQ(v.branch, DPIBranch::none);
  EXPECT_TRUE(std::isfinite(v.lhs) && std::isfinite(v.rhs));
}
