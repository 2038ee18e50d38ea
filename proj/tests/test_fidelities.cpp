#include <gtest/gtest.h>

#include <cmath>

#include "genfid/fidelities.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace genfid;
using testing_support::example_p;
using testing_support::example_q;
using testing_support::random_pair;

namespace {

const ToleranceProfile& tol = kDefaultTolerances;

double ld(long double v) { return static_cast<double>(v); }

}  // namespace

TEST(Named, ExamplePairGolden) {
  const PDMatrix p = example_p();
  const PDMatrix q = example_q();
  EXPECT_NEAR(holevo(p, q).real(), 1.5 * (1 + std::sqrt(3.0)), 1e-12);
  EXPECT_NEAR(uhlmann(p, q).real(), std::sqrt(10 + 4 * std::sqrt(3.0)), 1e-12);
  const auto lp = oracle::widen(p.matrix());
  const auto lq = oracle::widen(q.matrix());
  EXPECT_NEAR(matsumoto(p, q).real(), ld(oracle::matsumoto(lp, lq)), 1e-12);
}

TEST(Named, AgreeWithOracles) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const auto [p, q] = random_pair(s, 2 + s % 4);
    const auto lp = oracle::widen(p.matrix());
    const auto lq = oracle::widen(q.matrix());
    EXPECT_NEAR(uhlmann(p, q).real(), ld(oracle::uhlmann(lp, lq)), 1e-11);
    EXPECT_NEAR(holevo(p, q).real(), ld(oracle::holevo(lp, lq)), 1e-11);
    EXPECT_NEAR(matsumoto(p, q).real(), ld(oracle::matsumoto(lp, lq)), 1e-11);
    EXPECT_NEAR(log_euclidean(p, q).real(), ld(oracle::log_euclidean(lp, lq)), 1e-11);
  }
}

TEST(Named, SymmetricInArguments) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto [p, q] = random_pair(s, 3);
    EXPECT_TRUE(tol.fid_close(uhlmann(p, q).real(), uhlmann(q, p).real()));
    EXPECT_TRUE(tol.fid_close(holevo(p, q).real(), holevo(q, p).real()));
    EXPECT_TRUE(tol.fid_close(matsumoto(p, q).real(), matsumoto(q, p).real()));
    EXPECT_TRUE(tol.fid_close(z_fidelity(p, q, 2.5).real(), z_fidelity(q, p, 2.5).real()));
    EXPECT_TRUE(tol.fid_close(log_euclidean(p, q).real(), log_euclidean(q, p).real()));
  }
}

TEST(Named, EqualArgumentsGiveTrace) {
  const PDMatrix p = random_pd(4, 3, 1e3);
  for (const auto& f : {uhlmann(p, p), holevo(p, p), matsumoto(p, p), log_euclidean(p, p),
                        z_fidelity(p, p, 0.7)})
    EXPECT_NEAR(f.real(), p.trace(), 1e-12);
}

TEST(Generalized, BaseChoicesGiveNamedFidelities) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto [p, q] = random_pair(s, 2 + s % 3);
    const double fu = uhlmann(p, q).real();
    EXPECT_TRUE(tol.fid_close(generalized_fidelity(p, q, p).real(), fu));
    EXPECT_TRUE(tol.fid_close(generalized_fidelity(p, q, q).real(), fu));
    EXPECT_TRUE(tol.fid_close(generalized_fidelity(p, q, PDMatrix::identity(p.dim())).real(),
                              holevo(p, q).real()));
    const double fm = matsumoto(p, q).real();
    EXPECT_TRUE(tol.fid_close(generalized_fidelity(p, q, pd_inverse(p)).real(), fm));
    EXPECT_TRUE(tol.fid_close(generalized_fidelity(p, q, pd_inverse(q)).real(), fm));
  }
}

TEST(Generalized, MatchesOracleIncludingImaginaryPart) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const auto [p, q] = random_pair(s, 2 + s % 3);
    const PDMatrix r = random_pd(p.dim(), 5000 + s, 1e3);
    const Complex f = generalized_fidelity(p, q, r).value;
    const auto ref = oracle::generalized(oracle::widen(p.matrix()), oracle::widen(q.matrix()),
                                         oracle::widen(r.matrix()));
    EXPECT_NEAR(f.real(), ld(ref.real()), 1e-11);
    EXPECT_NEAR(f.imag(), ld(ref.imag()), 1e-11);
  }
}

TEST(Generalized, DualFormEquivalence) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto [p, q] = random_pair(s, 2 + s % 4);
    const PDMatrix r = random_pd(p.dim(), 9000 + s, 1e3);
    const Complex a = generalized_fidelity(p, q, r).value;
    const Complex b = unitary_form_fidelity(p, q, r).report.value;
    EXPECT_LE(std::abs(a - b), tol.fid_tol * std::max(1.0, std::abs(a)));
    // Polar factors of the literal products.
    const MatrixC ph = pd_sqrt(p).matrix();
    const MatrixC qh = pd_sqrt(q).matrix();
    const MatrixC rh = pd_sqrt(r).matrix();
    const MatrixC lit = qh * polar_unitary(qh * rh) * polar_unitary(ph * rh).adjoint() * ph;
    EXPECT_LE(std::abs(a - lit.trace()), tol.fid_tol * std::max(1.0, std::abs(a)));
  }
}

TEST(Generalized, BaseScaling) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto [p, q] = random_pair(s, 3);
    const PDMatrix r = random_pd(3, 300 + s, 1e3);
    const Complex f = generalized_fidelity(p, q, r).value;
    for (double c : {1e-3, 1.0, 1e3}) {
      const Complex g = generalized_fidelity(p, q, PDMatrix(c * r.matrix())).value;
      EXPECT_LE(std::abs(f - g), tol.fid_tol * std::max(1.0, std::abs(f)));
    }
  }
}

TEST(Generalized, JointHomogeneity) {
  const auto [p, q] = random_pair(4, 3);
  const PDMatrix r = random_pd(3, 44, 1e3);
  const double a = 2.5;
  const double b = 0.3;
  const PDMatrix ap(a * p.matrix());
  const PDMatrix bq(b * q.matrix());
  const double k = std::sqrt(a * b);
  EXPECT_LE(std::abs(generalized_fidelity(ap, bq, r).value - k * generalized_fidelity(p, q, r).value),
            1e-9);
  EXPECT_TRUE(tol.fid_close(uhlmann(ap, bq).real(), k * uhlmann(p, q).real()));
  EXPECT_TRUE(tol.fid_close(holevo(ap, bq).real(), k * holevo(p, q).real()));
  EXPECT_TRUE(tol.fid_close(matsumoto(ap, bq).real(), k * matsumoto(p, q).real()));
  EXPECT_TRUE(tol.fid_close(z_fidelity(ap, bq, 3.0).real(), k * z_fidelity(p, q, 3.0).real()));
  EXPECT_TRUE(tol.fid_close(log_euclidean(ap, bq).real(), k * log_euclidean(p, q).real()));
}

TEST(Generalized, BoundedByUhlmann) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto [p, q] = random_pair(s, 2 + s % 3);
    const PDMatrix r = random_pd(p.dim(), 7000 + s, 1e3);
    EXPECT_LE(std::abs(generalized_fidelity(p, q, r).value), uhlmann(p, q).real() + tol.fid_tol);
  }
}

TEST(ZFidelity, DyadicValuesMatchOracle) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto [p, q] = random_pair(s, 3);
    const auto lp = oracle::widen(p.matrix());
    const auto lq = oracle::widen(q.matrix());
    for (long double z : {0.5L, 1.0L, 2.0L, 4.0L}) {
      EXPECT_NEAR(z_fidelity(p, q, static_cast<double>(z)).real(),
                  ld(oracle::z_fidelity_dyadic(lp, lq, z)), 1e-11)
          << "z=" << static_cast<double>(z);
    }
  }
}

TEST(ZFidelity, SpecialValuesAndBounds) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto [p, q] = random_pair(s, 2 + s % 3);
    EXPECT_TRUE(tol.fid_close(z_fidelity(p, q, 0.5).real(), uhlmann(p, q).real()));
    EXPECT_TRUE(tol.fid_close(z_fidelity(p, q, 1.0).real(), holevo(p, q).real()));
    const double fm = matsumoto(p, q).real();
    const double fu = uhlmann(p, q).real();
    for (double z : {0.5, 0.6, 1.3, 3.0, 7.5, 10.0}) {
      const double fz = z_fidelity(p, q, z).real();
      EXPECT_LE(fm, fz + tol.fid_tol);
      EXPECT_LE(fz, fu + tol.fid_tol);
    }
    const double le = log_euclidean(p, q).real();
    EXPECT_LE(fm, le + tol.fid_tol);
    EXPECT_LE(le, fu + tol.fid_tol);
  }
}

TEST(ZFidelity, LargeZApproachesLogEuclidean) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto [p, q] = random_pair(s, 3, 100.0);
    const double le = log_euclidean(p, q).real();
    EXPECT_NEAR(z_fidelity(p, q, 1e4).real(), le, 1e-4 * le);
    // Continuity across the switch to log-space powers.
    EXPECT_NEAR(z_fidelity(p, q, 100.0).real(), z_fidelity(p, q, 100.0 + 1e-9).real(), 1e-12);
  }
}

TEST(ZFidelity, RejectsNonPositiveZ) {
  const auto [p, q] = random_pair(1, 2);
  for (double z : {0.0, -1.0, std::nan("")}) {
    try {
      (void)z_fidelity(p, q, z);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NonPositiveZ);
    }
  }
}

TEST(PolarFamilies, DyadicPointsMatchOracle) {
  for (std::uint64_t s = 0; s < 15; ++s) {
    const auto [p, q] = random_pair(s, 3);
    const auto lp = oracle::widen(p.matrix());
    const auto lq = oracle::widen(q.matrix());
    for (long double x : {-2.0L, -1.0L, -0.5L, 0.0L, 0.25L, 1.0L, 1.5L, 3.0L}) {
      const double xd = static_cast<double>(x);
      EXPECT_NEAR(phi_p(p, q, xd).real(), ld(oracle::polar_path(lp, lq, x)), 1e-10) << xd;
      EXPECT_NEAR(phi_q(p, q, xd).real(), ld(oracle::polar_path(lq, lp, x)), 1e-10) << xd;
    }
  }
}

TEST(PolarFamilies, AgreeWithGeneralizedFidelityAtPowerBases) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto [p, q] = random_pair(s, 2 + s % 3);
    for (double x : {-1.7, -0.3, 0.4, 1.9}) {
      EXPECT_TRUE(tol.fid_close(phi_p(p, q, x).real(),
                                generalized_fidelity(p, q, pd_power(p, x)).real()));
      EXPECT_TRUE(tol.fid_close(phi_q(p, q, x).real(),
                                generalized_fidelity(p, q, pd_power(q, x)).real()));
    }
  }
}

TEST(PolarFamilies, EndpointsAndConstantForCommutingPair) {
  const auto [p, q] = testing_support::commuting_pair(3, 4);
  const double fh = holevo(p, q).real();
  for (double x : {-3.0, -1.0, 0.0, 0.7, 1.0, 4.0}) {
    EXPECT_TRUE(tol.fid_close(phi_p(p, q, x).real(), fh));
    EXPECT_TRUE(tol.fid_close(f_pol(p, q, x).real(), fh));
  }
  const PolarCurve c = polar_curve(example_p(), example_q(), {-1.0, 0.0, 1.0});
  EXPECT_NEAR(c.f_pol[0], matsumoto(example_p(), example_q()).real(), 1e-10);
  EXPECT_NEAR(c.f_pol[1], holevo(example_p(), example_q()).real(), 1e-10);
  EXPECT_NEAR(c.f_pol[2], uhlmann(example_p(), example_q()).real(), 1e-10);
}

TEST(TracePowers, HalfPowerTraceInequalities) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const auto [a, b] = random_pair(s, 2 + s % 3);
    const MatrixC ah = pd_sqrt(a).matrix();
    const MatrixC mean = pd_sqrt(PDMatrix(ah * b.matrix() * ah)).matrix();
    const MatrixC bh = pd_sqrt(b).matrix();
    for (double beta : {0.0, 0.3, 1.0, 2.0, -0.5, -1.0, -2.0}) {
      const MatrixC ab = pd_power(a, beta).matrix();
      const double lhs = (ab * ah * bh).trace().real();
      const double rhs = (ab * mean).trace().real();
      if (beta >= 0) EXPECT_LE(lhs, rhs + tol.fid_tol) << beta;
      else EXPECT_GE(lhs, rhs - tol.fid_tol) << beta;
    }
  }
}

TEST(Errors, DimensionMismatch) {
  try {
    (void)holevo(random_pd(2, 1, 10), random_pd(3, 1, 10));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}
