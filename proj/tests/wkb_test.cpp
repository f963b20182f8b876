#include <gtest/gtest.h>

#include "spectral_rec/error.hpp"
#include "spectral_rec/wkb.hpp"
#include "test_util.hpp"

namespace spectral_rec {
namespace {

using testing::c;
using testing::q;
using testing::z;

RationalFunction x() { return z(); }

FreeEnergyTable free_energies(std::shared_ptr<const SpectralCurve> curve, int level) {
  return integrate_table(compute_table(std::move(curve), level, 2));
}

RationalFunction zpow(int k) { return z().pow(k); }

TEST(S2OfCurve, Examples) {
  EXPECT_EQ(s2_of_curve(*testing::airy()), -x());
  EXPECT_EQ(s2_of_curve(*testing::curve_b()), x() - x() * x());
  const SpectralCurve cubic_y = build_curve(z() * z(), z() * z() * z(), Mode::kExact);
  EXPECT_EQ(s2_of_curve(cubic_y), -(x() * x() * x()));
}

TEST(S2OfCurve, NeedsDegreeTwo) {
  try {
    s2_of_curve(*testing::cubic());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMode);
  }
}

TEST(S0S1, AiryAndCurveB) {
  const auto [ds0, ds1] = build_s0_s1(*testing::airy());
  EXPECT_EQ(ds0.fn, c(2) * z() * z());
  EXPECT_EQ(ds1.fn, c(-1, 2) / z());
  const auto curve = testing::curve_b();
  const auto [b0, b1] = build_s0_s1(*curve);
  // S0'' + 2 S0' S1' at z = 2
  const RationalFunction dx = curve->x().derivative();
  const Rational s0p = curve->y()(2);
  const Rational s0pp = curve->y().derivative()(2) / dx(2);
  EXPECT_EQ(s0pp + 2 * s0p * (b1.fn(2) / dx(2)), 0);
}

TEST(Sm, AiryFromFreeEnergies) {
  const FreeEnergyTable f = free_energies(testing::airy(), 2);
  EXPECT_EQ(sm_from_free_energies(f, 2), c(5, 48) / zpow(3));
  EXPECT_EQ(sm_from_free_energies(f, 3), c(5, 64) / zpow(6));
  EXPECT_THROW(sm_from_free_energies(f, 4), Error);
}

TEST(Sm, AiryRecursion) {
  const FreeEnergyTable f = free_energies(testing::airy(), 1);
  const WKBExpansion w = build_wkb(f, 4);
  EXPECT_EQ(w.source.at(2), WKBSource::kFreeEnergies);
  EXPECT_EQ(w.source.at(3), WKBSource::kRecursion);
  EXPECT_EQ(w.S.at(3), c(5, 64) / zpow(6));
  EXPECT_EQ(w.S.at(3).derivative(), c(-15, 32) / zpow(7));
  EXPECT_EQ(-function_order(Point::finite(0), w.S.at(4)), 9);
}

TEST(Sm, ZeroInputStaysZero) {
  WKBExpansion w;
  w.curve = testing::airy();
  w.S[2] = RationalFunction();
  for (int m = 2; m < 6; ++m) {
    w.S[m + 1] = sm_recursion_step(w, m);
    EXPECT_TRUE(w.S[m + 1].is_zero());
  }
}

TEST(Sm, TwoPathsAgree) {
  for (const auto& curve : {testing::airy(), testing::curve_b()}) {
    const FreeEnergyTable f = free_energies(curve, 4);
    const WKBExpansion w = build_wkb(f, 5);
    for (int m = 2; m <= 4; ++m) {
      EXPECT_EQ(w.source.at(m + 1), WKBSource::kFreeEnergies);
      EXPECT_EQ(sm_recursion_step(w, m).derivative(), w.S.at(m + 1).derivative()) << m;
    }
  }
}

TEST(Sm, PoleOrdersAndParity) {
  const auto curve = testing::curve_b();
  const WKBExpansion w = build_wkb(free_energies(curve, 3), 5);
  const RationalFunction s = curve->involution()->as_function();
  for (const auto& [m, sm] : w.S) {
    for (const Point& p : curve->active_points()) EXPECT_EQ(-function_order(p, sm), 3 * m - 3);
    EXPECT_EQ(sm.compose(s), (m % 2 == 1 ? c(1) : c(-1)) * sm);
  }
}

TEST(Schrodinger, AiryAndCurveBThroughSix) {
  for (const auto& curve : {testing::airy(), testing::curve_b()}) {
    const WKBExpansion w = build_wkb(free_energies(curve, 3), 6);
    const QuantumCurveReport r = verify_schrodinger(w, 6);
    EXPECT_EQ(r.verified_through, 6);
    EXPECT_EQ(r.s2, s2_of_curve(*curve));
  }
}

TEST(Schrodinger, LowOrdersAreTheClassicalRelations) {
  const auto curve = testing::curve_b();
  const WKBExpansion w = build_wkb(free_energies(curve, 1), 2);
  const RationalFunction dx = curve->x().derivative();
  const RationalFunction p0 = x_derivative(w, 0);
  const RationalFunction p1 = x_derivative(w, 1);
  const QuantumCurveReport r = schrodinger_residuals(w, 2);
  EXPECT_EQ(r.residuals.at(0), p0 * p0 + s2_of_curve(*curve).compose(curve->x()));
  EXPECT_EQ(r.residuals.at(1), p0.derivative() / dx + c(2) * p0 * p1);
}

TEST(Schrodinger, PerturbedS2Fails) {
  WKBExpansion w = build_wkb(free_energies(testing::airy(), 1), 3);
  w.S[2] += c(1, 1000) / zpow(3);
  const QuantumCurveReport r = schrodinger_residuals(w, 3);
  EXPECT_FALSE(r.residuals.at(2).is_zero());
  EXPECT_EQ(r.verified_through, 1);
  try {
    verify_schrodinger(w, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kQuantizationFailure);
  }
}

TEST(Oracle, AiryLeadingCoefficients) {
  const auto o = ode_series_oracle(-x(), 1, 1, 6, 3);
  EXPECT_EQ(o.at(1).coefficient(0), q(-1, 4));
  EXPECT_EQ(o.at(1).coefficient(1), q(1, 4));
  EXPECT_EQ(o.at(2).coefficient(0), q(-5, 32));
  EXPECT_EQ(o.at(2).coefficient(1), q(-5, 32) * q(-5, 2));
}

TEST(Oracle, BadSheet) {
  try {
    ode_series_oracle(-x(), 1, 2, 6, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBadSheet);
  }
}

TEST(Oracle, MatchesEngineExpansion) {
  struct Case {
    std::shared_ptr<const SpectralCurve> curve;
    Rational x0, y0;
  };
  for (const Case& k : {Case{testing::airy(), 1, 1}, Case{testing::curve_b(), q(-1, 3), q(-2, 3)}}) {
    const WKBExpansion w = build_wkb(free_energies(k.curve, 3), 4);
    const auto oracle = ode_series_oracle(s2_of_curve(*k.curve), k.x0, k.y0, 12, 4);
    const auto engine = x_chart_expansion(w, k.x0, k.y0, 12);
    for (int m = 0; m <= 4; ++m) {
      for (int j = 0; j < 12; ++j) EXPECT_EQ(oracle.at(m).coefficient(j), engine.at(m).coefficient(j)) << m << " " << j;
    }
  }
  EXPECT_EQ(default_base_point(*testing::airy()), (std::pair<Rational, Rational>{1, 1}));
  EXPECT_EQ(default_base_point(*testing::curve_b()), (std::pair<Rational, Rational>{q(-1, 3), q(-2, 3)}));
}

TEST(Verify, FullSuite) {
  const FreeEnergyTable f = free_energies(testing::curve_b(), 4);
  const VerificationReport r = verify_wkb(f, build_wkb(f, 6));
  for (const auto& check : r.checks) EXPECT_TRUE(check.passed) << check.name << ": " << check.detail;
}

}  // namespace
}  // namespace spectral_rec
