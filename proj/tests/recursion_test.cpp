#include <gtest/gtest.h>

#include "spectral_rec/error.hpp"
#include "spectral_rec/recursion.hpp"
#include "test_util.hpp"

namespace spectral_rec {
namespace {

using testing::c;
using testing::q;
using testing::z;

TermMap single(int point, std::vector<int> orders, const Rational& coeff) {
  Slots s;
  for (int k : orders) s.push_back(PoleSlot{point, k});
  return TermMap{{s, coeff}};
}

TEST(Unstable, EtaIsW01) {
  EXPECT_EQ(unstable_w(*testing::airy()).w01.fn, c(2) * z() * z());
  const RationalFunction d = c(1) - z() * z();
  EXPECT_EQ(unstable_w(*testing::curve_b()).w01.fn, c(2) * z() * z() / (d * d * d));
}

TEST(W11, Airy) {
  CorrelatorTable table(testing::airy());
  const Correlator w = compute_w11(table);
  EXPECT_EQ(w.terms, single(0, {4}, q(-1, 16)));
  EXPECT_EQ(w, w11_closed_form(table.curve()));
}

TEST(W11, HModel) {
  CorrelatorTable table(testing::h_model());
  EXPECT_EQ(compute_w11(table).terms, single(0, {4}, q(-1, 8)));
}

TEST(W11, CurveB) {
  // -(1 - z^2)^3/(16 z^4) dz = (-z^-4 + 3 z^-2 - 3 + z^2)/16 dz; at infinity -z^{k-2} dz is order k.
  const auto curve = testing::curve_b();
  CorrelatorTable table(curve);
  const Correlator w = compute_w11(table);
  TermMap expected;
  expected[{PoleSlot{0, 4}}] = q(-1, 16);
  expected[{PoleSlot{0, 2}}] = q(3, 16);
  expected[{PoleSlot{1, 2}}] = q(3, 16);
  expected[{PoleSlot{1, 4}}] = q(-1, 16);
  EXPECT_EQ(w.terms, expected);
  const RationalFunction d = c(1) - z() * z();
  const RationalFunction closed = c(-1, 16) * d * d * d / (z() * z() * z() * z());
  for (const Rational& z1 : {q(2), q(1, 3), q(-5, 4)}) EXPECT_EQ(evaluate(*curve, w, {z1}), closed(z1));
}

TEST(W11, GeneralPathMatches) {
  for (const auto& curve : {testing::airy(), testing::curve_b(), testing::h_model()}) {
    CorrelatorTable table(curve);
    EXPECT_EQ(compute_wgn(table, 1, 1), compute_w11(table));
  }
}

TEST(W03, HModelMatchesClosedDisplay) {
  CorrelatorTable table(testing::h_model());
  const Correlator w = compute_w03(table);
  EXPECT_EQ(w.terms, single(0, {2, 2, 2}, q(-1)));
}

TEST(W03, AiryAndCurveBAgainstClosedForm) {
  CorrelatorTable airy(testing::airy());
  EXPECT_EQ(compute_w03(airy).terms, single(0, {2, 2, 2}, q(-1, 2)));
  const auto curve = testing::curve_b();
  CorrelatorTable b(curve);
  const Correlator w = compute_w03(b);
  for (const auto& s : generic_samples(*curve, 3, 10, 5)) {
    EXPECT_EQ(evaluate(*curve, w, s), w03_closed_form(*curve, s[0], s[1], s[2]));
  }
}

TEST(Table, AiryLevelTwo) {
  const CorrelatorTable table = compute_table(testing::airy(), 2);
  const Correlator& w04 = table.at(0, 4);
  for (const auto& [slots, coeff] : w04.terms) {
    for (const auto& s : slots) EXPECT_EQ(s.order % 2, 0);
  }
  EXPECT_LE(w04.max_order(), 6);
  EXPECT_EQ(w04.terms.at({PoleSlot{0, 2}, PoleSlot{0, 2}, PoleSlot{0, 2}, PoleSlot{0, 4}}), q(3, 4));
  const Correlator& w12 = table.at(1, 2);
  EXPECT_LE(w12.max_order(), 8);
  EXPECT_EQ(w12.terms.at({PoleSlot{0, 2}, PoleSlot{0, 6}}), q(5, 32));
  EXPECT_EQ(w12.terms.at({PoleSlot{0, 4}, PoleSlot{0, 4}}), q(3, 32));
  EXPECT_TRUE(verify_correlators(table).ok());
}

TEST(Table, AiryW21) {
  const CorrelatorTable table = compute_table(testing::airy(), 3);
  EXPECT_EQ(table.at(2, 1).terms, single(0, {10}, q(-105, 1024)));
}

TEST(Table, LevelMembers) {
  EXPECT_EQ(level_members(1), (std::vector<std::pair<int, int>>{{0, 3}, {1, 1}}));
  EXPECT_EQ(level_members(3), (std::vector<std::pair<int, int>>{{0, 5}, {1, 3}, {2, 1}}));
}

TEST(Table, MissingEntries) {
  const CorrelatorTable table = compute_table(testing::airy(), 1);
  EXPECT_THROW(table.at(0, 4), Error);
  EXPECT_EQ(table.complete_level(), 1);
}

TEST(Verify, StructuralSuiteOnBothExactCurves) {
  for (const auto& curve : {testing::airy(), testing::curve_b()}) {
    const CorrelatorTable table = compute_table(curve, 4, 2);
    const VerificationReport report = verify_correlators(table);
    for (const auto& check : report.checks) EXPECT_TRUE(check.passed) << check.name << ": " << check.detail;
  }
}

TEST(Verify, CorruptedCoefficientIsNamed) {
  CorrelatorTable table = compute_table(testing::airy(), 2);
  Correlator w = table.at(1, 2);
  w.terms.begin()->second += 1;
  table.insert(w);
  const VerificationReport report = verify_correlators(table);
  EXPECT_FALSE(report.ok());
  try {
    require(report);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvariantViolation);
    EXPECT_NE(std::string(e.what()).find("(1,2)"), std::string::npos) << e.what();
  }
}

TEST(Verify, SigmaPullbackParity) {
  const auto curve = testing::airy();
  EXPECT_EQ(sigma_pullback(*curve, 0, 4, true), (std::map<int, Rational>{{4, q(-1)}}));
  EXPECT_EQ(sigma_pullback(*curve, 0, 3, true), (std::map<int, Rational>{{3, q(1)}}));
  EXPECT_EQ(sigma_pullback(*curve, 0, 3, false), (std::map<int, Rational>{{3, q(-1)}}));
}

TEST(Series, AiryMatchesExactAndIsStable) {
  const CorrelatorTable exact = compute_table(testing::airy(), 3);
  const CorrelatorTable series = compute_table(testing::airy(Mode::kSeries, 20), 3);
  const CorrelatorTable doubled = compute_table(testing::airy(Mode::kSeries, 40), 3);
  for (const auto& [key, w] : exact.entries()) {
    EXPECT_EQ(series.at(key.first, key.second).terms, w.terms);
    EXPECT_EQ(doubled.at(key.first, key.second).terms, w.terms);
  }
}

TEST(Series, CubicCurveVerifies) {
  const CorrelatorTable table = compute_table(testing::cubic(), 2);
  EXPECT_TRUE(verify_correlators(table).ok());
  const CorrelatorTable doubled = compute_table(testing::cubic(48), 2);
  for (const auto& [key, w] : table.entries()) EXPECT_EQ(doubled.at(key.first, key.second).terms, w.terms);
}

TEST(Series, TruncationTooShortReportsOrder) {
  try {
    compute_table(testing::airy(Mode::kSeries, 3), 3);
    FAIL();
  } catch (const InsufficientPrecision& e) {
    EXPECT_GT(e.tried(), 0);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInsufficientOrder) << e.what();
  }
}

TEST(Determinism, ThreadCountDoesNotMatter) {
  const CorrelatorTable one = compute_table(testing::curve_b(), 4, 1);
  const CorrelatorTable four = compute_table(testing::curve_b(), 4, 4);
  EXPECT_EQ(one.entries(), four.entries());
}

}  // namespace
}  // namespace spectral_rec
