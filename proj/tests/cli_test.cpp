#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "spectral_rec/commands.hpp"
#include "spectral_rec/config.hpp"
#include "spectral_rec/expression.hpp"
#include "spectral_rec/json_io.hpp"
#include "test_util.hpp"

namespace spectral_rec {
namespace {

namespace fs = std::filesystem;
using testing::c;
using testing::q;
using testing::z;

constexpr std::string_view kAiry = R"([curve]
name = "airy"
x = "z^2"
y = "z"
mode = "exact"

[compute]
g_max = 2
n_max = 3
wkb_order = 4
seed = 1
)";

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("spectral_rec_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Parser, Examples) {
  EXPECT_EQ(parse_expression("z^2"), z() * z());
  EXPECT_EQ(parse_expression("z/(1 - z^2)"), z() / (c(1) - z() * z()));
  EXPECT_EQ(parse_expression("5/48"), c(5, 48));
  EXPECT_EQ(parse_expression("-z^2"), -(z() * z()));
  EXPECT_EQ(parse_expression("2*z^-1"), c(2) / z());
  EXPECT_EQ(parse_expression("1 - 2 - 3"), c(-4));
  EXPECT_EQ(parse_expression("8/2/2"), c(2));
  EXPECT_EQ(parse_expression("2^3^2"), c(512));
}

TEST(Parser, SyntaxErrorsCarryOffsets) {
  try {
    parse_expression("1/(1-z^2");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.offset(), 8U);
    EXPECT_EQ(e.kind(), ErrorKind::kSyntax);
  }
  try {
    parse_expression("z + * 2");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.offset(), 4U);
  }
  try {
    parse_expression("z^z");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.offset(), 2U);
  }
  EXPECT_THROW(parse_expression(""), SyntaxError);
  EXPECT_THROW(parse_expression("x + 1"), SyntaxError);
}

TEST(Parser, DivisionByZeroPolynomial) {
  try {
    parse_expression("1/(z - z)");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMalformedInput);
  }
}

TEST(Parser, PrintRoundTrip) {
  for (const char* text : {"z^2", "z/(1 - z^2)", "-z^2 + 3*z - 5/48", "(z - 1)^(-2)*-z", "1 - (2 - z)",
                           "z/(2*z)", "(-z)^3", "--z", "(z^2)^3"}) {
    const Expr e = parse_expression_ast(text);
    EXPECT_EQ(parse_expression_ast(print(e)), e) << text << " -> " << print(e);
  }
}

TEST(Config, ParsesAndValidates) {
  const CurveConfig cfg = parse_config(kAiry);
  EXPECT_EQ(cfg.name, "airy");
  EXPECT_EQ(cfg.mode, Mode::kExact);
  EXPECT_EQ(cfg.max_level(), 5);
  EXPECT_FALSE(cfg.series_order.has_value());
  std::string bad(kAiry);
  bad.replace(bad.find("wkb_order = 4"), 13, "wkb_order = 1");
  EXPECT_THROW(parse_config(bad), Error);
  std::string series(kAiry);
  series.replace(series.find("\"exact\""), 7, "\"series\"");
  EXPECT_EQ(parse_config(series).mode, Mode::kSeries);
  EXPECT_THROW(parse_config("[curve]\nname = 1\n"), Error);
  EXPECT_THROW(parse_config("not toml ["), Error);
}

TEST(Config, HashTracksResults) {
  const CurveConfig cfg = parse_config(kAiry);
  EXPECT_EQ(config_hash(cfg), config_hash(cfg));
  EXPECT_NE(config_hash(cfg), config_hash(cfg, true));
  CurveConfig other = cfg;
  other.seed = 2;
  EXPECT_NE(config_hash(cfg), config_hash(other));
}

TEST(Json, CorrelatorSchema) {
  const auto curve = testing::airy();
  CorrelatorTable table(curve);
  EXPECT_EQ(correlator_json(*curve, compute_w11(table)),
            R"({"g":1,"n":1,"terms":[{"slots":[{"point":"0","order":4}],"coeff":"-1/16"}]})");
  EXPECT_EQ(correlator_json(*curve, Correlator{1, 1, {}}), R"({"g":1,"n":1,"terms":[]})");
}

TEST(Json, TableRoundTrip) {
  const auto curve = testing::curve_b();
  const CorrelatorTable table = compute_table(curve, 3);
  const std::string doc = correlators_document({"b", "h"}, table);
  EXPECT_EQ(document_hash(doc), "h");
  EXPECT_EQ(read_correlators(doc, curve).entries(), table.entries());
  EXPECT_EQ(document_hash("{"), "");
  EXPECT_THROW(read_correlators("[]", curve), Error);
}

TEST(Json, WkbEntry) {
  const auto curve = testing::airy();
  const FreeEnergyTable f = integrate_table(compute_table(curve, 1));
  const std::string doc = wkb_document({"airy", "h"}, build_wkb(f, 2));
  EXPECT_NE(doc.find(R"x("rational": "(5/48)/(z^3)")x"), std::string::npos) << doc;
  EXPECT_NE(doc.find(R"("point": "0")"), std::string::npos);
  EXPECT_NE(doc.find(R"("order": 3)"), std::string::npos);
}

TEST(Commands, ComputeIsDeterministic) {
  const CurveConfig cfg = parse_config(kAiry);
  const fs::path a = scratch("a"), b = scratch("b");
  const auto files = run_compute(cfg, a, {false, 1});
  ASSERT_EQ(files.size(), 3U);
  run_compute(cfg, b, {false, 4});
  for (const char* f : {"w.json", "f.json", "wkb.json"}) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  EXPECT_NE(slurp(a / "w.json").find(R"("coeff": "-1/16")"), std::string::npos);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Commands, VerifyUsesCacheAndDetectsCorruption) {
  const CurveConfig cfg = parse_config(kAiry);
  const fs::path dir = scratch("cache");
  run_compute(cfg, dir);
  std::ostringstream report;
  EXPECT_EQ(run_verify(cfg, "wkb", dir, report), ExitCode::kSuccess);
  EXPECT_NE(report.str().find("correlators loaded from"), std::string::npos);

  std::string text = slurp(dir / "w.json");
  const auto at = text.find("\"-1/16\"");
  ASSERT_NE(at, std::string::npos);
  text.replace(at, 7, "\"-1/15\"");
  std::ofstream(dir / "w.json", std::ios::binary) << text;
  std::ostringstream bad;
  EXPECT_EQ(run_verify(cfg, "correlators", dir, bad), ExitCode::kVerificationFailure);
  EXPECT_NE(bad.str().find("closed form W(1,1)"), std::string::npos);

  CurveConfig other = cfg;
  other.seed = 7;
  std::ostringstream fresh;
  EXPECT_EQ(run_verify(other, "correlators", dir, fresh), ExitCode::kSuccess);
  EXPECT_NE(fresh.str().find("correlators computed"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Commands, VerifyAllPasses) {
  const CurveConfig cfg = parse_config(kAiry);
  std::ostringstream report;
  EXPECT_EQ(run_verify(cfg, "all", scratch("none"), report), ExitCode::kSuccess) << report.str();
  EXPECT_THROW(run_verify(cfg, "everything", scratch("none"), report), Error);
}

TEST(Commands, ExitCodes) {
  EXPECT_EQ(exit_code(ErrorKind::kUnsupportedCurve), ExitCode::kInvalidInput);
  EXPECT_EQ(exit_code(ErrorKind::kSyntax), ExitCode::kInvalidInput);
  EXPECT_EQ(exit_code(ErrorKind::kInvariantViolation), ExitCode::kVerificationFailure);
  EXPECT_EQ(exit_code(ErrorKind::kQuantizationFailure), ExitCode::kVerificationFailure);
  EXPECT_EQ(exit_code(ErrorKind::kInternalConsistency), ExitCode::kInternalError);
  CurveConfig cfg = parse_config(kAiry);
  cfg.x_expr = "z^3 - 2*z";
  try {
    run_compute(cfg, scratch("irr"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(exit_code(e.kind()), ExitCode::kInvalidInput);
  }
}

TEST(Commands, HModelRescalesY) {
  const CurveConfig cfg = parse_config(kAiry);
  EXPECT_EQ(build_curve(cfg, true).h(), z() * z());
  std::ostringstream out;
  run_wkb(cfg, 2, out, {true, 1});
  EXPECT_NE(out.str().find("(5/24)/(z^3)"), std::string::npos) << out.str();
}

}  // namespace
}  // namespace spectral_rec
