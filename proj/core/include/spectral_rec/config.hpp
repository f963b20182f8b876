#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "spectral_rec/curve.hpp"

namespace spectral_rec {

/// One curve and its computation bounds, read from TOML:
///
///   [curve]   name, x, y, mode ("exact" | "series")
///   [compute] g_max, n_max, wkb_order, series_order (optional), seed
struct CurveConfig {
  std::string name;
  std::string x_expr;
  std::string y_expr;
  Mode mode = Mode::kExact;
  int g_max = 0;
  int n_max = 1;
  int wkb_order = 2;
  std::optional<int> series_order;
  std::uint64_t seed = 1;

  /// 2 g_max - 2 + n_max.
  int max_level() const { return 2 * g_max - 2 + n_max; }
};

/// Throws Error(kMalformedInput) on missing or invalid fields and
/// SyntaxError on unparsable expressions.
CurveConfig parse_config(std::string_view toml_text);
CurveConfig load_config(const std::filesystem::path& path);

/// Builds the curve; `h_model` rescales y by 1/2.
SpectralCurve build_curve(const CurveConfig& config, bool h_model = false);

/// Stable 64-bit digest of every field that affects results, as 16 hex digits.
std::string config_hash(const CurveConfig& config, bool h_model = false);

}  // namespace spectral_rec
