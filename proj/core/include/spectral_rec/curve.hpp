#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spectral_rec/laurent_series.hpp"
#include "spectral_rec/rational_function.hpp"

namespace spectral_rec {

enum class Mode { kExact, kSeries };

std::string_view to_string(Mode mode);

/// A point of the z-sphere: a rational number or infinity.
struct Point {
  bool infinite = false;
  Rational value = 0;

  static Point finite(Rational v) { return Point{false, std::move(v)}; }
  static Point infinity() { return Point{true, 0}; }

  friend bool operator==(const Point& a, const Point& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
  /// Finite points ascending, infinity last.
  friend bool operator<(const Point& a, const Point& b) {
    if (a.infinite || b.infinite) return !a.infinite && b.infinite;
    return a.value < b.value;
  }
};

/// "inf" or the rational value.
std::string to_string(const Point& p);
Point parse_point(std::string_view text);

// Local charts. At a finite point p the chart variable is t = z - p; at
// infinity it is t = 1/z. Every chart sends its point to t = 0.

/// z as a function of the chart variable t.
RationalFunction chart_map(const Point& p);
/// f(z(t)).
RationalFunction pullback_function(const Point& p, const RationalFunction& f);
/// Coefficient of dt in the pullback of f(z) dz.
RationalFunction pullback_form(const Point& p, const RationalFunction& f);
/// Order of vanishing of f at p (negative for a pole).
int function_order(const Point& p, const RationalFunction& f);
/// Order of vanishing of f(z) dz at p.
int form_order(const Point& p, const RationalFunction& f);

/// dz-coefficient of the basis form dt/t^k in the chart at p.
RationalFunction basis_form(const Point& p, int k);
/// The basis function 1/t^k in the chart at p, as a function of z.
RationalFunction basis_function(const Point& p, int k);
/// Exact values of the two basis elements at a finite z (dz-coefficient for forms).
Rational basis_form_value(const Point& p, int k, const Rational& z);
Rational basis_function_value(const Point& p, int k, const Rational& z);
/// d/dz of basis_function(p, k) at z.
Rational basis_function_derivative(const Point& p, int k, const Rational& z);

/// z -> (a z + b)/(c z + d).
struct Mobius {
  Rational a = 1, b = 0, c = 0, d = 1;

  Point operator()(const Point& p) const;
  RationalFunction as_function() const;
  /// Exact value; throws Error(kPoleEvaluation) where the image is infinity.
  Rational apply(const Rational& z) const;
  bool is_identity() const;
};

/// The involution in the chart at a fixed point p of sigma, as a function of t.
RationalFunction chart_involution(const Point& p, const Mobius& sigma);

/// f(z) dz.
struct OneForm {
  RationalFunction fn;
};

struct RamPoint {
  Point location;
  /// True iff eta vanishes to order exactly 2 here.
  bool active = false;
  /// Order of vanishing of eta at the point.
  int eta_order = 0;
};

/// A rational spectral curve x(z), y(z) with eta = y dx = h(z) dz.
///
/// Pole-basis indices refer to positions in active_points(). In EXACT mode
/// the deck transformation is a global Mobius map; in SERIES mode each active
/// point carries the local involution as a truncated series in its chart.
class SpectralCurve {
 public:
  const RationalFunction& x() const { return x_; }
  const RationalFunction& y() const { return y_; }
  /// eta = h dz.
  const RationalFunction& h() const { return h_; }
  OneForm eta() const { return OneForm{h_}; }
  Mode mode() const { return mode_; }
  int series_order() const { return series_order_; }

  const std::vector<RamPoint>& ram_points() const { return ram_; }
  const std::vector<Point>& active_points() const { return active_; }
  /// Index of p in active_points(), or -1.
  int active_index(const Point& p) const;

  /// The global involution (EXACT mode, or any curve whose x has degree 2).
  const std::optional<Mobius>& involution() const { return sigma_; }

  /// s(t) = sigma(t) in the chart of active point i, known below degree `precision`.
  LaurentSeries local_sigma(int i, int precision) const;
  /// H(t) with eta = H(t) dt in the chart of active point i.
  const RationalFunction& local_h(int i) const { return local_h_[static_cast<std::size_t>(i)]; }

 private:
  friend SpectralCurve build_curve(const RationalFunction&, const RationalFunction&, Mode, int);
  RationalFunction x_, y_, h_;
  Mode mode_ = Mode::kExact;
  int series_order_ = 0;
  std::vector<RamPoint> ram_;
  std::vector<Point> active_;
  std::optional<Mobius> sigma_;
  std::vector<RationalFunction> local_sigma_exact_;
  std::vector<LaurentSeries> local_sigma_series_;
  std::vector<RationalFunction> local_h_;
};

/// Finds ramification points (including infinity), decides which are active,
/// and sets up the involution. `series_order` is the truncation order of the
/// local involutions in SERIES mode and is ignored in EXACT mode.
SpectralCurve build_curve(const RationalFunction& x, const RationalFunction& y, Mode mode, int series_order = 16);

/// The involution of a degree-2 map, or nullopt when x has another degree.
std::optional<Mobius> degree_two_involution(const RationalFunction& x);

/// Tuples of `n` rational points, deterministic in `seed`, avoiding
/// ramification points, zeros and poles of x, x', y and h, coincident
/// coordinates and conjugate pairs z_i = sigma(z_j).
std::vector<std::vector<Rational>> generic_samples(const SpectralCurve& curve, int n, int count, std::uint64_t seed);
/// Throws Error(kBadSample) when z meets an excluded locus.
void check_sample(const SpectralCurve& curve, const std::vector<Rational>& z);

/// omega^{a-b}(z) = (1/(z - a) - 1/(z - b)) dz.
OneForm cauchy_kernel(const Rational& a, const Rational& b);

/// Coefficient of dz1 dz2 in the genus-0 kernel dz1 dz2/(z1 - z2)^2.
Rational bergman(const Rational& z1, const Rational& z2);

/// B(z, sigma(z)) as a quadratic differential f(z) dz^2.
RationalFunction bergman_on_involution(const Mobius& sigma);

/// dz1-coefficient of K(z, z1) per dz, evaluated exactly (EXACT mode):
/// omega^{sigma(z)-z}(z1) / (sigma^*eta(z) - eta(z)).
Rational kernel_value(const SpectralCurve& curve, const Rational& z, const Rational& z1);

/// Local form of the recursion kernel at active point i:
/// K(t, z1) = sum_{k>=1} kappa_k(t) dt^{-1} * (basis form of order k+1 at the point in z1).
/// Returns kappa_1..kappa_kmax, each known below degree `precision` - 2.
std::vector<LaurentSeries> kernel_coefficients(const SpectralCurve& curve, int i, int kmax, int precision);

}  // namespace spectral_rec
