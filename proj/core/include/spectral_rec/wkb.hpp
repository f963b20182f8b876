#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>

#include "spectral_rec/free_energy.hpp"

namespace spectral_rec {

/// Where an S_m came from.
enum class WKBSource { kFreeEnergies, kRecursion };

std::string_view to_string(WKBSource source);

/// dS0, dS1 and S_2..S_M. S_0 and S_1 are kept as differentials only.
struct WKBExpansion {
  std::shared_ptr<const SpectralCurve> curve;
  /// eta.
  OneForm dS0;
  /// -1/2 dy/y.
  OneForm dS1;
  std::map<int, RationalFunction> S;
  std::map<int, WKBSource> source;
  int order = 0;
};

struct QuantumCurveReport {
  /// s2(x) with y^2 + s2(x) = 0.
  RationalFunction s2;
  /// hbar^k coefficient of the conjugated Schroedinger equation as a function of z.
  std::map<int, RationalFunction> residuals;
  /// Largest k with all residuals through hbar^k identically zero, or -1.
  int verified_through = -1;
};

/// s2 as a rational function of x. Needs x of degree 2; throws
/// Error(kMode) otherwise and Error(kNotASpectralCurve) when y^2 does not
/// descend to the base.
RationalFunction s2_of_curve(const SpectralCurve& curve);

/// (eta, -1/2 dy/y), after checking S0'' + 2 S0' S1' = 0 in the x-chart at
/// `samples` points. Throws Error(kConsistency) on failure.
std::pair<OneForm, OneForm> build_s0_s1(const SpectralCurve& curve, int samples = 8, std::uint64_t seed = 1);

/// sum over 2g - 2 + n = m - 1 of F_{g,n}(z, ..., z)/n!.
RationalFunction sm_from_free_energies(const FreeEnergyTable& table, int m);

/// S_{m+1} from S_2..S_m:
/// S_{m+1}' = -(S_m'' + sum_{a+b=m+1, a,b>=2} S_a' S_b')/(2h) - (1/(2h))' S_m'.
RationalFunction sm_recursion_step(const WKBExpansion& expansion, int m);

/// S_m from the free energies while the table reaches level m - 1, then by
/// the recursion up to `order`. Needs a global involution.
WKBExpansion build_wkb(const FreeEnergyTable& table, int order);

/// dS_m/dx as a function of z, m >= 0.
RationalFunction x_derivative(const WKBExpansion& expansion, int m);

/// hbar^0 .. hbar^M coefficients of
/// sum_m hbar^{m+1} S_m'' + sum_{a,b} hbar^{a+b} S_a' S_b' + s2(x), derivatives in x.
QuantumCurveReport schrodinger_residuals(const WKBExpansion& expansion, int order);
/// As above; throws Error(kQuantizationFailure) on the first nonzero residual.
QuantumCurveReport verify_schrodinger(const WKBExpansion& expansion, int order);

/// Brute-force WKB in the x-chart: dS_m/dx for m = 0..M as power series in
/// x - x0, with every coefficient of degree < depth. Throws Error(kBadSheet)
/// when y0^2 != -s2(x0) and Error(kBadSample) at a zero or pole of s2.
std::map<int, LaurentSeries> ode_series_oracle(const RationalFunction& s2, const Rational& x0, const Rational& y0,
                                               int depth, int order);

/// The engine's dS_m/dx for m = 0..order expanded in x - x0 on the sheet
/// through (x0, y0), every coefficient of degree < depth.
std::map<int, LaurentSeries> x_chart_expansion(const WKBExpansion& expansion, const Rational& x0,
                                               const Rational& y0, int depth);

/// A regular point (x(z0), y(z0)) with small integer z0.
std::pair<Rational, Rational> default_base_point(const SpectralCurve& curve);

/// Two-path equality, pole orders 3m - 3, sigma-parity
/// S_m(sigma z) = (-1)^{m-1} S_m(z), consistency of S1, Schroedinger
/// residuals and the oracle comparison at the default base point.
VerificationReport verify_wkb(const FreeEnergyTable& table, const WKBExpansion& expansion, int oracle_depth = 12,
                              std::uint64_t seed = 1);

}  // namespace spectral_rec
