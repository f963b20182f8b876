#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "spectral_rec/curve.hpp"

namespace spectral_rec {

/// Basis element attached to one slot: in the chart t at active point
/// `point`, the form dt/t^order (correlators) or the function 1/t^order
/// (free energies).
struct PoleSlot {
  int point = 0;
  int order = 1;
  friend auto operator<=>(const PoleSlot&, const PoleSlot&) = default;
};

using Slots = std::vector<PoleSlot>;
using TermMap = std::map<Slots, Rational>;

/// W_{g,n} as a tensor over the pole basis, every ordered slot tuple stored.
struct Correlator {
  int g = 0;
  int n = 0;
  TermMap terms;

  int level() const { return 2 * g - 2 + n; }
  int max_order() const;
  friend bool operator==(const Correlator&, const Correlator&) = default;
};

/// Stable correlators by (g, n), filled level by level.
class CorrelatorTable {
 public:
  explicit CorrelatorTable(std::shared_ptr<const SpectralCurve> curve) : curve_(std::move(curve)) {}

  const SpectralCurve& curve() const { return *curve_; }
  std::shared_ptr<const SpectralCurve> curve_ptr() const { return curve_; }

  bool contains(int g, int n) const { return entries_.count({g, n}) != 0; }
  /// Throws Error(kIncompleteTable) when absent.
  const Correlator& at(int g, int n) const;
  void insert(Correlator c);
  const std::map<std::pair<int, int>, Correlator>& entries() const { return entries_; }
  /// Highest level whose every stable (g, n) is present.
  int complete_level() const;

 private:
  std::shared_ptr<const SpectralCurve> curve_;
  std::map<std::pair<int, int>, Correlator> entries_;
};

/// Stable (g, n) with 2g - 2 + n = level, ordered by g.
std::vector<std::pair<int, int>> level_members(int level);

struct UnstableData {
  OneForm w01;
};

/// W_{0,1} = eta. W_{0,2} is the genus-0 Bergman kernel (see bergman()).
UnstableData unstable_w(const SpectralCurve& curve);

/// Rewrites f(z) dz in the pole basis of the curve's active points.
/// Throws Error(kUnexpectedPole) for poles elsewhere.
Correlator project_form(const SpectralCurve& curve, const RationalFunction& f, int g);

/// dz1...dzn coefficient of the tensor at the given point.
Rational evaluate(const SpectralCurve& curve, const Correlator& w, const std::vector<Rational>& z);

/// Residue recursion for any stable (g, n); lower levels must be in `table`.
Correlator compute_wgn(const CorrelatorTable& table, int g, int n);

/// W_{1,1} by residues, checked against B(z, sigma z)/(2 eta).
Correlator compute_w11(const CorrelatorTable& table);

/// W_{0,3} by residues, checked pointwise against the closed form with
/// apparent diagonal poles.
Correlator compute_w03(const CorrelatorTable& table, std::uint64_t seed = 1);

/// B(z, sigma z)/(2 eta) in the pole basis (needs a global involution).
Correlator w11_closed_form(const SpectralCurve& curve);

/// The closed-form three-point expression evaluated at a point.
Rational w03_closed_form(const SpectralCurve& curve, const Rational& z1, const Rational& z2, const Rational& z3);

/// Fills all stable (g, n) with level <= max_level. Entries within a level
/// are computed concurrently on up to `threads` workers.
CorrelatorTable compute_table(std::shared_ptr<const SpectralCurve> curve, int max_level, int threads = 1,
                              std::uint64_t seed = 1);

/// Worker cap from SPECTRAL_REC_THREADS (default: hardware concurrency).
int default_thread_count();

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool ok() const;
  void add(std::string name, bool passed, std::string detail = {});
  void merge(const VerificationReport& other);
};

/// Per-slot basis change under the deck transformation in the chart at
/// active point i: sigma^* (dt/t^k) = sum_j c_j dt/t^j. Entries with j = 0
/// never occur for forms; for functions (forms = false) order 0 is the
/// constant function. Throws Error(kUnexpectedPole) when the image leaves
/// the basis (k = 1 for forms).
std::map<int, Rational> sigma_pullback(const SpectralCurve& curve, int i, int k, bool forms);

/// Permutation symmetry, pole support and the balanced-average property.
VerificationReport verify_correlators(const CorrelatorTable& table);

/// Throws Error(kInvariantViolation) naming the first failed check.
void require(const VerificationReport& report);

}  // namespace spectral_rec
