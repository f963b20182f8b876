#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "spectral_rec/recursion.hpp"

namespace spectral_rec {

/// F_{g,n} over the function basis 1/t^k (k >= 1) of the active points.
struct FreeEnergy {
  int g = 0;
  int n = 0;
  TermMap terms;

  int level() const { return 2 * g - 2 + n; }
  friend bool operator==(const FreeEnergy&, const FreeEnergy&) = default;
};

class FreeEnergyTable {
 public:
  explicit FreeEnergyTable(std::shared_ptr<const SpectralCurve> curve) : curve_(std::move(curve)) {}

  const SpectralCurve& curve() const { return *curve_; }
  const std::shared_ptr<const SpectralCurve>& curve_ptr() const { return curve_; }
  bool contains(int g, int n) const { return entries_.count({g, n}) != 0; }
  /// Throws Error(kUnsupportedOperation) for (0, 2) and Error(kIncompleteTable)
  /// for anything not yet integrated.
  const FreeEnergy& at(int g, int n) const;
  void insert(FreeEnergy f);
  const std::map<std::pair<int, int>, FreeEnergy>& entries() const { return entries_; }

 private:
  std::shared_ptr<const SpectralCurve> curve_;
  std::map<std::pair<int, int>, FreeEnergy> entries_;
};

/// Slot-wise primitive with zero constants, then the fiber normalization
/// check. Throws Error(kLogarithmicTerm) on a simple pole and
/// Error(kNormalization) when the normalization fails.
FreeEnergy integrate_correlator(const SpectralCurve& curve, const Correlator& w);

/// d_1 ... d_n F.
Correlator differentiate(const FreeEnergy& f);

/// Fiber normalization: F + (sigma pullback in slot j) = 0 for every slot.
/// Without a global involution only principal parts are compared.
VerificationReport verify_normalization(const SpectralCurve& curve, const FreeEnergy& f);

FreeEnergyTable integrate_table(const CorrelatorTable& table);

/// Value of F at z, differentiated once in each slot j with diff[j] set.
Rational evaluate(const SpectralCurve& curve, const FreeEnergy& f, const std::vector<Rational>& z,
                  const std::vector<bool>& diff);

/// dz1-coefficient of d_1 F_{g,n} at z from the stored free energy.
Rational dF_direct(const FreeEnergyTable& table, int g, int n, const std::vector<Rational>& z);

/// dz1-coefficient of d_1 F_{g,n} at z from the differential recursion
/// over lower free energies (levels >= 2). For (1,1) the unstable term is
/// read at the level of W_{0,2}, with W_{0,2}(z, z) replaced by
/// -W_{0,2}(z, sigma z). Needs a global involution. Throws
/// Error(kBadSample) on excluded points.
Rational dF_differential_recursion(const FreeEnergyTable& table, int g, int n, const std::vector<Rational>& z);

/// F(z, ..., z) (derivative_slots = 0), n [d_u F(u, z, ..., z)]_{u=z} (1),
/// or n(n-1) [d_u1 d_u2 F(u1, u2, z, ..., z)]_{u=z} (2).
RationalFunction diagonal_specialize(const SpectralCurve& curve, const FreeEnergy& f, int derivative_slots);

/// Round trip, normalization, cross-path at `samples` points per (g, n),
/// and the diagonal pole order 6g - 6 + 3n.
VerificationReport verify_free_energies(const CorrelatorTable& w, const FreeEnergyTable& f, int samples = 20,
                                        std::uint64_t seed = 1);

}  // namespace spectral_rec
