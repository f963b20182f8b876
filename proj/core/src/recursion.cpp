#include "spectral_rec/recursion.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <future>
#include <thread>

#include "spectral_rec/algebra.hpp"
#include "spectral_rec/error.hpp"

namespace spectral_rec {

namespace {

using SeriesMap = std::map<Slots, LaurentSeries>;

std::string gn(int g, int n) { return "(" + std::to_string(g) + "," + std::to_string(n) + ")"; }

/// Largest slot order allowed for W_{g,n}.
int order_bound(int g, int n) { return 2 * (3 * g - 2 + n); }

int min_valuation(const SeriesMap& m) {
  int v = LaurentSeries::kExact;
  for (const auto& [k, s] : m) v = std::min(v, s.valuation());
  return v;
}

/// sum_j a_j b_{-1-j}: the residue of a * b without forming the product.
Rational residue_of_product(const LaurentSeries& a, const LaurentSeries& b) {
  Rational acc = 0;
  if (a.is_zero() && a.is_exact()) return acc;
  if (b.is_zero() && b.is_exact()) return acc;
  const int lo = a.valuation();
  const int hi = -1 - b.valuation();
  for (int j = lo; j <= hi; ++j) {
    const Rational aj = a.coefficient(j);
    if (is_zero(aj)) continue;
    acc += aj * b.coefficient(-1 - j);
  }
  return acc;
}

/// Expansions of pole-basis forms around one active point, in its chart t,
/// at z = t and at z = sigma(t).
class LocalFrame {
 public:
  LocalFrame(const SpectralCurve& curve, int i, int precision)
      : curve_(curve), i_(i), n_(precision), point_(curve.active_points()[static_cast<std::size_t>(i)]) {
    s_ = curve.local_sigma(i, precision);
    ds_ = s_.derivative();
  }

  int precision() const { return n_; }
  const LaurentSeries& s() const { return s_; }
  const LaurentSeries& ds() const { return ds_; }

  const LaurentSeries& at_t(const PoleSlot& slot) {
    auto it = at_t_.find(slot);
    if (it != at_t_.end()) return it->second;
    LaurentSeries e;
    if (slot.point == i_) {
      e = LaurentSeries::monomial(1, -slot.order);
    } else {
      const Point& q = curve_.active_points()[static_cast<std::size_t>(slot.point)];
      e = series_expand(pullback_form(point_, basis_form(q, slot.order)), 0, n_);
    }
    return at_t_.emplace(slot, std::move(e)).first->second;
  }

  const LaurentSeries& at_s(const PoleSlot& slot) {
    auto it = at_s_.find(slot);
    if (it != at_s_.end()) return it->second;
    LaurentSeries e = at_t(slot).compose(s_, n_) * ds_;
    return at_s_.emplace(slot, std::move(e)).first->second;
  }

  /// (m + 1) t^m, or (m + 1) s^m s' when conjugated.
  LaurentSeries bergman_coefficient(int m, bool conjugated) {
    if (!conjugated) return LaurentSeries::monomial(m + 1, m);
    while (static_cast<int>(s_powers_.size()) <= m) {
      s_powers_.push_back(s_powers_.empty() ? ds_ : (s_powers_.back() * s_).truncated(n_));
    }
    return s_powers_[static_cast<std::size_t>(m)] * Rational(m + 1);
  }

  /// W_{0,2}(z, z_j) or W_{0,2}(sigma z, z_j) expanded in z_j's pole basis at
  /// this point, orders 2..m_max + 2.
  SeriesMap bergman_factor(int m_max, bool conjugated) {
    SeriesMap out;
    for (int m = 0; m <= m_max; ++m) out[{PoleSlot{i_, m + 2}}] = bergman_coefficient(m, conjugated);
    return out;
  }

  /// Slot 1 of w evaluated at t (or sigma t); remaining slots kept as keys.
  SeriesMap first_slot(const Correlator& w, bool conjugated) {
    SeriesMap out;
    for (const auto& [slots, c] : w.terms) {
      const LaurentSeries& e = conjugated ? at_s(slots[0]) : at_t(slots[0]);
      Slots rest(slots.begin() + 1, slots.end());
      auto it = out.find(rest);
      if (it == out.end()) {
        out.emplace(std::move(rest), e * c);
      } else {
        it->second += e * c;
      }
    }
    return out;
  }

  /// Slots 1 and 2 of w evaluated at t and sigma t.
  SeriesMap first_two_slots(const Correlator& w) {
    std::map<std::pair<PoleSlot, PoleSlot>, LaurentSeries> pair_cache;
    SeriesMap out;
    for (const auto& [slots, c] : w.terms) {
      const auto key = std::make_pair(slots[0], slots[1]);
      auto pit = pair_cache.find(key);
      if (pit == pair_cache.end()) pit = pair_cache.emplace(key, at_t(slots[0]) * at_s(slots[1])).first;
      Slots rest(slots.begin() + 2, slots.end());
      auto it = out.find(rest);
      if (it == out.end()) {
        out.emplace(std::move(rest), pit->second * c);
      } else {
        it->second += pit->second * c;
      }
    }
    return out;
  }

 private:
  const SpectralCurve& curve_;
  int i_;
  int n_;
  Point point_;
  LaurentSeries s_, ds_;
  std::map<PoleSlot, LaurentSeries> at_t_, at_s_;
  std::vector<LaurentSeries> s_powers_;
};

void accumulate(SeriesMap& into, const Slots& key, const LaurentSeries& value) {
  auto it = into.find(key);
  if (it == into.end()) {
    into.emplace(key, value);
  } else {
    it->second += value;
  }
}

/// Adds the products A(rest_I) B(rest_J) into the bracket, placing the two key
/// parts at the positions selected by `mask` (bits set for I).
void add_products(SeriesMap& bracket, const SeriesMap& a, const SeriesMap& b, unsigned mask, int width) {
  for (const auto& [ka, sa] : a) {
    for (const auto& [kb, sb] : b) {
      Slots key(static_cast<std::size_t>(width));
      std::size_t ia = 0, ib = 0;
      for (int pos = 0; pos < width; ++pos) {
        key[static_cast<std::size_t>(pos)] = (mask >> pos & 1U) ? ka[ia++] : kb[ib++];
      }
      accumulate(bracket, key, sa * sb);
    }
  }
}

/// One attempt of the residue recursion at working precision `precision`.
TermMap residue_pass(const CorrelatorTable& table, int g, int n, int precision) {
  const SpectralCurve& curve = table.curve();
  const int width = n - 1;
  TermMap result;
  for (int i = 0; i < static_cast<int>(curve.active_points().size()); ++i) {
    LocalFrame frame(curve, i, precision);
    SeriesMap bracket;

    if (g >= 1) {
      if (g == 1 && n == 1) {
        // W_{0,2}(z, sigma z) = s'(t) / (t - s(t))^2.
        const LaurentSeries diff = LaurentSeries::monomial(1, 1) - frame.s();
        accumulate(bracket, {}, frame.ds() * diff.pow(-2, precision));
      } else {
        const SeriesMap two = frame.first_two_slots(table.at(g - 1, n + 1));
        for (const auto& [k, v] : two) accumulate(bracket, k, v);
      }
    }

    for (unsigned mask = 0; mask < (1U << width); ++mask) {
      const int size_i = std::popcount(mask);
      const int size_j = width - size_i;
      for (int g1 = 0; g1 <= g; ++g1) {
        const int g2 = g - g1;
        const int n1 = size_i + 1, n2 = size_j + 1;
        if ((g1 == 0 && n1 == 1) || (g2 == 0 && n2 == 1)) continue;
        const bool b1 = g1 == 0 && n1 == 2;
        const bool b2 = g2 == 0 && n2 == 2;
        if (b1 && b2) {
          add_products(bracket, frame.bergman_factor(0, false), frame.bergman_factor(0, true), mask, width);
        } else if (b1) {
          const SeriesMap other = frame.first_slot(table.at(g2, n2), true);
          if (other.empty()) continue;
          add_products(bracket, frame.bergman_factor(std::max(0, -min_valuation(other)), false), other, mask, width);
        } else if (b2) {
          const SeriesMap other = frame.first_slot(table.at(g1, n1), false);
          if (other.empty()) continue;
          add_products(bracket, other, frame.bergman_factor(std::max(0, -min_valuation(other)), true), mask, width);
        } else {
          add_products(bracket, frame.first_slot(table.at(g1, n1), false), frame.first_slot(table.at(g2, n2), true),
                       mask, width);
        }
      }
    }

    int kmax = 0;
    for (const auto& [key, series] : bracket) kmax = std::max(kmax, 1 - series.valuation());
    if (kmax < 1) continue;
    const std::vector<LaurentSeries> kappa = kernel_coefficients(curve, i, kmax, precision);
    const Rational half(1, 2);
    for (const auto& [key, series] : bracket) {
      const int top = 1 - series.valuation();
      for (int k = 1; k <= top; ++k) {
        const Rational r = residue_of_product(kappa[static_cast<std::size_t>(k - 1)], series);
        if (is_zero(r)) continue;
        Slots slots;
        slots.reserve(static_cast<std::size_t>(n));
        slots.push_back(PoleSlot{i, k + 1});
        slots.insert(slots.end(), key.begin(), key.end());
        result[slots] += half * r;
      }
    }
  }
  std::erase_if(result, [](const auto& e) { return is_zero(e.second); });
  return result;
}

}  // namespace

int Correlator::max_order() const {
  int m = 0;
  for (const auto& [slots, c] : terms) {
    for (const auto& s : slots) m = std::max(m, s.order);
  }
  return m;
}

const Correlator& CorrelatorTable::at(int g, int n) const {
  const auto it = entries_.find({g, n});
  if (it == entries_.end()) throw Error(ErrorKind::kIncompleteTable, "W" + gn(g, n) + " has not been computed");
  return it->second;
}

void CorrelatorTable::insert(Correlator c) {
  const auto key = std::make_pair(c.g, c.n);
  entries_[key] = std::move(c);
}

int CorrelatorTable::complete_level() const {
  int level = 0;
  while (true) {
    for (const auto& [g, n] : level_members(level + 1)) {
      if (!contains(g, n)) return level;
    }
    ++level;
  }
}

std::vector<std::pair<int, int>> level_members(int level) {
  std::vector<std::pair<int, int>> out;
  if (level < 1) return out;
  for (int g = 0; 2 * g - 1 <= level; ++g) {
    const int n = level + 2 - 2 * g;
    if (n >= 1) out.emplace_back(g, n);
  }
  return out;
}

UnstableData unstable_w(const SpectralCurve& curve) { return UnstableData{curve.eta()}; }

Correlator project_form(const SpectralCurve& curve, const RationalFunction& f, int g) {
  Correlator out{g, 1, {}};
  std::vector<Rational> finite;
  int inf_index = -1;
  for (std::size_t i = 0; i < curve.active_points().size(); ++i) {
    const Point& p = curve.active_points()[i];
    if (p.infinite) {
      inf_index = static_cast<int>(i);
    } else {
      finite.push_back(p.value);
    }
  }
  const PartialFractions pf = partial_fractions(f, finite);
  for (const auto& [key, c] : pf.terms) {
    const int idx = curve.active_index(Point::finite(key.first));
    out.terms[{PoleSlot{idx, key.second}}] = c;
  }
  if (!pf.polynomial_part.is_zero()) {
    if (inf_index < 0) throw Error(ErrorKind::kUnexpectedPole, f.to_string() + " has a pole at infinity");
    // z^j dz = -(dt/t^{j+2}) with t = 1/z.
    const auto& coeffs = pf.polynomial_part.coeffs();
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (!is_zero(coeffs[j])) out.terms[{PoleSlot{inf_index, static_cast<int>(j) + 2}}] = -coeffs[j];
    }
  }
  return out;
}

Rational evaluate(const SpectralCurve& curve, const Correlator& w, const std::vector<Rational>& z) {
  if (static_cast<int>(z.size()) != w.n) throw Error(ErrorKind::kMalformedInput, "wrong number of coordinates");
  std::map<std::pair<std::size_t, PoleSlot>, Rational> cache;
  Rational total = 0;
  for (const auto& [slots, c] : w.terms) {
    Rational term = c;
    for (std::size_t j = 0; j < slots.size(); ++j) {
      auto key = std::make_pair(j, slots[j]);
      auto it = cache.find(key);
      if (it == cache.end()) {
        const Point& p = curve.active_points()[static_cast<std::size_t>(slots[j].point)];
        it = cache.emplace(key, basis_form_value(p, slots[j].order, z[j])).first;
      }
      term *= it->second;
    }
    total += term;
  }
  return total;
}

Correlator compute_wgn(const CorrelatorTable& table, int g, int n) {
  if (g < 0 || n < 1 || 2 * g - 2 + n < 1) {
    throw Error(ErrorKind::kUnsupportedOperation, "W" + gn(g, n) + " is not in the stable range");
  }
  const SpectralCurve& curve = table.curve();
  // Pole orders of the two bracket factors bound the Laurent depth needed.
  int precision = 2 * order_bound(g, n) + 8;
  const int cap = curve.mode() == Mode::kExact ? 1 << 12 : 2 * curve.series_order();
  while (true) {
    try {
      Correlator w{g, n, residue_pass(table, g, n, precision)};
      for (const auto& [slots, c] : w.terms) {
        for (std::size_t j = 0; j < slots.size(); ++j) {
          if (slots[j].order < 2 || slots[j].order > order_bound(g, n)) {
            throw Error(ErrorKind::kInvariantViolation,
                        "W" + gn(g, n) + " slot " + std::to_string(j + 1) + " has pole order " +
                            std::to_string(slots[j].order) + " outside [2, " + std::to_string(order_bound(g, n)) + "]");
          }
        }
      }
      return w;
    } catch (const InsufficientPrecision& e) {
      if (precision >= cap) {
        if (curve.mode() == Mode::kSeries) {
          throw InsufficientPrecision(curve.series_order(), "W" + gn(g, n) + ": series truncation too short");
        }
        throw;
      }
      precision = std::min(2 * precision, cap);
    }
  }
}

Correlator w11_closed_form(const SpectralCurve& curve) {
  if (!curve.involution()) throw Error(ErrorKind::kMode, "closed form needs a global involution");
  const RationalFunction f = bergman_on_involution(*curve.involution()) / (curve.h() * RationalFunction(2));
  return project_form(curve, f, 1);
}

Correlator compute_w11(const CorrelatorTable& table) {
  Correlator w = compute_wgn(table, 1, 1);
  if (table.curve().involution()) {
    Correlator closed;
    try {
      closed = w11_closed_form(table.curve());
    } catch (const Error& e) {
      throw Error(ErrorKind::kInternalConsistency, std::string("W(1,1) closed form leaves the pole basis: ") + e.what());
    }
    if (closed.terms != w.terms) {
      throw Error(ErrorKind::kInternalConsistency, "W(1,1): residue computation and closed form disagree");
    }
  }
  return w;
}

Rational w03_closed_form(const SpectralCurve& curve, const Rational& z1, const Rational& z2, const Rational& z3) {
  if (!curve.involution()) throw Error(ErrorKind::kMode, "closed form needs a global involution");
  const Mobius& sig = *curve.involution();
  const RationalFunction z = RationalFunction::variable();
  const RationalFunction sf = sig.as_function();
  const RationalFunction dsf = sf.derivative();
  const RationalFunction& h = curve.h();
  auto c = [](const Rational& v) { return RationalFunction(v); };

  const Rational s2 = sig.apply(z2), s3 = sig.apply(z3);
  const Rational first = (bergman(z1, z2) * bergman(z1, s3) * dsf(z3) + bergman(z1, z3) * bergman(z1, s2) * dsf(z2)) /
                         (2 * h(z1));

  // omega^{sigma(u)-u}(z1) as a function of u.
  const RationalFunction omega = (c(z1) - sf).reciprocal() - (c(z1) - z).reciprocal();
  // d/dz2 [ omega(z2) B(z2, sigma z3) / (2 eta(z2)) ]
  const RationalFunction second = omega * c(dsf(z3)) / ((z - c(s3)).pow(2) * h * c(2));
  // d/dz3 [ omega(z3) B(z2, sigma z3) / (2 eta(z3)) ]
  const RationalFunction third = omega * dsf / ((c(z2) - sf).pow(2) * h * c(2));
  return first + second.derivative()(z2) + third.derivative()(z3);
}

Correlator compute_w03(const CorrelatorTable& table, std::uint64_t seed) {
  Correlator w = compute_wgn(table, 0, 3);
  const SpectralCurve& curve = table.curve();
  if (curve.involution()) {
    for (const auto& z : generic_samples(curve, 3, 8, seed)) {
      if (evaluate(curve, w, z) != w03_closed_form(curve, z[0], z[1], z[2])) {
        throw Error(ErrorKind::kInternalConsistency,
                    "W(0,3): residue computation disagrees with the closed form (diagonal pole not cancelled)");
      }
    }
  }
  return w;
}

int default_thread_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SPECTRAL_REC_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) n = v;
  }
  return std::max(1, n);
}

CorrelatorTable compute_table(std::shared_ptr<const SpectralCurve> curve, int max_level, int threads,
                              std::uint64_t seed) {
  CorrelatorTable table(std::move(curve));
  threads = std::max(1, threads);
  for (int level = 1; level <= max_level; ++level) {
    const auto members = level_members(level);
    std::vector<Correlator> results(members.size());
    auto job = [&](std::size_t idx) {
      const auto [g, n] = members[idx];
      if (g == 1 && n == 1) return compute_w11(table);
      if (g == 0 && n == 3) return compute_w03(table, seed);
      return compute_wgn(table, g, n);
    };
    // Workers only read lower levels; entries are published after the barrier.
    for (std::size_t start = 0; start < members.size(); start += static_cast<std::size_t>(threads)) {
      const std::size_t stop = std::min(members.size(), start + static_cast<std::size_t>(threads));
      std::vector<std::future<Correlator>> futures;
      for (std::size_t idx = start + 1; idx < stop; ++idx) futures.push_back(std::async(std::launch::async, job, idx));
      results[start] = job(start);
      for (std::size_t idx = start + 1; idx < stop; ++idx) results[idx] = futures[idx - start - 1].get();
    }
    for (auto& r : results) table.insert(std::move(r));
  }
  return table;
}

bool VerificationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void VerificationReport::add(std::string name, bool passed, std::string detail) {
  checks.push_back(CheckResult{std::move(name), passed, std::move(detail)});
}

void VerificationReport::merge(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

std::map<int, Rational> sigma_pullback(const SpectralCurve& curve, int i, int k, bool forms) {
  const Point& p = curve.active_points()[static_cast<std::size_t>(i)];
  std::map<int, Rational> out;
  if (curve.involution()) {
    const RationalFunction s = chart_involution(p, *curve.involution());
    const RationalFunction f = forms ? s.derivative() * s.pow(-k) : s.pow(-k);
    const PartialFractions pf = partial_fractions(f, {Rational(0)});
    for (const auto& [key, c] : pf.terms) out[key.second] = c;
    const Polynomial& poly = pf.polynomial_part;
    if (poly.degree() > 0 || (forms && !poly.is_zero())) {
      throw Error(ErrorKind::kUnexpectedPole, "pullback of the basis element leaves the pole basis");
    }
    if (!poly.is_zero()) out[0] = poly.coeff(0);
    return out;
  }
  // Principal part only: the local involution determines nothing else.
  const LaurentSeries s = curve.local_sigma(i, k + 2);
  LaurentSeries f = s.pow(-k, k + 2);
  if (forms) f = f * s.derivative();
  for (int j = 1; j <= k; ++j) {
    const Rational c = f.coefficient(-j);
    if (!is_zero(c)) out[j] = c;
  }
  return out;
}

VerificationReport verify_correlators(const CorrelatorTable& table) {
  VerificationReport report;
  const SpectralCurve& curve = table.curve();
  const int npts = static_cast<int>(curve.active_points().size());
  const bool global = curve.involution().has_value();
  std::map<std::pair<int, int>, std::map<int, Rational>> pullbacks;

  for (const auto& [key, w] : table.entries()) {
    const std::string name = gn(w.g, w.n);

    // Permutation symmetry: transpositions (1 j) generate the symmetric group.
    std::string sym_detail;
    for (const auto& [slots, c] : w.terms) {
      for (std::size_t j = 1; j < slots.size() && sym_detail.empty(); ++j) {
        Slots swapped = slots;
        std::swap(swapped[0], swapped[j]);
        const auto it = w.terms.find(swapped);
        if (it == w.terms.end() || it->second != c) {
          sym_detail = "permutation symmetry violated at " + name + " slots 1," + std::to_string(j + 1);
        }
      }
      if (!sym_detail.empty()) break;
    }
    report.add("symmetry W" + name, sym_detail.empty(), sym_detail);

    std::string sup_detail;
    for (const auto& [slots, c] : w.terms) {
      for (std::size_t j = 0; j < slots.size(); ++j) {
        const auto& s = slots[j];
        if (s.point < 0 || s.point >= npts || s.order < 2 || s.order > order_bound(w.g, w.n)) {
          sup_detail = "pole support violated at " + name + " slot " + std::to_string(j + 1);
        }
      }
      if (static_cast<int>(slots.size()) != w.n) sup_detail = "wrong arity at " + name;
      if (!sup_detail.empty()) break;
    }
    report.add("support W" + name, sup_detail.empty(), sup_detail);

    for (int j = 0; j < w.n; ++j) {
      std::string detail;
      try {
        if (global) {
          TermMap sum = w.terms;
          for (const auto& [slots, c] : w.terms) {
            const auto pk = std::make_pair(slots[static_cast<std::size_t>(j)].point,
                                           slots[static_cast<std::size_t>(j)].order);
            auto it = pullbacks.find(pk);
            if (it == pullbacks.end()) it = pullbacks.emplace(pk, sigma_pullback(curve, pk.first, pk.second, true)).first;
            for (const auto& [order, coef] : it->second) {
              Slots img = slots;
              img[static_cast<std::size_t>(j)].order = order;
              sum[img] += c * coef;
            }
          }
          for (const auto& [slots, c] : sum) {
            if (!is_zero(c)) {
              detail = "balanced average violated at " + name + " slot " + std::to_string(j + 1);
              break;
            }
          }
        } else {
          // Principal part of W(t) + W(sigma t) in slot j at each active point.
          TermMap principal;
          for (const auto& [slots, c] : w.terms) {
            const PoleSlot s = slots[static_cast<std::size_t>(j)];
            const auto pk = std::make_pair(s.point, s.order);
            auto it = pullbacks.find(pk);
            if (it == pullbacks.end()) it = pullbacks.emplace(pk, sigma_pullback(curve, s.point, s.order, true)).first;
            principal[slots] += c;
            for (const auto& [order, coef] : it->second) {
              Slots img = slots;
              img[static_cast<std::size_t>(j)].order = order;
              principal[img] += c * coef;
            }
          }
          for (const auto& [slots, c] : principal) {
            if (!is_zero(c)) {
              detail = "balanced average (principal part) violated at " + name + " slot " + std::to_string(j + 1);
              break;
            }
          }
        }
      } catch (const Error& e) {
        detail = "balanced average violated at " + name + " slot " + std::to_string(j + 1) + ": " + e.what();
      }
      report.add("balanced average W" + name + " slot " + std::to_string(j + 1), detail.empty(), detail);
    }
  }
  return report;
}

void require(const VerificationReport& report) {
  for (const auto& c : report.checks) {
    if (!c.passed) throw Error(ErrorKind::kInvariantViolation, c.name + ": " + c.detail);
  }
}

}  // namespace spectral_rec
