#include "spectral_rec/free_energy.hpp"

#include <algorithm>

#include "spectral_rec/error.hpp"

namespace spectral_rec {

namespace {

std::string gn(int g, int n) { return "(" + std::to_string(g) + "," + std::to_string(n) + ")"; }

bool stable(int g, int n) { return g >= 0 && n >= 1 && 2 * g - 2 + n > 0; }

std::vector<Rational> without(const std::vector<Rational>& z, std::size_t skip) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i != skip) out.push_back(z[i]);
  }
  return out;
}

/// One diagonal monomial c * z^b * prod (z - p)^{-a_p}.
struct DiagonalTerm {
  Rational c;
  int z_power = 0;
  std::map<int, int> pole_powers;
};

}  // namespace

const FreeEnergy& FreeEnergyTable::at(int g, int n) const {
  if (g == 0 && n == 2) throw Error(ErrorKind::kUnsupportedOperation, "F(0,2) is not constructed");
  const auto it = entries_.find({g, n});
  if (it == entries_.end()) throw Error(ErrorKind::kIncompleteTable, "F" + gn(g, n) + " has not been computed");
  return it->second;
}

void FreeEnergyTable::insert(FreeEnergy f) {
  const auto key = std::make_pair(f.g, f.n);
  entries_[key] = std::move(f);
}

FreeEnergy integrate_correlator(const SpectralCurve& curve, const Correlator& w) {
  if (!stable(w.g, w.n)) throw Error(ErrorKind::kUnsupportedOperation, "F" + gn(w.g, w.n) + " is not constructed");
  FreeEnergy f{w.g, w.n, {}};
  for (const auto& [slots, c] : w.terms) {
    Slots out = slots;
    Rational coef = c;
    for (std::size_t j = 0; j < slots.size(); ++j) {
      const int k = slots[j].order;
      if (k < 2) {
        throw Error(ErrorKind::kLogarithmicTerm,
                    "W" + gn(w.g, w.n) + " has a simple pole in slot " + std::to_string(j + 1));
      }
      // d(1/t^{k-1}) = -(k-1) dt/t^k.
      coef /= -(k - 1);
      out[j].order = k - 1;
    }
    f.terms[out] = coef;
  }
  const VerificationReport rep = verify_normalization(curve, f);
  for (const auto& c : rep.checks) {
    if (!c.passed) throw Error(ErrorKind::kNormalization, c.detail);
  }
  return f;
}

Correlator differentiate(const FreeEnergy& f) {
  Correlator w{f.g, f.n, {}};
  for (const auto& [slots, c] : f.terms) {
    Slots out = slots;
    Rational coef = c;
    for (auto& s : out) {
      coef *= -s.order;
      ++s.order;
    }
    w.terms[out] = coef;
  }
  return w;
}

VerificationReport verify_normalization(const SpectralCurve& curve, const FreeEnergy& f) {
  VerificationReport report;
  const bool global = curve.involution().has_value();
  std::map<std::pair<int, int>, std::map<int, Rational>> pullbacks;
  for (int j = 0; j < f.n; ++j) {
    std::string detail;
    try {
      TermMap sum = f.terms;
      for (const auto& [slots, c] : f.terms) {
        const PoleSlot s = slots[static_cast<std::size_t>(j)];
        const auto pk = std::make_pair(s.point, s.order);
        auto it = pullbacks.find(pk);
        if (it == pullbacks.end()) it = pullbacks.emplace(pk, sigma_pullback(curve, s.point, s.order, false)).first;
        for (const auto& [order, coef] : it->second) {
          Slots img = slots;
          img[static_cast<std::size_t>(j)].order = order;
          sum[img] += c * coef;
        }
      }
      for (const auto& [slots, c] : sum) {
        if (!is_zero(c)) {
          detail = std::string(global ? "fiber normalization" : "fiber normalization (principal part)") +
                   " violated at " + gn(f.g, f.n) + " slot " + std::to_string(j + 1);
          break;
        }
      }
    } catch (const Error& e) {
      detail = "fiber normalization violated at " + gn(f.g, f.n) + " slot " + std::to_string(j + 1) + ": " + e.what();
    }
    report.add("normalization F" + gn(f.g, f.n) + " slot " + std::to_string(j + 1), detail.empty(), detail);
  }
  return report;
}

FreeEnergyTable integrate_table(const CorrelatorTable& table) {
  FreeEnergyTable out(table.curve_ptr());
  for (const auto& [key, w] : table.entries()) out.insert(integrate_correlator(table.curve(), w));
  return out;
}

Rational evaluate(const SpectralCurve& curve, const FreeEnergy& f, const std::vector<Rational>& z,
                  const std::vector<bool>& diff) {
  if (static_cast<int>(z.size()) != f.n || diff.size() != z.size()) {
    throw Error(ErrorKind::kMalformedInput, "wrong number of coordinates");
  }
  std::map<std::pair<std::size_t, PoleSlot>, Rational> cache;
  Rational total = 0;
  for (const auto& [slots, c] : f.terms) {
    Rational term = c;
    for (std::size_t j = 0; j < slots.size(); ++j) {
      auto key = std::make_pair(j, slots[j]);
      auto it = cache.find(key);
      if (it == cache.end()) {
        const Point& p = curve.active_points()[static_cast<std::size_t>(slots[j].point)];
        const Rational v = diff[j] ? basis_function_derivative(p, slots[j].order, z[j])
                                   : basis_function_value(p, slots[j].order, z[j]);
        it = cache.emplace(key, v).first;
      }
      term *= it->second;
    }
    total += term;
  }
  return total;
}

Rational dF_direct(const FreeEnergyTable& table, int g, int n, const std::vector<Rational>& z) {
  std::vector<bool> diff(z.size(), false);
  diff[0] = true;
  return evaluate(table.curve(), table.at(g, n), z, diff);
}

Rational dF_differential_recursion(const FreeEnergyTable& table, int g, int n, const std::vector<Rational>& z) {
  const SpectralCurve& curve = table.curve();
  if (!curve.involution()) throw Error(ErrorKind::kMode, "the differential recursion needs a global involution");
  if (!stable(g, n) || static_cast<int>(z.size()) != n) {
    throw Error(ErrorKind::kUnsupportedOperation, "differential recursion requested for " + gn(g, n));
  }
  if (g == 0 && n == 3) {
    throw Error(ErrorKind::kUnsupportedOperation, "the differential recursion starts at level 2 for genus 0");
  }
  check_sample(curve, z);
  const Mobius& sigma = *curve.involution();
  const RationalFunction& h = curve.h();
  const Rational& z1 = z[0];
  const Rational h1 = h(z1);

  if (g == 1 && n == 1) {
    // -(1/(2 eta)) * (-B(z1, sigma z1)).
    const Rational s1 = sigma.apply(z1);
    const Rational ds = (sigma.a * sigma.d - sigma.b * sigma.c) / ((sigma.c * z1 + sigma.d) * (sigma.c * z1 + sigma.d));
    return bergman(z1, s1) * ds / (2 * h1);
  }

  Rational rhs = 0;
  for (std::size_t j = 1; j < z.size(); ++j) {
    const Rational& zj = z[j];
    // omega^{zj - sigma(zj)}(z1)
    const Rational omega = 1 / (z1 - zj) - 1 / (z1 - sigma.apply(zj));
    const FreeEnergy& lower = table.at(g, n - 1);
    std::vector<bool> d_first(static_cast<std::size_t>(n - 1), false);
    d_first[0] = true;
    const Rational a = evaluate(curve, lower, without(z, j), d_first);
    std::vector<bool> d_j(static_cast<std::size_t>(n - 1), false);
    d_j[j - 1] = true;
    const Rational b = evaluate(curve, lower, without(z, 0), d_j);
    rhs -= omega / (2 * h1) * a - omega / (2 * h(zj)) * b;
  }

  Rational second = 0;
  const std::vector<Rational> rest = without(z, 0);
  if (g >= 1) {
    std::vector<Rational> u = {z1, z1};
    u.insert(u.end(), rest.begin(), rest.end());
    std::vector<bool> d(u.size(), false);
    d[0] = d[1] = true;
    second += evaluate(curve, table.at(g - 1, n + 1), u, d);
  }
  const int width = n - 1;
  for (unsigned mask = 0; mask < (1U << width); ++mask) {
    std::vector<Rational> zi = {z1}, zj = {z1};
    for (int pos = 0; pos < width; ++pos) {
      ((mask >> pos) & 1U ? zi : zj).push_back(rest[static_cast<std::size_t>(pos)]);
    }
    for (int g1 = 0; g1 <= g; ++g1) {
      const int g2 = g - g1;
      const int n1 = static_cast<int>(zi.size()), n2 = static_cast<int>(zj.size());
      if (!stable(g1, n1) || !stable(g2, n2) || (g1 == 0 && n1 == 2) || (g2 == 0 && n2 == 2)) continue;
      std::vector<bool> di(zi.size(), false), dj(zj.size(), false);
      di[0] = dj[0] = true;
      second += evaluate(curve, table.at(g1, n1), zi, di) * evaluate(curve, table.at(g2, n2), zj, dj);
    }
  }
  rhs -= second / (2 * h1);
  return rhs;
}

RationalFunction diagonal_specialize(const SpectralCurve& curve, const FreeEnergy& f, int derivative_slots) {
  if (derivative_slots < 0 || derivative_slots > 2 || derivative_slots > f.n) {
    throw Error(ErrorKind::kUnsupportedOperation, "diagonal specialization supports 0, 1 or 2 derivative slots");
  }
  Rational weight = 1;
  for (int i = 0; i < derivative_slots; ++i) weight *= f.n - i;

  std::vector<DiagonalTerm> terms;
  std::map<int, int> max_power;
  int inf_index = -1;
  for (std::size_t i = 0; i < curve.active_points().size(); ++i) {
    if (curve.active_points()[i].infinite) inf_index = static_cast<int>(i);
  }
  for (const auto& [slots, c] : f.terms) {
    DiagonalTerm t{c * weight, 0, {}};
    for (std::size_t j = 0; j < slots.size(); ++j) {
      const int k = slots[j].order;
      const bool d = static_cast<int>(j) < derivative_slots;
      if (slots[j].point == inf_index) {
        // z^k, or k z^{k-1}
        if (d) t.c *= k;
        t.z_power += d ? k - 1 : k;
      } else {
        // (z-p)^{-k}, or -k (z-p)^{-k-1}
        if (d) t.c *= -k;
        t.pole_powers[slots[j].point] += d ? k + 1 : k;
      }
    }
    for (const auto& [p, a] : t.pole_powers) max_power[p] = std::max(max_power[p], a);
    terms.push_back(std::move(t));
  }

  Polynomial den = Polynomial::constant(1);
  std::map<int, std::vector<Polynomial>> powers;
  for (const auto& [p, a] : max_power) {
    const Polynomial lin = Polynomial::linear_factor(curve.active_points()[static_cast<std::size_t>(p)].value);
    auto& pw = powers[p];
    pw.push_back(Polynomial::constant(1));
    for (int e = 1; e <= a; ++e) pw.push_back(pw.back() * lin);
    den *= pw.back();
  }
  std::map<std::vector<int>, Rational> grouped;
  for (const auto& t : terms) {
    std::vector<int> key = {t.z_power};
    for (const auto& [p, a] : max_power) {
      const auto it = t.pole_powers.find(p);
      key.push_back(a - (it == t.pole_powers.end() ? 0 : it->second));
    }
    grouped[key] += t.c;
  }
  Polynomial num;
  for (const auto& [key, c] : grouped) {
    if (is_zero(c)) continue;
    Polynomial term = Polynomial::monomial(c, key[0]);
    std::size_t idx = 1;
    for (const auto& [p, a] : max_power) term *= powers[p][static_cast<std::size_t>(key[idx++])];
    num += term;
  }
  return normalize(num, den);
}

VerificationReport verify_free_energies(const CorrelatorTable& wtable, const FreeEnergyTable& ftable, int samples,
                                        std::uint64_t seed) {
  VerificationReport report;
  const SpectralCurve& curve = wtable.curve();
  for (const auto& [key, f] : ftable.entries()) {
    const std::string name = gn(f.g, f.n);
    const bool round_trip = wtable.contains(f.g, f.n) && differentiate(f).terms == wtable.at(f.g, f.n).terms;
    report.add("round trip F" + name, round_trip, round_trip ? "" : "d_1...d_n F" + name + " differs from W" + name);
    report.merge(verify_normalization(curve, f));

    const RationalFunction diag = diagonal_specialize(curve, f, 0);
    const int expected = 6 * f.g - 6 + 3 * f.n;
    std::string pole_detail;
    for (const Point& p : curve.active_points()) {
      const int ord = -function_order(p, diag);
      if (ord != expected) {
        pole_detail = "diagonal pole order of F" + name + " at z = " + to_string(p) + " is " + std::to_string(ord) +
                      ", expected " + std::to_string(expected);
      }
    }
    report.add("diagonal pole order F" + name, pole_detail.empty(), pole_detail);

    if (!curve.involution()) continue;
    std::string cross_detail;
    const auto points = generic_samples(curve, f.n, samples, seed + static_cast<std::uint64_t>(131 * f.g + f.n));
    for (const auto& z : points) {
      bool equal = false;
      if (f.g == 0 && f.n == 3) {
        equal = evaluate(curve, differentiate(f), z) == w03_closed_form(curve, z[0], z[1], z[2]);
      } else {
        equal = dF_differential_recursion(ftable, f.g, f.n, z) == dF_direct(ftable, f.g, f.n, z);
      }
      if (!equal) {
        cross_detail = "differential recursion disagrees with the integrated F" + name + " at a sample point";
        break;
      }
    }
    report.add("cross path F" + name + " (" + std::to_string(points.size()) + " samples)", cross_detail.empty(),
               cross_detail);
  }
  return report;
}

}  // namespace spectral_rec
