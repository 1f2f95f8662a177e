#pragma once

// Independent reference implementations used by the unit and acceptance tests.
// They work from the definitions, through public accessors only, and favour
// plain loops over speed.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ptlab/families/bb15.hpp"
#include "ptlab/families/mono.hpp"
#include "ptlab/families/unate.hpp"
#include "ptlab/sigoracle/signature.hpp"
#include "ptlab/sigoracle/unate_transcript.hpp"

namespace ptlab::oracle {

inline bool all_ones_on(const BitString& x, const std::vector<std::uint32_t>& vars) {
  for (auto k : vars)
    if (!x.get(k)) return false;
  return true;
}

inline bool all_zeros_on(const BitString& x, const std::vector<std::uint32_t>& vars) {
  for (auto k : vars)
    if (x.get(k)) return false;
  return true;
}

inline int band_side(double center, double radius, double w) {
  if (w < center - radius) return -1;
  if (w > center + radius) return 1;
  return 0;
}

// Two-level rule, straight from the case list.
inline bool mono_eval(const MonoInstance& f, const BitString& x) {
  const double n = f.n();
  const int side = band_side(n / 2, std::sqrt(n), static_cast<double>(x.weight()));
  if (side != 0) return side > 0;
  std::vector<std::uint64_t> sat;
  for (std::uint64_t i = 0; i < f.num_terms(); ++i)
    if (all_ones_on(x, f.term(i))) sat.push_back(i);
  if (sat.empty()) return false;
  if (sat.size() >= 2) return true;
  std::vector<std::uint64_t> fals;
  for (std::uint64_t j = 0; j < f.num_terms(); ++j)
    if (all_zeros_on(x, f.clause(sat[0], j))) fals.push_back(j);
  if (fals.empty()) return true;
  if (fals.size() >= 2) return false;
  const Dictator h = f.dictator(sat[0], fals[0]);
  return x.get(h.index) == h.positive;
}

inline bool single_level(const std::vector<std::vector<std::uint32_t>>& terms, const std::vector<Dictator>& dicts,
                         const BitString& y) {
  std::vector<std::size_t> sat;
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (all_ones_on(y, terms[i])) sat.push_back(i);
  if (sat.empty()) return false;
  if (sat.size() >= 2) return true;
  return y.get(dicts[sat[0]].index) == dicts[sat[0]].positive;
}

inline bool unate_eval(const UnateInstance& f, const BitString& x) {
  const double n = f.n();
  BitString y = x;
  const auto& m = f.m().members();
  const auto& mbar = f.m_complement().members();
  for (std::size_t k = 0; k < m.size(); ++k)
    if (f.r()[k]) y.flip(m[k]);
  for (std::size_t k = 0; k < mbar.size(); ++k)
    if (f.s()[k]) y.flip(mbar[k]);
  std::size_t wm = 0;
  for (auto k : m) wm += y.get(k);
  const int side = band_side(n / 4, std::sqrt(n), static_cast<double>(wm));
  if (side != 0) return side > 0;
  return single_level(f.terms(), f.dictators(), y);
}

inline bool onelevel_eval(const OneLevelInstance& f, const BitString& x) {
  const double n = f.n();
  const int side = band_side(n / 2, std::sqrt(n), static_cast<double>(x.weight()));
  if (side != 0) return side > 0;
  return single_level(f.table().terms, f.table().dictators, x);
}

inline bool bb15_eval(const BB15Instance& f, const BitString& x) {
  const double n = f.n();
  const int side = band_side(n / 2, std::sqrt(n), static_cast<double>(x.weight()));
  if (side != 0) return side > 0;
  BitString y = x;
  for (auto k : f.flip_set_s().members()) y.flip(k);
  for (const auto& t : f.terms())
    if (all_ones_on(y, t)) return true;
  return false;
}

// Edge (x, x^(i)) with x_i = 0 is violating when f(x) = 1 and f(x^(i)) = 0.
template <class F>
std::uint64_t violating_edges(std::uint32_t n, F&& f) {
  std::uint64_t count = 0;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    const BitString x = BitString::from_integer(n, v);
    if (!f(x)) continue;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (x.get(i)) continue;
      BitString up = x;
      up.set(i);
      count += !f(up);
    }
  }
  return count;
}

// Truth tables as plain bit vectors indexed by the integer value of x.
using Table = std::vector<bool>;

inline bool is_monotone(const Table& t, std::uint32_t n) {
  for (std::uint64_t v = 0; v < t.size(); ++v)
    for (std::uint32_t i = 0; i < n; ++i)
      if (!((v >> i) & 1) && t[v] && !t[v | (std::uint64_t{1} << i)]) return false;
  return true;
}

// min over every monotone g of |{x : f(x) != g(x)}|, by enumerating all 2^(2^n)
// tables. n <= 4.
inline std::uint64_t mono_distance_brute(const Table& f, std::uint32_t n) {
  const std::uint64_t size = std::uint64_t{1} << n;
  std::uint64_t best = size;
  for (std::uint64_t g = 0; g < (std::uint64_t{1} << size); ++g) {
    Table t(size);
    for (std::uint64_t v = 0; v < size; ++v) t[v] = (g >> v) & 1;
    if (!is_monotone(t, n)) continue;
    std::uint64_t d = 0;
    for (std::uint64_t v = 0; v < size; ++v) d += t[v] != f[v];
    best = std::min(best, d);
  }
  return best;
}

inline std::uint64_t unate_distance_brute(const Table& f, std::uint32_t n) {
  std::uint64_t best = f.size();
  for (std::uint64_t r = 0; r < f.size(); ++r) {
    Table g(f.size());
    for (std::uint64_t v = 0; v < f.size(); ++v) g[v] = f[v ^ r];
    best = std::min(best, mono_distance_brute(g, n));
  }
  return best;
}

// -- induced tuple recomputed from the raw (x, signature) list ----------------

struct ClauseTuple {
  std::vector<std::size_t> P, R;
  std::vector<bool> rho;
  BitString A0, A1;
};

struct TermTuple {
  std::vector<std::size_t> P, R;
  BitString A0, A1;
  std::map<std::uint64_t, ClauseTuple> clauses;
};

inline std::vector<std::uint64_t> satisfied(const Sigma& s) {
  if (s.kind == Sigma::Kind::unique) return {s.i};
  if (s.kind == Sigma::Kind::multi) return {s.i, s.i2};
  return {};
}

inline std::vector<std::pair<std::uint64_t, bool>> falsified(const FullSignature& s) {
  if (s.tau.kind == Tau::Kind::unique_false) return {{s.tau.j, *s.a}};
  if (s.tau.kind == Tau::Kind::multi_false) return {{s.tau.j, *s.a}, {s.tau.j2, *s.b}};
  return {};
}

inline std::pair<BitString, BitString> common_sets(const std::vector<BitString>& xs, std::size_t n) {
  BitString a0 = BitString::ones(n), a1 = BitString::ones(n);
  for (const auto& x : xs)
    for (std::size_t k = 0; k < n; ++k) {
      if (x.get(k)) a0.set(k, false);
      if (!x.get(k)) a1.set(k, false);
    }
  return {a0, a1};
}

inline std::map<std::uint64_t, TermTuple> mono_tuple(std::uint32_t n,
                                                     const std::vector<std::pair<BitString, FullSignature>>& qs) {
  std::map<std::uint64_t, TermTuple> out;
  for (std::size_t p = 0; p < qs.size(); ++p) {
    for (auto i : satisfied(qs[p].second.sigma)) out[i].P.push_back(p);
    if (qs[p].second.sigma.kind == Sigma::Kind::unique)
      for (auto [j, rho] : falsified(qs[p].second)) {
        auto& c = out[qs[p].second.sigma.i].clauses[j];
        c.P.push_back(p);
        c.rho.push_back(rho);
      }
  }
  for (auto& [i, t] : out) {
    std::vector<BitString> xs;
    for (auto p : t.P) xs.push_back(qs[p].first);
    std::tie(t.A0, t.A1) = common_sets(xs, n);
    for (std::size_t p = 0; p < qs.size(); ++p)
      if (sigma_entry(qs[p].second.sigma, i) == Entry::zero) t.R.push_back(p);
    for (auto& [j, c] : t.clauses) {
      std::vector<BitString> cx;
      for (auto p : c.P) cx.push_back(qs[p].first);
      std::tie(c.A0, c.A1) = common_sets(cx, n);
      for (std::size_t p = 0; p < qs.size(); ++p)
        if (qs[p].second.sigma == Sigma::unique(i) && tau_entry(qs[p].second.tau, j) == Entry::one) c.R.push_back(p);
    }
  }
  return out;
}

// Reach probability of the recorded dictator values over every joint choice of
// dictator variables for the touched cells: yes uses positive dictators, no
// negative ones. Exponential in the number of cells.
inline std::pair<double, double> mono_reach_joint(std::uint32_t n,
                                                  const std::vector<std::pair<BitString, FullSignature>>& qs) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<std::pair<BitString, bool>>> cells;
  for (const auto& [x, s] : qs)
    if (s.sigma.kind == Sigma::Kind::unique)
      for (auto [j, rho] : falsified(s)) cells[{s.sigma.i, j}].emplace_back(x, rho);
  std::vector<std::vector<std::pair<BitString, bool>>> list;
  for (auto& [k, v] : cells) list.push_back(v);
  const std::size_t c = list.size();
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < c; ++k) total *= n;
  std::uint64_t yes = 0, no = 0;
  std::vector<std::uint32_t> pick(c, 0);
  for (std::uint64_t a = 0; a < total; ++a) {
    std::uint64_t rest = a;
    for (std::size_t k = 0; k < c; ++k) {
      pick[k] = static_cast<std::uint32_t>(rest % n);
      rest /= n;
    }
    bool ok_yes = true, ok_no = true;
    for (std::size_t k = 0; k < c; ++k)
      for (const auto& [x, rho] : list[k]) {
        ok_yes = ok_yes && x.get(pick[k]) == rho;
        ok_no = ok_no && !x.get(pick[k]) == rho;
      }
    yes += ok_yes;
    no += ok_no;
  }
  return {double(yes) / double(total), double(no) / double(total)};
}

// Unateness reach probabilities over s (uniform on Mbar) and, per term i in I,
// the special variable k and (no world) its polarity. r = 0 so y = x xor s.
// Breached terms are pinned to their revealed variable. Cost 2^|Mbar| * (2|Mbar|)^|I|.
inline std::pair<double, double> unate_reach_joint(const UnateInstance& inst, const UnateTranscript& t) {
  const auto& mbar = inst.m_complement().members();
  std::vector<std::uint64_t> ids;
  std::vector<std::vector<std::pair<BitString, bool>>> members;
  std::vector<std::optional<std::uint32_t>> pinned;
  for (const auto& [i, rec] : t.terms()) {
    ids.push_back(i);
    std::vector<std::pair<BitString, bool>> m;
    for (std::size_t k = 0; k < rec.P.size(); ++k) m.emplace_back(t.queries()[rec.P[k]].x, rec.rho[k]);
    members.push_back(m);
    pinned.push_back(rec.delta);
  }
  const double n = inst.n();
  const std::size_t c = ids.size();
  double py = 0, pn = 0;
  const std::uint64_t total_s = std::uint64_t{1} << mbar.size();
  for (std::uint64_t sv = 0; sv < total_s; ++sv) {
    BitString s(inst.n());
    for (std::size_t k = 0; k < mbar.size(); ++k) s.set(mbar[k], (sv >> k) & 1);
    // Enumerate (variable, polarity) for every term jointly.
    const std::uint64_t choices = 2 * mbar.size();
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < c; ++k) total *= choices;
    double wy = 0, wn = 0;
    for (std::uint64_t a = 0; a < total; ++a) {
      std::uint64_t rest = a;
      bool ok = true, all_positive = true;
      double weight_no = 1, weight_yes = 1;
      for (std::size_t k = 0; k < c && ok; ++k) {
        const auto pick = rest % choices;
        rest /= choices;
        const std::uint32_t var = mbar[pick / 2];
        const bool positive = pick % 2;
        if (pinned[k] && *pinned[k] != var) {
          ok = false;
          break;
        }
        all_positive = all_positive && positive;
        for (const auto& [x, rho] : members[k])
          if (((x.get(var) != s.get(var)) == positive) != rho) ok = false;
        weight_no /= n;            // variable uniform over n/2 choices, polarity fair
        weight_yes /= (n / 2.0);   // variable uniform, polarity positive
      }
      if (!ok) continue;
      wn += weight_no;
      if (all_positive) wy += weight_yes;
    }
    py += wy;
    pn += wn;
  }
  return {py / double(total_s), pn / double(total_s)};
}

}  // namespace ptlab::oracle
