#include "ptlab/sigoracle/unate_transcript.hpp"

#include <cmath>
#include <set>

#include "ptlab/core/error.hpp"

namespace ptlab {

namespace {

std::vector<std::pair<std::uint64_t, bool>> joined_of(const UnateSignature& sig) {
  switch (sig.sigma.kind) {
    case Sigma::Kind::zero:
      return {};
    case Sigma::Kind::unique:
      return {{sig.sigma.i, *sig.a}};
    case Sigma::Kind::multi:
      return {{sig.sigma.i, *sig.a}, {sig.sigma.i2, *sig.b}};
  }
  return {};
}

Consistency rho_status(const std::vector<bool>& rho) {
  bool any0 = false, any1 = false;
  for (bool r : rho) (r ? any1 : any0) = true;
  if (any0 && any1) return Consistency::inconsistent;
  return any0 ? Consistency::zero_consistent : Consistency::one_consistent;
}

// Coordinates of A that x leaves: common-1 positions where x is 0 and common-0 positions where x is 1.
BitString departing(const BitString& a0, const BitString& a1, const BitString& x) {
  BitString d = a1;
  d.andnot(x);
  d |= (a0 & x);
  return d;
}

}  // namespace

SpecialVariableSource special_variables_of(const UnateInstance& inst) {
  return [&inst](std::uint64_t i) { return inst.dictators().at(i).index; };
}

UnateTranscript::UnateTranscript(std::uint32_t n, std::optional<BitString> mbar, double breach_size)
    : n_(n), mbar_(std::move(mbar)), breach_size_(breach_size) {
  if (n == 0 || n > kMaxDimension) throw InvalidArgument("n out of range");
  if (mbar_ && mbar_->size() != n) throw InvalidArgument("complement mask dimension mismatch");
}

UnateTranscript UnateTranscript::for_instance(const UnateInstance& inst, const ClassifierConfig& cfg) {
  return UnateTranscript(inst.n(), inst.m_complement_mask(), cfg.breach_size_threshold(inst.n()));
}

UnateTranscript UnateTranscript::one_level(std::uint32_t n) { return UnateTranscript(n, std::nullopt, 0.0); }

const BitString& UnateTranscript::m_complement() const {
  if (!mbar_) throw Unsupported("transcript has no M");
  return *mbar_;
}

const TermRecord& UnateTranscript::term(std::uint64_t i) const {
  auto it = terms_.find(i);
  if (it == terms_.end()) throw InvalidArgument("term not in I");
  return it->second;
}

void UnateTranscript::extend(const BitString& x, const UnateSignature& sig, const SpecialVariableSource& reveal) {
  if (x.size() != n_) throw InvalidArgument("dimension mismatch");
  sig.validate();
  const std::size_t q = queries_.size();
  for (auto& [i, rec] : terms_)
    if (sigma_entry(sig.sigma, i) == Entry::zero) rec.R.push_back(q);

  for (auto [i, rho] : joined_of(sig)) {
    auto [it, fresh] = terms_.try_emplace(i);
    TermRecord& rec = it->second;
    if (fresh) {
      for (std::size_t p = 0; p < q; ++p)
        if (sigma_entry(queries_[p].sig.sigma, i) == Entry::zero) rec.R.push_back(p);
      rec.A1 = x;
      rec.A0 = ~x;
    } else {
      rec.A1 &= x;
      rec.A0.andnot(x);
    }
    rec.P.push_back(q);
    rec.rho.push_back(rho);
  }

  UnateQuery uq{x, sig, {}};
  if (mbar_) {
    for (auto& [i, rec] : terms_) {
      if (rec.breached) continue;
      const bool hit = rho_status(rec.rho) == Consistency::inconsistent ||
                       static_cast<double>(count_and(rec.A(), *mbar_)) <= breach_size_;
      if (!hit) continue;
      if (!reveal) throw InvalidArgument("breach occurred but no special-variable source was supplied");
      rec.breached = true;
      rec.delta = reveal(i);
      uq.breaches.emplace_back(i, *rec.delta);
    }
  }
  queries_.push_back(std::move(uq));
}

Consistency consistency_status(const UnateTranscript& t, std::uint64_t i) { return rho_status(t.term(i).rho); }

BreachSplit breached_terms(const UnateTranscript& t, const ClassifierConfig& cfg) {
  BreachSplit out;
  const double thr = cfg.breach_size_threshold(t.n());
  for (const auto& [i, rec] : t.terms()) {
    const bool b = rho_status(rec.rho) == Consistency::inconsistent ||
                   static_cast<double>(count_and(rec.A(), t.m_complement())) <= thr;
    (b ? out.breached : out.safe).push_back(i);
  }
  return out;
}

EdgeClass classify_unate_step(const UnateTranscript& t, const BitString& x, const UnateSignature& sig,
                              const SpecialVariableSource& reveal, const ClassifierConfig& cfg) {
  cfg.validate();
  if (!t.tracks_breaches()) throw Unsupported("unateness classifier needs a transcript with M");
  EdgeClass out;
  const double shrink = cfg.unate_shrink_threshold(t.n());
  std::optional<std::uint64_t> e1;
  for (auto [i, rho] : joined_of(sig)) {
    (void)rho;
    auto it = t.terms().find(i);
    if (it == t.terms().end() || it->second.breached) continue;
    if (static_cast<double>(departing(it->second.A0, it->second.A1, x).weight()) >= shrink && !e1) e1 = i;
  }
  UnateTranscript after = t;
  after.extend(x, sig, reveal);
  std::size_t breached = 0;
  std::map<std::uint32_t, std::uint64_t> owner;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> e3;
  std::optional<std::uint64_t> last_breached;
  for (const auto& [i, rec] : after.terms()) {
    if (!rec.breached) continue;
    ++breached;
    last_breached = i;
    auto [it, fresh] = owner.try_emplace(*rec.delta, i);
    if (!fresh && !e3) e3 = std::make_pair(it->second, i);
  }
  const bool e2 = static_cast<double>(breached) > cfg.breach_cap_threshold(t.n());

  if (e3) {
    out.fired |= 4u;
    out.kind = EdgeClass::Kind::e3;
    out.i = e3->first;
    out.j = e3->second;
  }
  if (e2) {
    out.fired |= 2u;
    out.kind = EdgeClass::Kind::e2;
    out.i = *last_breached;
    out.j.reset();
  }
  if (e1) {
    out.fired |= 1u;
    out.kind = EdgeClass::Kind::e1;
    out.i = *e1;
    out.j.reset();
  }
  return out;
}

EdgeClass classify_unate_edge(const UnateTranscript& t_before, const BitString& x, const UnateSignature& sig,
                              const SpecialVariableSource& reveal, const ClassifierConfig& cfg) {
  UnateTranscript replay(t_before.n(), t_before.m_complement(), t_before.breach_size());
  for (const auto& q : t_before.queries()) {
    if (classify_unate_step(replay, q.x, q.sig, reveal, cfg).bad()) return EdgeClass{};
    replay.extend(q.x, q.sig, reveal);
  }
  return classify_unate_step(t_before, x, sig, reveal, cfg);
}

namespace {

struct BalanceCheck {
  const BitString& x;
  BitString m;  // first n/2 coordinates
  double trigger;
  double need;

  // Balanced for a set whose common-0 and common-1 coordinates are a0, a1.
  bool ok(const BitString& a0, const BitString& a1) const {
    const BitString d = departing(a0, a1, x);
    if (static_cast<double>(d.weight()) < trigger) return true;
    BitString d1 = a1 & m;
    d1.andnot(x);
    return static_cast<double>(d1.weight()) >= need;
  }
};

double binom_sum(std::size_t q, std::size_t cap) {
  double total = 0, c = 1;
  for (std::size_t k = 1; k <= cap && k <= q; ++k) {
    c = c * double(q - k + 1) / double(k);
    total += c;
  }
  return total;
}

bool subsets_ok(const BalanceCheck& chk, const std::vector<UnateQuery>& qs, std::size_t start, std::size_t depth,
                std::size_t cap, const BitString& a0, const BitString& a1) {
  for (std::size_t p = start; p < qs.size(); ++p) {
    BitString b1 = a1 & qs[p].x;
    BitString b0 = a0;
    b0.andnot(qs[p].x);
    if (!chk.ok(b0, b1)) return false;
    // Delta is contained in A, which only shrinks as the subset grows.
    if (depth + 1 < cap && static_cast<double>(b0.weight() + b1.weight()) >= chk.trigger)
      if (!subsets_ok(chk, qs, p + 1, depth + 1, cap, b0, b1)) return false;
  }
  return true;
}

}  // namespace

bool check_balanced_step(const UnateTranscript& t, const BitString& x, BalanceMode mode,
                         const ClassifierConfig& cfg) {
  if (x.size() != t.n()) throw InvalidArgument("dimension mismatch");
  BitString m(t.n());
  for (std::uint32_t k = 0; k < t.n() / 2; ++k) m.set(k);
  const BalanceCheck chk{x, m, cfg.unate_shrink_threshold(t.n()), cfg.balance_ones_threshold(t.n())};

  for (const auto& [i, rec] : t.terms())
    if (!chk.ok(rec.A0, rec.A1)) return false;
  if (mode == BalanceMode::per_p_i) return true;

  const std::size_t cap = cfg.balance_subset_cap;
  if (binom_sum(t.size(), cap) > static_cast<double>(cfg.balance_subset_budget))
    throw ResourceLimit("too many subsets for the balance check; lower the subset cap");
  if (cap == 0) return true;
  const BitString all = BitString::ones(t.n());
  return subsets_ok(chk, t.queries(), 0, 0, cap, all, all);
}

UnateLikelihood unate_transcript_likelihood(const UnateTranscript& t, LikelihoodMode mode, std::uint64_t mc_samples,
                                            std::uint64_t seed) {
  const BitString& mbar = t.m_complement();
  const double n = t.n();
  UnateLikelihood out;

  struct TermView {
    bool breached;
    std::uint32_t delta;
    BitString support;  // A_i cap Mbar for safe terms
    BitString y;
    bool alpha;
    // Breached terms: the value s_delta must take, or nullopt when no s works.
    std::optional<bool> s_delta;
  };
  std::vector<TermView> views;
  BitString relevant(t.n());
  for (const auto& [i, rec] : t.terms()) {
    TermView v{rec.breached, rec.delta.value_or(0), BitString(t.n()), t.queries()[rec.P.front()].x, rec.rho.front(),
                std::nullopt};
    if (rec.breached) {
      out.p_no *= 1.0 / n;
      relevant.set(v.delta);
      // A positive dictator on delta needs (y xor s)_delta = rho(y) for every y in P_i.
      v.s_delta = v.y.get(v.delta) != v.alpha;
      for (std::size_t m = 1; m < rec.P.size(); ++m)
        if ((t.queries()[rec.P[m]].x.get(v.delta) != rec.rho[m]) != *v.s_delta) v.s_delta.reset();
    } else {
      if (rho_status(rec.rho) == Consistency::inconsistent)
        throw InvalidArgument("safe terms must have consistent P_i");
      v.support = rec.A() & mbar;
      out.p_no *= static_cast<double>(v.support.weight()) / n;
      relevant |= v.support;
    }
    views.push_back(std::move(v));
  }
  const auto coords = relevant.ones_indices();
  out.relevant_coordinates = coords.size();

  if (mode == LikelihoodMode::closed_form_no) {
    out.p_yes_exact = false;
    return out;
  }
  if (mode == LikelihoodMode::automatic)
    mode = coords.size() <= 20 ? LikelihoodMode::exhaustive_small : LikelihoodMode::monte_carlo_yes;
  if (mode == LikelihoodMode::exhaustive_small && coords.size() > 20)
    throw ResourceLimit("exhaustive mode supports at most 20 relevant coordinates");

  auto product = [&](const BitString& s) {
    double p = 1.0;
    for (const auto& v : views) {
      if (v.breached) {
        if (!v.s_delta || s.get(v.delta) != *v.s_delta) return 0.0;
        p *= 2.0 / n;
      } else {
        const BitString ys = v.y ^ s;
        const std::size_t c = v.alpha ? count_and(v.support, ys) : count_andnot(v.support, ys);
        p *= static_cast<double>(c) / (n / 2.0);
        if (p == 0.0) return 0.0;
      }
    }
    return p;
  };

  BitString s(t.n());
  if (mode == LikelihoodMode::exhaustive_small) {
    const std::uint64_t total = std::uint64_t{1} << coords.size();
    double sum = 0.0;
    for (std::uint64_t a = 0; a < total; ++a) {
      for (std::size_t c = 0; c < coords.size(); ++c) s.set(coords[c], (a >> c) & 1);
      sum += product(s);
    }
    out.p_yes = sum / static_cast<double>(total);
    out.p_yes_exact = true;
    return out;
  }
  if (mc_samples == 0) throw InvalidArgument("samples must be positive");
  RngStream rng(seed, "unate.likelihood.s");
  double sum = 0.0, sq = 0.0;
  for (std::uint64_t m = 0; m < mc_samples; ++m) {
    for (auto c : coords) s.set(c, rng.coin());
    const double p = product(s);
    sum += p;
    sq += p * p;
  }
  const double mean = sum / static_cast<double>(mc_samples);
  const double var = std::max(0.0, sq / static_cast<double>(mc_samples) - mean * mean);
  out.p_yes = mean;
  out.p_yes_ci = 1.96 * std::sqrt(var / static_cast<double>(mc_samples));
  out.p_yes_exact = false;
  return out;
}

Outcome classify_nonadaptive_outcome(const UnateTranscript& t, const ClassifierConfig& cfg) {
  const double thr = cfg.shared_ones_threshold(t.n());
  for (const auto& [i, rec] : t.terms()) {
    if (rho_status(rec.rho) == Consistency::inconsistent) return Outcome::bad;
    for (std::size_t a = 0; a < rec.P.size(); ++a)
      for (std::size_t b = a + 1; b < rec.P.size(); ++b) {
        const auto shared = count_and(t.queries()[rec.P[a]].x, t.queries()[rec.P[b]].x);
        if (static_cast<double>(shared) <= thr) return Outcome::bad;
      }
  }
  return Outcome::good;
}

Json tuple_sizes_json(const UnateTranscript& t) {
  std::size_t sum_p = 0, breached = 0;
  for (const auto& [i, rec] : t.terms()) {
    sum_p += rec.P.size();
    breached += rec.breached;
  }
  return Json{{"I", t.terms().size()}, {"sum_P_i", sum_p}, {"I_B", breached}};
}

}  // namespace ptlab
