#include "ptlab/sigoracle/mono_transcript.hpp"

#include <algorithm>

#include "ptlab/core/error.hpp"

namespace ptlab {

namespace {

std::vector<std::uint64_t> satisfied_of(const Sigma& s) {
  switch (s.kind) {
    case Sigma::Kind::zero:
      return {};
    case Sigma::Kind::unique:
      return {s.i};
    case Sigma::Kind::multi:
      return {s.i, s.i2};
  }
  return {};
}

// (clause index, rho) pairs for the cells x joins.
std::vector<std::pair<std::uint64_t, bool>> falsified_of(const FullSignature& sig) {
  switch (sig.tau.kind) {
    case Tau::Kind::unique_false:
      return {{sig.tau.j, *sig.a}};
    case Tau::Kind::multi_false:
      return {{sig.tau.j, *sig.a}, {sig.tau.j2, *sig.b}};
    default:
      return {};
  }
}

void absorb(BitString& a0, BitString& a1, const BitString& x, bool first) {
  if (first) {
    a1 = x;
    a0 = ~x;
  } else {
    a1 &= x;
    a0.andnot(x);
  }
}

Consistency status_of(const std::vector<bool>& rho) {
  bool any0 = false, any1 = false;
  for (bool r : rho) (r ? any1 : any0) = true;
  if (any0 && any1) return Consistency::inconsistent;
  return any0 ? Consistency::zero_consistent : Consistency::one_consistent;
}

}  // namespace

MonoTranscript::MonoTranscript(std::uint32_t n) : n_(n) {
  if (n == 0 || n > kMaxDimension) throw InvalidArgument("n out of range");
}

void MonoTranscript::extend(const BitString& x, const FullSignature& sig) {
  if (x.size() != n_) throw InvalidArgument("dimension mismatch");
  sig.validate();
  const std::size_t q = queries_.size();
  const bool unique = sig.sigma.kind == Sigma::Kind::unique;

  for (auto& [i, cell] : terms_) {
    if (sigma_entry(sig.sigma, i) == Entry::zero) cell.R.push_back(q);
    if (unique && sig.sigma.i == i)
      for (auto& [j, cc] : cell.clauses)
        if (tau_entry(sig.tau, j) == Entry::one) cc.R.push_back(q);
  }

  for (auto t : satisfied_of(sig.sigma)) {
    auto [it, fresh] = terms_.try_emplace(t);
    MonoTermCell& cell = it->second;
    if (fresh)
      for (std::size_t p = 0; p < q; ++p)
        if (sigma_entry(queries_[p].sig.sigma, t) == Entry::zero) cell.R.push_back(p);
    absorb(cell.A0, cell.A1, x, fresh);
    cell.P.push_back(q);
  }

  if (unique) {
    MonoTermCell& cell = terms_.at(sig.sigma.i);
    for (auto [c, rho] : falsified_of(sig)) {
      auto [it, fresh] = cell.clauses.try_emplace(c);
      MonoClauseCell& cc = it->second;
      if (fresh)
        for (std::size_t p = 0; p < q; ++p) {
          const auto& ps = queries_[p].sig;
          if (ps.sigma == Sigma::unique(sig.sigma.i) && tau_entry(ps.tau, c) == Entry::one) cc.R.push_back(p);
        }
      absorb(cc.A0, cc.A1, x, fresh);
      cc.P.push_back(q);
      cc.rho.push_back(rho);
    }
  }
  queries_.push_back({x, sig});
}

const MonoTermCell& MonoTranscript::term(std::uint64_t i) const {
  auto it = terms_.find(i);
  if (it == terms_.end()) throw InvalidArgument("term not in I");
  return it->second;
}

bool MonoTranscript::has_cell(std::uint64_t i, std::uint64_t j) const {
  auto it = terms_.find(i);
  return it != terms_.end() && it->second.clauses.count(j) > 0;
}

const MonoClauseCell& MonoTranscript::cell(std::uint64_t i, std::uint64_t j) const {
  const auto& t = term(i);
  auto it = t.clauses.find(j);
  if (it == t.clauses.end()) throw InvalidArgument("clause not in J_i");
  return it->second;
}

Consistency consistency_status(const MonoTranscript& t, std::uint64_t i, std::uint64_t j) {
  return status_of(t.cell(i, j).rho);
}

std::string to_string(EdgeClass::Kind k) {
  switch (k) {
    case EdgeClass::Kind::none:
      return "None";
    case EdgeClass::Kind::e1:
      return "E1";
    case EdgeClass::Kind::e2:
      return "E2";
    case EdgeClass::Kind::e3:
      return "E3";
    case EdgeClass::Kind::e4:
      return "E4";
  }
  return "?";
}

EdgeClass classify_mono_step(const MonoTranscript& t, const BitString& x, const FullSignature& sig,
                             const ClassifierConfig& cfg) {
  cfg.validate();
  sig.validate();
  if (x.size() != t.n()) throw InvalidArgument("dimension mismatch");
  const double thr = cfg.mono_shrink_threshold(t.n());
  struct Hit {
    bool on = false;
    std::uint64_t i = 0;
    std::optional<std::uint64_t> j;
  } hit[4];
  auto mark = [&](int k, std::uint64_t i, std::optional<std::uint64_t> j) {
    if (!hit[k].on) hit[k] = {true, i, j};
  };

  for (auto i : satisfied_of(sig.sigma)) {
    auto it = t.terms().find(i);
    if (it == t.terms().end()) continue;
    if (static_cast<double>(count_andnot(it->second.A1, x)) >= thr) mark(0, i, std::nullopt);
  }
  bool e3c = false, e4c = false;
  std::uint64_t e3i = 0, e3j = 0, e4i = 0, e4j = 0;
  if (sig.sigma.kind == Sigma::Kind::unique) {
    auto it = t.terms().find(sig.sigma.i);
    if (it != t.terms().end()) {
      for (auto [c, rho] : falsified_of(sig)) {
        auto ct = it->second.clauses.find(c);
        if (ct == it->second.clauses.end()) continue;
        const MonoClauseCell& cc = ct->second;
        if (static_cast<double>(count_and(cc.A0, x)) >= thr) mark(1, sig.sigma.i, c);
        const Consistency st = status_of(cc.rho);
        if (st == Consistency::zero_consistent && rho && !e3c) {
          e3c = true;
          e3i = sig.sigma.i;
          e3j = c;
        }
        if (st == Consistency::one_consistent && !rho && !e4c) {
          e4c = true;
          e4i = sig.sigma.i;
          e4j = c;
        }
      }
    }
  }
  if (e3c && !hit[1].on) mark(2, e3i, e3j);
  if (e4c && !hit[0].on && !hit[1].on) mark(3, e4i, e4j);

  EdgeClass out;
  for (int k = 3; k >= 0; --k)
    if (hit[k].on) {
      out.fired |= 1u << k;
      out.kind = static_cast<EdgeClass::Kind>(k + 1);
      out.i = hit[k].i;
      out.j = hit[k].j;
    }
  return out;
}

EdgeClass classify_mono_edge(const MonoTranscript& t_before, const BitString& x, const FullSignature& sig,
                             const ClassifierConfig& cfg) {
  MonoTranscript replay(t_before.n());
  for (const auto& q : t_before.queries()) {
    if (classify_mono_step(replay, q.x, q.sig, cfg).bad()) return EdgeClass{};
    replay.extend(q.x, q.sig);
  }
  return classify_mono_step(t_before, x, sig, cfg);
}

double likelihood_ratio(double p_yes, double p_no) {
  if (p_yes == 0.0) return std::numeric_limits<double>::infinity();
  return p_no / p_yes;
}

Likelihood mono_leaf_likelihood(const MonoInstance& tc, const MonoTranscript& t) {
  if (tc.n() != t.n()) throw InvalidArgument("dimension mismatch");
  for (const auto& [i, cell] : t.terms())
    for (const auto& [j, cc] : cell.clauses)
      if (status_of(cc.rho) == Consistency::inconsistent)
        throw Unsupported("likelihood is defined for good leaves only (every P_{i,j} consistent)");

  bool agrees = true;
  for (const auto& q : t.queries()) {
    const auto terms = tc.satisfied_terms(q.x, 2);
    Sigma s;
    if (terms.size() == 1) s = Sigma::unique(terms[0]);
    if (terms.size() == 2) s = Sigma::multi(terms[0], terms[1]);
    if (!(s == q.sig.sigma)) {
      agrees = false;
      break;
    }
    if (s.kind != Sigma::Kind::unique) continue;
    const auto cl = tc.falsified_clauses(s.i, q.x, 2);
    Tau tau = Tau::all_one();
    if (cl.size() == 1) tau = Tau::unique_false(cl[0]);
    if (cl.size() == 2) tau = Tau::multi_false(cl[0], cl[1]);
    if (!(tau == q.sig.tau)) {
      agrees = false;
      break;
    }
  }
  Likelihood out;
  if (!agrees) {
    out.p_yes = out.p_no = 0.0;
    out.ratio = likelihood_ratio(0.0, 0.0);
    return out;
  }
  const double n = t.n();
  for (const auto& [i, cell] : t.terms())
    for (const auto& [j, cc] : cell.clauses) {
      const bool rho = cc.rho.front();
      const double a_rho = static_cast<double>((rho ? cc.A1 : cc.A0).weight());
      const double a_not = static_cast<double>((rho ? cc.A0 : cc.A1).weight());
      out.p_yes *= a_rho / n;
      out.p_no *= a_not / n;
    }
  out.ratio = likelihood_ratio(out.p_yes, out.p_no);
  return out;
}

Json tuple_sizes_json(const MonoTranscript& t) {
  std::size_t sum_p = 0, cells = 0, sum_pij = 0;
  for (const auto& [i, cell] : t.terms()) {
    sum_p += cell.P.size();
    cells += cell.clauses.size();
    for (const auto& [j, cc] : cell.clauses) sum_pij += cc.P.size();
  }
  return Json{{"I", t.terms().size()}, {"sum_P_i", sum_p}, {"cells", cells}, {"sum_P_ij", sum_pij}};
}

std::vector<std::string> tuple_axiom_failures(const MonoTranscript& t, const MonoInstance* inst) {
  std::vector<std::string> out;
  auto fail = [&](std::string what, std::uint64_t i, std::optional<std::uint64_t> j = std::nullopt) {
    what += " at i=" + std::to_string(i + 1);
    if (j) what += ", j=" + std::to_string(*j + 1);
    out.push_back(std::move(what));
  };
  const auto& qs = t.queries();
  const std::size_t q = qs.size();
  auto intersect = [&](const std::vector<std::size_t>& p, bool ones) {
    BitString a = BitString::ones(t.n());
    for (auto k : p) {
      if (ones)
        a &= qs[k].x;
      else
        a.andnot(qs[k].x);
    }
    return a;
  };

  std::size_t sum_p = 0;
  for (const auto& [i, cell] : t.terms()) {
    sum_p += cell.P.size();
    if (cell.R.size() > q) fail("|R_i| > |Q|", i);
    if (intersect(cell.P, true) != cell.A1) fail("A_{i,1} differs from its definition", i);
    if (intersect(cell.P, false) != cell.A0) fail("A_{i,0} differs from its definition", i);
    std::size_t sum_pij = 0;
    for (const auto& [j, cc] : cell.clauses) {
      sum_pij += cc.P.size();
      if (cc.R.size() > q) fail("|R_{i,j}| > |Q|", i, j);
      for (auto k : cc.P)
        if (std::find(cell.P.begin(), cell.P.end(), k) == cell.P.end()) fail("P_{i,j} not within P_i", i, j);
      if (!is_subset(cell.A0, cc.A0)) fail("A_{i,0} not within A_{i,j,0}", i, j);
      if (!is_subset(cell.A1, cc.A1)) fail("A_{i,1} not within A_{i,j,1}", i, j);
      if (intersect(cc.P, true) != cc.A1) fail("A_{i,j,1} differs from its definition", i, j);
      if (intersect(cc.P, false) != cc.A0) fail("A_{i,j,0} differs from its definition", i, j);
      for (auto k : cc.P) {
        std::int64_t bound = static_cast<std::int64_t>(qs[k].x.weight());
        for (auto m : cc.P)
          if (m != k) bound -= static_cast<std::int64_t>(count_andnot(qs[k].x, qs[m].x));
        if (static_cast<std::int64_t>(cc.A1.weight()) < bound) fail("counting chain bound on |A_{i,j,1}|", i, j);
      }
      if (inst) {
        const BitString c = BitString::from_indices(t.n(), inst->clause(i, j));
        if (!is_subset(c, cc.A0)) fail("C_{i,j} variable outside A_{i,j,0}", i, j);
        for (auto k : cc.R)
          if (inst->clause_falsified(i, j, qs[k].x)) fail("C_{i,j}(x) = 0 for x in R_{i,j}", i, j);
      }
    }
    if (cell.clauses.size() > sum_pij || sum_pij > 2 * cell.P.size()) fail("|J_i| <= sum |P_{i,j}| <= 2|P_i|", i);
    if (inst) {
      const BitString tm = BitString::from_indices(t.n(), inst->term(i));
      if (!is_subset(tm, cell.A1)) fail("T_i variable outside A_{i,1}", i);
      for (auto k : cell.R)
        if (inst->term_satisfied(i, qs[k].x)) fail("T_i(x) = 1 for x in R_i", i);
    }
  }
  if (t.terms().size() > sum_p || sum_p > 2 * q) out.push_back("|I| <= sum |P_i| <= 2|Q|");
  return out;
}

}  // namespace ptlab
