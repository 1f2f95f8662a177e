#include "ptlab/bench/reference.hpp"

#include <map>

#include "ptlab/core/error.hpp"

namespace ptlab {

Likelihood enumerate_mono_leaf(const MonoInstance& tc, const MonoTranscript& t) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<std::pair<const BitString*, bool>>> cells;
  for (const auto& q : t.queries()) {
    if (!(mono_full_signature(tc, q.x) == q.sig)) return Likelihood{0.0, 0.0, likelihood_ratio(0.0, 0.0)};
    if (q.sig.sigma.kind != Sigma::Kind::unique) continue;
    const auto i = q.sig.sigma.i;
    if (q.sig.tau.kind == Tau::Kind::unique_false) cells[{i, q.sig.tau.j}].emplace_back(&q.x, *q.sig.a);
    if (q.sig.tau.kind == Tau::Kind::multi_false) {
      cells[{i, q.sig.tau.j}].emplace_back(&q.x, *q.sig.a);
      cells[{i, q.sig.tau.j2}].emplace_back(&q.x, *q.sig.b);
    }
  }
  Likelihood out;
  const std::uint32_t n = t.n();
  for (const auto& [key, members] : cells) {
    std::uint64_t yes = 0, no = 0;
    for (std::uint32_t k = 0; k < n; ++k) {
      bool ok_yes = true, ok_no = true;
      for (const auto& [x, rho] : members) {
        ok_yes = ok_yes && x->get(k) == rho;
        ok_no = ok_no && x->get(k) != rho;
      }
      yes += ok_yes;
      no += ok_no;
    }
    out.p_yes *= static_cast<double>(yes) / n;
    out.p_no *= static_cast<double>(no) / n;
  }
  out.ratio = likelihood_ratio(out.p_yes, out.p_no);
  return out;
}

UnateReach enumerate_unate_leaf(const UnateInstance& inst, const UnateTranscript& t) {
  const auto& mbar = inst.m_complement().members();
  if (mbar.size() > 20) throw ResourceLimit("reference enumeration supports |Mbar| <= 20");
  const double n = inst.n();

  struct Term {
    std::vector<std::pair<const BitString*, bool>> members;
    std::optional<std::uint32_t> delta;
  };
  std::map<std::uint64_t, Term> terms;
  for (const auto& q : t.queries()) {
    if (q.sig.sigma.kind == Sigma::Kind::zero) continue;
    terms[q.sig.sigma.i].members.emplace_back(&q.x, *q.sig.a);
    if (q.sig.sigma.kind == Sigma::Kind::multi) terms[q.sig.sigma.i2].members.emplace_back(&q.x, *q.sig.b);
  }
  for (auto& [i, term] : terms) term.delta = t.term(i).delta;

  UnateReach out;
  BitString s(inst.n());
  const std::uint64_t total = std::uint64_t{1} << mbar.size();
  for (std::uint64_t a = 0; a < total; ++a) {
    for (std::size_t c = 0; c < mbar.size(); ++c) s.set(mbar[c], (a >> c) & 1);
    double py = 1.0, pn = 1.0;
    for (const auto& [i, term] : terms) {
      std::uint64_t cy = 0, cn = 0;
      for (auto k : mbar) {
        if (term.delta && *term.delta != k) continue;
        for (int pol = 0; pol < 2; ++pol) {
          bool ok = true;
          for (const auto& [x, rho] : term.members)
            ok = ok && ((x->get(k) != s.get(k)) == static_cast<bool>(pol)) == rho;
          if (!ok) continue;
          cn += 1;
          cy += pol;
        }
      }
      py *= static_cast<double>(cy) / (n / 2.0);
      pn *= static_cast<double>(cn) / n;
    }
    out.p_yes += py;
    out.p_no += pn;
  }
  out.p_yes /= static_cast<double>(total);
  out.p_no /= static_cast<double>(total);
  return out;
}

}  // namespace ptlab
