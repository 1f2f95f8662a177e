#include "ptlab/testers/verdict.hpp"

#include "ptlab/core/error.hpp"

namespace ptlab {

CountingOracle::CountingOracle(const BooleanFunction& f, std::uint64_t budget) : f_(f), budget_(budget) {}

bool CountingOracle::query(const BitString& x) {
  if (x.size() != f_.dimension()) throw InvalidArgument("query dimension mismatch");
  if (auto it = cache_.find(x); it != cache_.end()) return it->second;
  if (used() >= budget_) throw BudgetExhausted{};
  const bool v = f_.eval(x);
  cache_.emplace(x, v);
  log_.emplace_back(x, v);
  return v;
}

std::optional<bool> CountingOracle::peek(const BitString& x) const {
  auto it = cache_.find(x);
  if (it == cache_.end()) return std::nullopt;
  return it->second;
}

void TesterConfig::validate() const {
  if (q < 1) throw InvalidArgument("query budget must be at least 1");
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in (0, 1)");
  if (votes < 1) throw InvalidArgument("votes must be at least 1");
  if (seed_draw_cap < 1) throw InvalidArgument("seed_draw_cap must be at least 1");
}

Json TesterConfig::to_json() const {
  return Json{{"q", q},
              {"eps", eps},
              {"seed", seed},
              {"stage1_rounds", stage1_rounds},
              {"outer_repeats", outer_repeats},
              {"stage3_rounds", stage3_rounds},
              {"stage4_parts", stage4_parts},
              {"c0_size", c0_size},
              {"votes", votes},
              {"seed_draw_cap", seed_draw_cap}};
}

TesterConfig TesterConfig::from_json(const Json& j) {
  TesterConfig c;
  if (j.is_null()) return c;
  if (!j.is_object()) throw InvalidArgument("tester config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "q")
      c.q = value.get<std::uint64_t>();
    else if (key == "eps")
      c.eps = value.get<double>();
    else if (key == "seed")
      c.seed = value.get<std::uint64_t>();
    else if (key == "stage1_rounds")
      c.stage1_rounds = value.get<std::uint64_t>();
    else if (key == "outer_repeats")
      c.outer_repeats = value.get<std::uint64_t>();
    else if (key == "stage3_rounds")
      c.stage3_rounds = value.get<std::uint64_t>();
    else if (key == "stage4_parts")
      c.stage4_parts = value.get<std::uint64_t>();
    else if (key == "c0_size")
      c.c0_size = value.get<std::uint64_t>();
    else if (key == "votes")
      c.votes = value.get<std::uint64_t>();
    else if (key == "seed_draw_cap")
      c.seed_draw_cap = value.get<std::uint64_t>();
    else
      throw InvalidArgument("unknown tester field " + key);
  }
  c.validate();
  return c;
}

Json ViolationWitness::to_json() const {
  if (kind == Kind::mono_pair)
    return Json{{"kind", "mono_pair"}, {"x", bitstring_to_json(x)}, {"y", bitstring_to_json(y)}};
  return Json{{"kind", "unate_per_direction"},
              {"direction", direction + 1},
              {"mono_edge", bitstring_to_json(mono_edge)},
              {"anti_edge", bitstring_to_json(anti_edge)}};
}

bool verify_witness(const ViolationWitness& w, const BooleanFunction& f) {
  if (w.kind == ViolationWitness::Kind::mono_pair)
    return precedes(w.x, w.y) && f.eval(w.x) && !f.eval(w.y);
  const auto i = w.direction;
  if (i >= f.dimension() || w.mono_edge.get(i) || w.anti_edge.get(i)) return false;
  BitString mu = w.mono_edge, au = w.anti_edge;
  mu.set(i);
  au.set(i);
  return !f.eval(w.mono_edge) && f.eval(mu) && f.eval(w.anti_edge) && !f.eval(au);
}

Json Verdict::to_json() const {
  Json j{{"decision", rejected() ? "reject" : "accept"},
         {"queries_used", queries_used},
         {"stage_queries", stage_queries},
         {"seed", seed}};
  if (witness) j["witness"] = witness->to_json();
  if (!note.empty()) j["note"] = note;
  return j;
}

}  // namespace ptlab
