#include "ptlab/sigoracle/signature.hpp"

#include "ptlab/core/error.hpp"

namespace ptlab {

Entry sigma_entry(const Sigma& s, std::uint64_t t) {
  switch (s.kind) {
    case Sigma::Kind::zero:
      return Entry::zero;
    case Sigma::Kind::unique:
      return t == s.i ? Entry::one : Entry::zero;
    case Sigma::Kind::multi:
      if (t == s.i || t == s.i2) return Entry::one;
      return t < s.i2 ? Entry::zero : Entry::star;
  }
  return Entry::star;
}

Entry tau_entry(const Tau& tau, std::uint64_t t) {
  switch (tau.kind) {
    case Tau::Kind::bottom:
      return Entry::star;
    case Tau::Kind::all_one:
      return Entry::one;
    case Tau::Kind::unique_false:
      return t == tau.j ? Entry::zero : Entry::one;
    case Tau::Kind::multi_false:
      if (t == tau.j || t == tau.j2) return Entry::zero;
      return t < tau.j2 ? Entry::one : Entry::star;
  }
  return Entry::star;
}

void FullSignature::validate() const {
  if (sigma.kind == Sigma::Kind::multi && !(sigma.i < sigma.i2)) throw InvalidArgument("Multi requires i < i'");
  if (tau.kind == Tau::Kind::multi_false && !(tau.j < tau.j2)) throw InvalidArgument("MultiFalse requires j < j'");
  const bool unique = sigma.kind == Sigma::Kind::unique;
  if (unique == (tau.kind == Tau::Kind::bottom))
    throw InvalidArgument("tau must be Bottom exactly when sigma is Zero or Multi");
  const bool want_a = unique && (tau.kind == Tau::Kind::unique_false || tau.kind == Tau::Kind::multi_false);
  const bool want_b = unique && tau.kind == Tau::Kind::multi_false;
  if (a.has_value() != want_a || b.has_value() != want_b) throw InvalidArgument("a, b populated inconsistently");
}

void UnateSignature::validate() const {
  if (sigma.kind == Sigma::Kind::multi && !(sigma.i < sigma.i2)) throw InvalidArgument("Multi requires i < i'");
  const bool want_a = sigma.kind != Sigma::Kind::zero;
  const bool want_b = sigma.kind == Sigma::Kind::multi;
  if (a.has_value() != want_a || b.has_value() != want_b) throw InvalidArgument("a, b populated inconsistently");
}

FullSignature mono_full_signature(const MonoInstance& inst, const BitString& x) {
  if (x.size() != inst.n()) throw InvalidArgument("dimension mismatch");
  if (inst.weight_class(x) != WeightClass::middle)
    throw ContractViolation("signature queries must lie in the middle layers (|x| within n/2 +- sqrt(n))");
  FullSignature sig;
  const auto terms = inst.satisfied_terms(x, 2);
  if (terms.empty()) return sig;
  if (terms.size() == 2) {
    sig.sigma = Sigma::multi(terms[0], terms[1]);
    return sig;
  }
  const std::uint64_t i = terms[0];
  sig.sigma = Sigma::unique(i);
  const auto cl = inst.falsified_clauses(i, x, 2);
  if (cl.empty()) {
    sig.tau = Tau::all_one();
  } else if (cl.size() == 1) {
    sig.tau = Tau::unique_false(cl[0]);
    sig.a = inst.dictator(i, cl[0]).eval(x);
  } else {
    sig.tau = Tau::multi_false(cl[0], cl[1]);
    sig.a = inst.dictator(i, cl[0]).eval(x);
    sig.b = inst.dictator(i, cl[1]).eval(x);
  }
  return sig;
}

bool value_from_mono_signature(WeightClass weight_class, const std::optional<FullSignature>& sig) {
  if (weight_class == WeightClass::low) return false;
  if (weight_class == WeightClass::high) return true;
  if (!sig) throw InvalidArgument("middle-layer value needs a signature");
  sig->validate();
  switch (sig->sigma.kind) {
    case Sigma::Kind::zero:
      return false;
    case Sigma::Kind::multi:
      return true;
    case Sigma::Kind::unique:
      break;
  }
  switch (sig->tau.kind) {
    case Tau::Kind::all_one:
      return true;
    case Tau::Kind::multi_false:
      return false;
    case Tau::Kind::unique_false:
      return *sig->a;
    case Tau::Kind::bottom:
      break;
  }
  throw InvalidArgument("malformed signature");
}

namespace {

UnateSignature single_level_signature(const TermTable& table, const BitString& y) {
  UnateSignature sig;
  const auto terms = table.satisfied_terms(y, 2);
  if (terms.empty()) return sig;
  sig.a = table.dictators[terms[0]].eval(y);
  if (terms.size() == 1) {
    sig.sigma = Sigma::unique(terms[0]);
  } else {
    sig.sigma = Sigma::multi(terms[0], terms[1]);
    sig.b = table.dictators[terms[1]].eval(y);
  }
  return sig;
}

}  // namespace

UnateSignature unate_signature(const UnateInstance& inst, const BitString& x) {
  if (x.size() != inst.n()) throw InvalidArgument("dimension mismatch");
  const BitString y = x ^ inst.orientation();
  if (inst.band_class_deoriented(y) != WeightClass::middle)
    throw ContractViolation("signature queries must lie in the middle layers (|y_M| within n/4 +- sqrt(n))");
  return single_level_signature(inst.table(), y);
}

UnateSignature onelevel_signature(const OneLevelInstance& inst, const BitString& x) {
  if (x.size() != inst.n()) throw InvalidArgument("dimension mismatch");
  if (inst.band().classify(x.weight()) != WeightClass::middle)
    throw ContractViolation("signature queries must lie in the middle layers (|x| within n/2 +- sqrt(n))");
  return single_level_signature(inst.table(), x);
}

bool value_from_unate_signature(WeightClass band_class, const std::optional<UnateSignature>& sig) {
  if (band_class == WeightClass::low) return false;
  if (band_class == WeightClass::high) return true;
  if (!sig) throw InvalidArgument("middle-layer value needs a signature");
  sig->validate();
  switch (sig->sigma.kind) {
    case Sigma::Kind::zero:
      return false;
    case Sigma::Kind::unique:
      return *sig->a;
    case Sigma::Kind::multi:
      return true;
  }
  return false;
}

Json to_json(const Sigma& s) {
  switch (s.kind) {
    case Sigma::Kind::zero:
      return Json{{"kind", "zero"}};
    case Sigma::Kind::unique:
      return Json{{"kind", "unique"}, {"i", s.i + 1}};
    case Sigma::Kind::multi:
      return Json{{"kind", "multi"}, {"i", s.i + 1}, {"i2", s.i2 + 1}};
  }
  return {};
}

Json to_json(const Tau& t) {
  switch (t.kind) {
    case Tau::Kind::bottom:
      return Json{{"kind", "bottom"}};
    case Tau::Kind::all_one:
      return Json{{"kind", "all_one"}};
    case Tau::Kind::unique_false:
      return Json{{"kind", "unique_false"}, {"j", t.j + 1}};
    case Tau::Kind::multi_false:
      return Json{{"kind", "multi_false"}, {"j", t.j + 1}, {"j2", t.j2 + 1}};
  }
  return {};
}

namespace {
Json opt_bit(const std::optional<bool>& v) { return v ? Json(*v ? 1 : 0) : Json(nullptr); }
std::string opt_str(const std::optional<bool>& v) { return v ? (*v ? "1" : "0") : "_"; }

std::string sigma_str(const Sigma& s) {
  switch (s.kind) {
    case Sigma::Kind::zero:
      return "Zero";
    case Sigma::Kind::unique:
      return "Unique(" + std::to_string(s.i + 1) + ")";
    case Sigma::Kind::multi:
      return "Multi(" + std::to_string(s.i + 1) + "," + std::to_string(s.i2 + 1) + ")";
  }
  return "?";
}

std::string tau_str(const Tau& t) {
  switch (t.kind) {
    case Tau::Kind::bottom:
      return "Bottom";
    case Tau::Kind::all_one:
      return "AllOne";
    case Tau::Kind::unique_false:
      return "UniqueFalse(" + std::to_string(t.j + 1) + ")";
    case Tau::Kind::multi_false:
      return "MultiFalse(" + std::to_string(t.j + 1) + "," + std::to_string(t.j2 + 1) + ")";
  }
  return "?";
}
}  // namespace

Json to_json(const FullSignature& s) {
  return Json{{"sigma", to_json(s.sigma)}, {"tau", to_json(s.tau)}, {"a", opt_bit(s.a)}, {"b", opt_bit(s.b)}};
}

Json to_json(const UnateSignature& s) {
  return Json{{"sigma", to_json(s.sigma)}, {"a", opt_bit(s.a)}, {"b", opt_bit(s.b)}};
}

std::string to_string(const FullSignature& s) {
  return "(" + sigma_str(s.sigma) + ", " + tau_str(s.tau) + ", " + opt_str(s.a) + ", " + opt_str(s.b) + ")";
}

std::string to_string(const UnateSignature& s) {
  return "(" + sigma_str(s.sigma) + ", " + opt_str(s.a) + ", " + opt_str(s.b) + ")";
}

}  // namespace ptlab
