#include "ptlab/families/unate.hpp"

#include <algorithm>
#include <cmath>

#include "ptlab/core/error.hpp"
#include "ptlab/core/math.hpp"
#include "ptlab/core/rng.hpp"

namespace ptlab {

void TermTable::build_masks() {
  masks.clear();
  masks.reserve(terms.size());
  for (auto& t : terms) masks.push_back(BitString::from_indices(n, t));
}

std::vector<std::uint64_t> TermTable::satisfied_terms(const BitString& y, std::size_t limit) const {
  if (y.size() != n) throw InvalidArgument("dimension mismatch");
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < masks.size() && out.size() < limit; ++i)
    if (is_subset(masks[i], y)) out.push_back(i);
  return out;
}

Gamma TermTable::multiplexer(const BitString& y) const {
  const auto sat = satisfied_terms(y, 2);
  if (sat.empty()) return Gamma::zero();
  if (sat.size() >= 2) return Gamma::one();
  return Gamma::index(sat[0]);
}

namespace {

bool eval_table(const TermTable& t, const BitString& y) {
  const Gamma g = t.multiplexer(y);
  switch (g.kind) {
    case Gamma::Kind::zero:
      return false;
    case Gamma::Kind::one:
      return true;
    default:
      return t.dictators[g.i].eval(y);
  }
}

bool truncated(WeightClass c, bool& value) {
  if (c == WeightClass::low) {
    value = false;
    return true;
  }
  if (c == WeightClass::high) {
    value = true;
    return true;
  }
  return false;
}

void validate_terms(std::uint32_t n, std::vector<std::vector<std::uint32_t>>& terms) {
  for (auto& t : terms) {
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end()) throw InvalidArgument("term has duplicate variables");
    for (auto k : t)
      if (k >= n) throw InvalidArgument("variable index out of range");
  }
}

}  // namespace

std::uint64_t UnateInstance::num_terms_for(std::uint32_t n) {
  const double v = std::pow(1.0 + 1.0 / std::sqrt(static_cast<double>(n)), n / 4.0);
  return static_cast<std::uint64_t>(std::ceil(v));
}

UnateInstance UnateInstance::sample(std::uint32_t n, World world, std::uint64_t seed) {
  if (n % 2 != 0) throw InvalidArgument("n must be even");
  if (n < 16 || n > kMaxDimension) throw InvalidArgument("n must be at least 16");
  const std::uint64_t N = num_terms_for(n);
  if (N > (std::uint64_t{1} << 20)) throw ResourceLimit("too many terms");

  std::vector<std::uint32_t> all(n);
  for (std::uint32_t k = 0; k < n; ++k) all[k] = k;
  RngStream mrng(seed, "unate.M");
  auto mv = sample_without_replacement(mrng, all, n / 2);
  IndexSet m(n, mv);
  const BitString m_mask = m.mask();
  std::vector<std::uint32_t> mbar;
  for (std::uint32_t k = 0; k < n; ++k)
    if (!m_mask.get(k)) mbar.push_back(k);

  const double p = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<std::vector<std::uint32_t>> terms(N);
  std::vector<Dictator> dict(N);
  for (std::uint64_t i = 0; i < N; ++i) {
    RngStream trng(seed, "unate.T", {i});
    for (auto k : m.members())
      if (trng.bernoulli(p)) terms[i].push_back(k);
    RngStream hrng(seed, "unate.H", {i});
    dict[i].index = mbar[hrng.below(mbar.size())];
    if (world == World::no) {
      RngStream prng(seed, "unate.pol", {i});
      dict[i].positive = prng.coin();
    }
  }
  RngStream rrng(seed, "unate.r"), srng(seed, "unate.s");
  std::vector<bool> r(n / 2), s(n / 2);
  for (std::size_t t = 0; t < r.size(); ++t) r[t] = rrng.coin();
  for (std::size_t t = 0; t < s.size(); ++t) s[t] = srng.coin();

  UnateInstance inst = from_parts(n, world, std::move(m), std::move(terms), std::move(dict), std::move(r), std::move(s));
  inst.seed_ = seed;
  return inst;
}

UnateInstance UnateInstance::from_parts(std::uint32_t n, World world, IndexSet m,
                                        std::vector<std::vector<std::uint32_t>> terms,
                                        std::vector<Dictator> dictators, std::vector<bool> r, std::vector<bool> s) {
  if (n == 0 || n > kMaxDimension || n % 2 != 0) throw InvalidArgument("n must be even");
  if (m.dimension() != n || m.size() != n / 2) throw InvalidArgument("M must be an n/2-subset of [n]");
  if (terms.empty() || terms.size() != dictators.size()) throw InvalidArgument("need one dictator per term");
  if (r.size() != n / 2 || s.size() != n / 2) throw InvalidArgument("r and s must have n/2 entries");
  validate_terms(n, terms);
  UnateInstance inst;
  inst.world_ = world;
  inst.m_mask_ = m.mask();
  inst.mbar_mask_ = ~inst.m_mask_;
  inst.mbar_ = IndexSet::from_mask(inst.mbar_mask_);
  inst.m_ = std::move(m);
  for (auto& t : terms)
    for (auto k : t)
      if (!inst.m_mask_.get(k)) throw InvalidArgument("terms must be subsets of M");
  for (auto& d : dictators) {
    if (d.index >= n || inst.m_mask_.get(d.index)) throw InvalidArgument("dictator index must lie outside M");
    if (world == World::yes && !d.positive) throw InvalidArgument("yes-world dictators must be positive");
  }
  inst.table_.n = n;
  inst.table_.terms = std::move(terms);
  inst.table_.dictators = std::move(dictators);
  inst.table_.build_masks();
  inst.r_ = std::move(r);
  inst.s_ = std::move(s);
  inst.orient_ = BitString(n);
  for (std::size_t t = 0; t < inst.r_.size(); ++t)
    if (inst.r_[t]) inst.orient_.set(inst.m_.members()[t]);
  for (std::size_t t = 0; t < inst.s_.size(); ++t)
    if (inst.s_[t]) inst.orient_.set(inst.mbar_.members()[t]);
  inst.band_ = Band{n / 4.0, std::sqrt(static_cast<double>(n))};
  return inst;
}

bool UnateInstance::eval_deoriented(const BitString& z) const {
  bool v;
  if (truncated(band_class_deoriented(z), v)) return v;
  return eval_table(table_, z);
}

bool UnateInstance::eval(const BitString& x) const {
  if (x.size() != table_.n) throw InvalidArgument("dimension mismatch");
  return eval_deoriented(x ^ orient_);
}

OneLevelInstance OneLevelInstance::sample(std::uint32_t n, World world, std::uint64_t seed) {
  if (!is_perfect_square(n)) throw InvalidArgument("n must be a perfect square");
  if (n < 9 || n > kMaxDimension) throw InvalidArgument("n must be at least 9");
  const auto root = static_cast<std::uint32_t>(isqrt(n));
  if (root > 20) throw ResourceLimit("N = 2^sqrt(n) exceeds the term cap");
  const std::uint64_t N = std::uint64_t{1} << root;
  const double p = 1.0 / root;
  std::vector<std::vector<std::uint32_t>> terms(N);
  std::vector<Dictator> dict(N);
  for (std::uint64_t i = 0; i < N; ++i) {
    RngStream trng(seed, "onelevel.T", {i});
    for (std::uint32_t k = 0; k < n; ++k)
      if (trng.bernoulli(p)) terms[i].push_back(k);
    RngStream hrng(seed, "onelevel.H", {i});
    dict[i] = Dictator{static_cast<std::uint32_t>(hrng.below(n)), world == World::yes};
  }
  OneLevelInstance inst = from_parts(n, world, std::move(terms), std::move(dict));
  inst.seed_ = seed;
  return inst;
}

OneLevelInstance OneLevelInstance::from_parts(std::uint32_t n, World world,
                                              std::vector<std::vector<std::uint32_t>> terms,
                                              std::vector<Dictator> dictators) {
  if (n == 0 || n > kMaxDimension) throw InvalidArgument("n out of range");
  if (terms.empty() || terms.size() != dictators.size()) throw InvalidArgument("need one dictator per term");
  validate_terms(n, terms);
  for (auto& d : dictators) {
    if (d.index >= n) throw InvalidArgument("dictator index out of range");
    if (d.positive != (world == World::yes))
      throw InvalidArgument("dictator polarity must be positive in the yes world and negative in the no world");
  }
  OneLevelInstance inst;
  inst.world_ = world;
  inst.table_.n = n;
  inst.table_.terms = std::move(terms);
  inst.table_.dictators = std::move(dictators);
  inst.table_.build_masks();
  inst.band_ = Band{n / 2.0, std::sqrt(static_cast<double>(n))};
  return inst;
}

Gamma OneLevelInstance::multiplexer(const BitString& x) const { return table_.multiplexer(x); }

bool OneLevelInstance::eval(const BitString& x) const {
  if (x.size() != table_.n) throw InvalidArgument("dimension mismatch");
  bool v;
  if (truncated(band_.classify(x.weight()), v)) return v;
  return eval_table(table_, x);
}

FiInstance::FiInstance(std::uint32_t n, std::uint32_t i) : n_(n), i_(i) {
  if (n == 0 || n + 2 > kMaxDimension) throw InvalidArgument("n out of range");
  if (i >= n) throw InvalidArgument("i must lie in [n]");
}

bool FiInstance::eval(const BitString& z) const {
  if (z.size() != n_ + 2) throw InvalidArgument("dimension mismatch");
  const bool a = z.get(0), b = z.get(1), xi = z.get(2 + i_);
  if (!a && !b) return false;
  if (!a && b) return !xi;
  if (a && !b) return xi;
  return true;
}

}  // namespace ptlab
