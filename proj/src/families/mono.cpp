#include "ptlab/families/mono.hpp"

#include <cmath>

#include "ptlab/core/error.hpp"
#include "ptlab/core/math.hpp"
#include "ptlab/core/rng.hpp"

namespace ptlab {

namespace {

std::vector<std::uint32_t> derive_vars(std::uint64_t seed, std::string_view role,
                                       std::initializer_list<std::uint64_t> ctr, std::uint32_t len,
                                       std::uint32_t n) {
  RngStream rng(seed, role, ctr);
  std::vector<std::uint32_t> v(len);
  for (auto& k : v) k = static_cast<std::uint32_t>(rng.below(n));
  return v;
}

Dictator derive_dictator(std::uint64_t seed, std::uint64_t i, std::uint64_t j, std::uint32_t n, World world) {
  RngStream rng(seed, "mono.H", {i, j});
  return Dictator{static_cast<std::uint32_t>(rng.below(n)), world == World::yes};
}

void set_mask(std::uint64_t* words, const std::uint32_t* vars, std::size_t len) {
  for (std::size_t t = 0; t < len; ++t) words[vars[t] >> 6] |= std::uint64_t{1} << (vars[t] & 63);
}

}  // namespace

MonoInstance MonoInstance::sample(std::uint32_t n, World world, std::uint64_t seed, Storage storage) {
  if (!is_perfect_square(n)) throw InvalidArgument("n must be a perfect square");
  if (n < 9) throw InvalidArgument("n must be at least 9");
  const auto root = static_cast<std::uint32_t>(isqrt(n));
  if (root >= 63) throw ResourceLimit("N = 2^sqrt(n) does not fit");
  return sample_shaped(n, std::uint64_t{1} << root, root, world, seed, storage);
}

MonoInstance MonoInstance::sample_shaped(std::uint32_t n, std::uint64_t num_terms, std::uint32_t term_len, World world,
                                         std::uint64_t seed, Storage storage) {
  if (n == 0 || n > kMaxDimension) throw InvalidArgument("n out of range");
  if (num_terms == 0 || term_len == 0) throw InvalidArgument("N and term length must be positive");
  if (num_terms > kTermCap) throw ResourceLimit("too many terms");
  if (storage == Storage::eager && (num_terms > (std::uint64_t{1} << 32) || num_terms * num_terms > kExplicitCellCap))
    throw ResourceLimit("explicit storage requires N^2 <= 2^22; use lazy storage");

  MonoInstance inst;
  inst.n_ = n;
  inst.N_ = num_terms;
  inst.term_len_ = term_len;
  inst.world_ = world;
  inst.storage_ = storage;
  inst.seed_ = seed;
  inst.band_ = Band{n / 2.0, std::sqrt(static_cast<double>(n))};
  inst.words_ = (n + 63) / 64;

  inst.term_offsets_.reserve(num_terms + 1);
  inst.term_offsets_.push_back(0);
  inst.term_vars_.reserve(num_terms * term_len);
  for (std::uint64_t i = 0; i < num_terms; ++i) {
    auto v = derive_vars(seed, "mono.T", {i}, term_len, n);
    inst.term_vars_.insert(inst.term_vars_.end(), v.begin(), v.end());
    inst.term_offsets_.push_back(inst.term_vars_.size());
  }
  inst.build_term_masks();

  if (storage == Storage::eager) {
    const std::uint64_t cells = num_terms * num_terms;
    inst.clause_offsets_.reserve(cells + 1);
    inst.clause_offsets_.push_back(0);
    inst.clause_vars_.reserve(cells * term_len);
    inst.dictators_.reserve(cells);
    for (std::uint64_t i = 0; i < num_terms; ++i) {
      for (std::uint64_t j = 0; j < num_terms; ++j) {
        auto v = derive_vars(seed, "mono.C", {i, j}, term_len, n);
        inst.clause_vars_.insert(inst.clause_vars_.end(), v.begin(), v.end());
        inst.clause_offsets_.push_back(inst.clause_vars_.size());
        inst.dictators_.push_back(derive_dictator(seed, i, j, n, world));
      }
    }
    inst.clause_masks_.assign(cells * inst.words_, 0);
    for (std::uint64_t c = 0; c < cells; ++c)
      set_mask(&inst.clause_masks_[c * inst.words_], &inst.clause_vars_[inst.clause_offsets_[c]],
               inst.clause_offsets_[c + 1] - inst.clause_offsets_[c]);
  }
  return inst;
}

MonoInstance MonoInstance::from_parts(std::uint32_t n, World world, std::vector<std::vector<std::uint32_t>> terms,
                                      std::vector<std::vector<std::uint32_t>> clauses,
                                      std::vector<Dictator> dictators) {
  if (n == 0 || n > kMaxDimension) throw InvalidArgument("n out of range");
  const std::uint64_t N = terms.size();
  if (N == 0) throw InvalidArgument("at least one term is required");
  if (clauses.size() != N * N || dictators.size() != N * N)
    throw InvalidArgument("clauses and dictators must be N x N");
  MonoInstance inst;
  inst.n_ = n;
  inst.N_ = N;
  inst.term_len_ = static_cast<std::uint32_t>(terms[0].size());
  inst.world_ = world;
  inst.storage_ = Storage::eager;
  inst.band_ = Band{n / 2.0, std::sqrt(static_cast<double>(n))};
  inst.words_ = (n + 63) / 64;
  auto check = [n](const std::vector<std::uint32_t>& v) {
    if (v.empty()) throw InvalidArgument("terms and clauses must be nonempty");
    for (auto k : v)
      if (k >= n) throw InvalidArgument("variable index out of range");
  };
  inst.term_offsets_.push_back(0);
  for (auto& t : terms) {
    check(t);
    inst.term_vars_.insert(inst.term_vars_.end(), t.begin(), t.end());
    inst.term_offsets_.push_back(inst.term_vars_.size());
  }
  inst.build_term_masks();
  inst.clause_offsets_.push_back(0);
  for (auto& c : clauses) {
    check(c);
    inst.clause_vars_.insert(inst.clause_vars_.end(), c.begin(), c.end());
    inst.clause_offsets_.push_back(inst.clause_vars_.size());
  }
  inst.clause_masks_.assign(N * N * inst.words_, 0);
  for (std::uint64_t c = 0; c < N * N; ++c)
    set_mask(&inst.clause_masks_[c * inst.words_], &inst.clause_vars_[inst.clause_offsets_[c]],
             inst.clause_offsets_[c + 1] - inst.clause_offsets_[c]);
  for (auto& d : dictators) {
    if (d.index >= n) throw InvalidArgument("dictator index out of range");
    if (d.positive != (world == World::yes))
      throw InvalidArgument("dictator polarity must be positive in the yes world and negative in the no world");
  }
  inst.dictators_ = std::move(dictators);
  return inst;
}

void MonoInstance::build_term_masks() {
  term_masks_.assign(N_ * words_, 0);
  for (std::uint64_t i = 0; i < N_; ++i)
    set_mask(&term_masks_[i * words_], &term_vars_[term_offsets_[i]], term_offsets_[i + 1] - term_offsets_[i]);
}

MonoInstance MonoInstance::with_world(World w) const {
  MonoInstance out = *this;
  out.world_ = w;
  for (auto& d : out.dictators_) d.positive = (w == World::yes);
  return out;
}

void MonoInstance::check_dim(const BitString& x) const {
  if (x.size() != n_) throw InvalidArgument("dimension mismatch");
}

std::vector<std::uint32_t> MonoInstance::term(std::uint64_t i) const {
  if (i >= N_) throw InvalidArgument("term index out of range");
  return {term_vars_.begin() + term_offsets_[i], term_vars_.begin() + term_offsets_[i + 1]};
}

std::vector<std::uint32_t> MonoInstance::clause(std::uint64_t i, std::uint64_t j) const {
  if (i >= N_ || j >= N_) throw InvalidArgument("clause index out of range");
  if (storage_ == Storage::lazy) return derive_vars(*seed_, "mono.C", {i, j}, term_len_, n_);
  const std::uint64_t c = i * N_ + j;
  return {clause_vars_.begin() + clause_offsets_[c], clause_vars_.begin() + clause_offsets_[c + 1]};
}

Dictator MonoInstance::dictator(std::uint64_t i, std::uint64_t j) const {
  if (i >= N_ || j >= N_) throw InvalidArgument("cell index out of range");
  if (!dictators_.empty()) return dictators_[i * N_ + j];
  return derive_dictator(*seed_, i, j, n_, world_);
}

bool MonoInstance::term_satisfied(std::uint64_t i, const BitString& x) const {
  const std::uint64_t* m = &term_masks_[i * words_];
  const auto& xw = x.words();
  for (std::size_t w = 0; w < words_; ++w)
    if (m[w] & ~xw[w]) return false;
  return true;
}

bool MonoInstance::clause_falsified(std::uint64_t i, std::uint64_t j, const BitString& x) const {
  if (storage_ == Storage::lazy) {
    RngStream rng(*seed_, "mono.C", {i, j});
    for (std::uint32_t t = 0; t < term_len_; ++t)
      if (x.get(rng.below(n_))) return false;
    return true;
  }
  const std::uint64_t* m = &clause_masks_[(i * N_ + j) * words_];
  const auto& xw = x.words();
  for (std::size_t w = 0; w < words_; ++w)
    if (m[w] & xw[w]) return false;
  return true;
}

std::vector<std::uint64_t> MonoInstance::satisfied_terms(const BitString& x, std::size_t limit) const {
  check_dim(x);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < N_ && out.size() < limit; ++i)
    if (term_satisfied(i, x)) out.push_back(i);
  return out;
}

std::vector<std::uint64_t> MonoInstance::falsified_clauses(std::uint64_t i, const BitString& x,
                                                           std::size_t limit) const {
  check_dim(x);
  std::vector<std::uint64_t> out;
  for (std::uint64_t j = 0; j < N_ && out.size() < limit; ++j)
    if (clause_falsified(i, j, x)) out.push_back(j);
  return out;
}

Gamma MonoInstance::multiplexer(const BitString& x) const {
  const auto terms = satisfied_terms(x, 2);
  if (terms.empty()) return Gamma::zero();
  if (terms.size() >= 2) return Gamma::one();
  const auto clauses = falsified_clauses(terms[0], x, 2);
  if (clauses.empty()) return Gamma::one();
  if (clauses.size() >= 2) return Gamma::zero();
  return Gamma::pair(terms[0], clauses[0]);
}

bool MonoInstance::eval(const BitString& x) const {
  check_dim(x);
  switch (band_.classify(x.weight())) {
    case WeightClass::low:
      return false;
    case WeightClass::high:
      return true;
    case WeightClass::middle:
      break;
  }
  const Gamma g = multiplexer(x);
  switch (g.kind) {
    case Gamma::Kind::zero:
      return false;
    case Gamma::Kind::one:
      return true;
    default:
      return dictator(g.i, g.j).eval(x);
  }
}

}  // namespace ptlab
