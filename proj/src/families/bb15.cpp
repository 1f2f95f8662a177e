#include "ptlab/families/bb15.hpp"

#include <cmath>

#include "ptlab/core/error.hpp"
#include "ptlab/core/math.hpp"
#include "ptlab/core/rng.hpp"

namespace ptlab {

BB15Instance BB15Instance::sample(std::uint32_t n, World world, std::uint64_t seed) {
  if (!is_perfect_square(n)) throw InvalidArgument("n must be a perfect square");
  if (n < 9 || n > kMaxDimension) throw InvalidArgument("n out of range");
  const auto root = static_cast<std::uint32_t>(isqrt(n));
  if (root > 22) throw ResourceLimit("N = 2^sqrt(n) exceeds the term cap");
  const std::uint64_t N = std::uint64_t{1} << root;

  std::vector<std::vector<std::uint32_t>> terms(N);
  for (std::uint64_t i = 0; i < N; ++i) {
    RngStream rng(seed, "bb15.T", {i});
    terms[i].resize(root);
    for (auto& k : terms[i]) k = static_cast<std::uint32_t>(rng.below(n));
  }
  std::vector<std::uint32_t> s;
  if (world == World::no) {
    RngStream rng(seed, "bb15.S");
    const double p = 1.0 / root;
    for (std::uint32_t k = 0; k < n; ++k)
      if (rng.bernoulli(p)) s.push_back(k);
  }
  BB15Instance inst = from_parts(n, world, std::move(terms), IndexSet(n, std::move(s)));
  inst.seed_ = seed;
  return inst;
}

BB15Instance BB15Instance::from_parts(std::uint32_t n, World world, std::vector<std::vector<std::uint32_t>> terms,
                                      IndexSet s) {
  if (n == 0 || n > kMaxDimension) throw InvalidArgument("n out of range");
  if (terms.empty()) throw InvalidArgument("at least one term is required");
  if (terms.size() > kTermCap) throw ResourceLimit("too many terms");
  if (s.dimension() != n) throw InvalidArgument("S dimension mismatch");
  if (world == World::yes && !s.empty()) throw InvalidArgument("S must be empty in the yes world");
  BB15Instance inst;
  inst.n_ = n;
  inst.world_ = world;
  inst.band_ = Band{n / 2.0, std::sqrt(static_cast<double>(n))};
  for (auto& t : terms) {
    if (t.empty()) throw InvalidArgument("terms must be nonempty");
    for (auto k : t)
      if (k >= n) throw InvalidArgument("variable index out of range");
  }
  inst.terms_ = std::move(terms);
  inst.s_ = std::move(s);
  inst.s_mask_ = inst.s_.mask();
  inst.build_masks();
  return inst;
}

void BB15Instance::build_masks() {
  masks_.clear();
  masks_.reserve(terms_.size());
  for (auto& t : terms_) masks_.push_back(BitString::from_indices(n_, t));
}

bool BB15Instance::dnf(const BitString& y) const {
  for (auto& m : masks_)
    if (is_subset(m, y)) return true;
  return false;
}

bool BB15Instance::eval(const BitString& x) const {
  if (x.size() != n_) throw InvalidArgument("dimension mismatch");
  const BitString y = x ^ s_mask_;
  switch (band_.classify(truncate_on_query_ ? x.weight() : y.weight())) {
    case WeightClass::low:
      return false;
    case WeightClass::high:
      return true;
    case WeightClass::middle:
      break;
  }
  return dnf(y);
}

}  // namespace ptlab
