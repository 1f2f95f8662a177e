#include "ptlab/core/rng.hpp"

#include "ptlab/core/error.hpp"

namespace ptlab {

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

std::uint64_t derive_key(std::uint64_t seed, std::string_view tag, std::span<const std::uint64_t> counters) {
  std::uint64_t h = mix64(seed ^ 0x5851f42d4c957f2dull);
  h = mix64(h ^ fnv1a64(tag));
  h = mix64(h + counters.size() * kGolden);
  for (auto c : counters) h = mix64(h ^ mix64(c + kGolden));
  return h;
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::string_view domain_tag,
                     std::initializer_list<std::uint64_t> counters)
    : key_(derive_key(master_seed, domain_tag, std::span<const std::uint64_t>(counters.begin(), counters.size()))) {}

RngStream::RngStream(std::uint64_t master_seed, std::string_view domain_tag, std::span<const std::uint64_t> counters)
    : key_(derive_key(master_seed, domain_tag, counters)) {}

std::uint64_t RngStream::next_u64() noexcept {
  // Two mixing rounds over (key, index); the index is the counter.
  const std::uint64_t i = ++index_;
  return mix64(mix64(key_ + i * kGolden) ^ key_);
}

std::uint64_t RngStream::below(std::uint64_t range) {
  if (range == 0) throw InvalidArgument("range must be positive");
  // Lemire's multiply-shift with rejection.
  std::uint64_t x = next_u64();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * range;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      x = next_u64();
      m = static_cast<unsigned __int128>(x) * range;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t RngStream::draw(std::uint64_t range) { return below(range) + 1; }

double RngStream::uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

bool RngStream::bernoulli(double p) noexcept { return uniform() < p; }

BitString random_bitstring(RngStream& rng, std::size_t n) {
  BitString x(n);
  for (std::size_t k = 0; k < n; k += 64) {
    std::uint64_t v = rng.next_u64();
    for (std::size_t b = 0; b < 64 && k + b < n; ++b)
      if ((v >> b) & 1) x.set(k + b);
  }
  return x;
}

std::vector<std::uint32_t> sample_without_replacement(RngStream& rng, std::vector<std::uint32_t> pool,
                                                      std::size_t k) {
  if (k > pool.size()) throw InvalidArgument("sample size exceeds pool");
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

void shuffle(RngStream& rng, std::vector<std::uint32_t>& v) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

}  // namespace ptlab
