#include "ptlab/core/bitstring.hpp"

#include <algorithm>
#include <bit>

#include "ptlab/core/error.hpp"

namespace ptlab {

namespace {

std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitString::BitString(std::size_t n) : n_(n), words_(word_count(n), 0) {
  if (n == 0 || n > kMaxDimension)
    throw InvalidArgument("dimension must be in 1.." + std::to_string(kMaxDimension));
}

BitString BitString::ones(std::size_t n) {
  BitString x(n);
  std::fill(x.words_.begin(), x.words_.end(), ~std::uint64_t{0});
  x.trim();
  return x;
}

BitString BitString::from_indices(std::size_t n, std::span<const std::uint32_t> ones_at) {
  BitString x(n);
  for (auto k : ones_at) {
    if (k >= n) throw InvalidArgument("index out of range");
    x.set(k);
  }
  return x;
}

BitString BitString::from_integer(std::size_t n, std::uint64_t value) {
  BitString x(n);
  x.words_[0] = value;
  x.trim();
  if (n < 64 && (value >> n) != 0) throw InvalidArgument("integer does not fit the dimension");
  return x;
}

BitString BitString::from_hex(std::size_t n, std::string_view hex) {
  BitString x(n);
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.empty()) throw InvalidArgument("empty hex string");
  std::size_t bit = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
    int v = hex_value(*it);
    if (v < 0) throw InvalidArgument("bad hex digit");
    for (int b = 0; b < 4; ++b) {
      if (!((v >> b) & 1)) continue;
      if (bit + b >= n) throw InvalidArgument("hex string exceeds dimension");
      x.set(bit + b);
    }
  }
  return x;
}

BitString BitString::from_bits(std::string_view bits) {
  BitString x(bits.size());
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] == '1')
      x.set(k);
    else if (bits[k] != '0')
      throw InvalidArgument("bit string must contain only 0 and 1");
  }
  return x;
}

std::size_t BitString::weight() const noexcept {
  std::size_t w = 0;
  for (auto v : words_) w += std::popcount(v);
  return w;
}

bool BitString::none() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t v) { return v == 0; });
}

std::uint64_t BitString::to_integer() const {
  if (n_ > 64) throw InvalidArgument("to_integer requires n <= 64");
  return words_[0];
}

std::string BitString::to_hex() const {
  static const char* digits = "0123456789abcdef";
  const std::size_t len = (n_ + 3) / 4;
  std::string out(len, '0');
  for (std::size_t d = 0; d < len; ++d) {
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      std::size_t k = 4 * d + b;
      if (k < n_ && get(k)) v |= 1 << b;
    }
    out[len - 1 - d] = digits[v];
  }
  return out;
}

std::string BitString::to_bits() const {
  std::string out(n_, '0');
  for (std::size_t k = 0; k < n_; ++k)
    if (get(k)) out[k] = '1';
  return out;
}

std::vector<std::uint32_t> BitString::ones_indices() const {
  std::vector<std::uint32_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t v = words_[w];
    while (v) {
      out.push_back(static_cast<std::uint32_t>(64 * w + std::countr_zero(v)));
      v &= v - 1;
    }
  }
  return out;
}

std::vector<std::uint32_t> BitString::zeros_indices() const { return (~*this).ones_indices(); }

void BitString::require_same(const BitString& o) const {
  if (n_ != o.n_) throw InvalidArgument("dimension mismatch");
}

BitString& BitString::operator^=(const BitString& o) {
  require_same(o);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
  return *this;
}

BitString& BitString::operator&=(const BitString& o) {
  require_same(o);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
  return *this;
}

BitString& BitString::operator|=(const BitString& o) {
  require_same(o);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
  return *this;
}

BitString& BitString::andnot(const BitString& o) {
  require_same(o);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
  return *this;
}

BitString BitString::operator~() const {
  BitString x = *this;
  for (auto& v : x.words_) v = ~v;
  x.trim();
  return x;
}

bool operator<(const BitString& a, const BitString& b) noexcept {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  for (std::size_t w = a.words_.size(); w-- > 0;)
    if (a.words_[w] != b.words_[w]) return a.words_[w] < b.words_[w];
  return false;
}

std::size_t BitString::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ n_;
  for (auto v : words_) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 31));
}

void BitString::trim() noexcept {
  const std::size_t r = n_ & 63;
  if (r != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << r) - 1;
}

std::size_t count_and(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw InvalidArgument("dimension mismatch");
  std::size_t c = 0;
  for (std::size_t w = 0; w < a.words().size(); ++w) c += std::popcount(a.words()[w] & b.words()[w]);
  return c;
}

std::size_t count_andnot(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw InvalidArgument("dimension mismatch");
  std::size_t c = 0;
  for (std::size_t w = 0; w < a.words().size(); ++w) c += std::popcount(a.words()[w] & ~b.words()[w]);
  return c;
}

bool is_subset(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw InvalidArgument("dimension mismatch");
  for (std::size_t w = 0; w < a.words().size(); ++w)
    if (a.words()[w] & ~b.words()[w]) return false;
  return true;
}

bool intersects(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw InvalidArgument("dimension mismatch");
  for (std::size_t w = 0; w < a.words().size(); ++w)
    if (a.words()[w] & b.words()[w]) return true;
  return false;
}

std::size_t hamming_distance(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw InvalidArgument("dimension mismatch");
  std::size_t c = 0;
  for (std::size_t w = 0; w < a.words().size(); ++w) c += std::popcount(a.words()[w] ^ b.words()[w]);
  return c;
}

bool precedes(const BitString& x, const BitString& y) { return is_subset(x, y) && !(x == y); }

}  // namespace ptlab
