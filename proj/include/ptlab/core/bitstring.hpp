#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ptlab {

inline constexpr std::size_t kMaxDimension = 4096;

// Fixed-length bit vector over {0,1}^n. Coordinates are 0-based in code;
// coordinate k corresponds to x_{k+1}. As an integer, x = sum_k x_k 2^k, which
// is also the truth-table index and the hex serialization.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n);

  static BitString ones(std::size_t n);
  static BitString from_indices(std::size_t n, std::span<const std::uint32_t> ones_at);
  static BitString from_integer(std::size_t n, std::uint64_t value);
  static BitString from_hex(std::size_t n, std::string_view hex);
  // Characters '0'/'1', leftmost character is x_1.
  static BitString from_bits(std::string_view bits);

  std::size_t size() const noexcept { return n_; }
  bool get(std::size_t k) const noexcept { return (words_[k >> 6] >> (k & 63)) & 1u; }
  bool operator[](std::size_t k) const noexcept { return get(k); }
  void set(std::size_t k, bool v = true) noexcept {
    const std::uint64_t m = std::uint64_t{1} << (k & 63);
    if (v)
      words_[k >> 6] |= m;
    else
      words_[k >> 6] &= ~m;
  }
  void flip(std::size_t k) noexcept { words_[k >> 6] ^= std::uint64_t{1} << (k & 63); }

  std::size_t weight() const noexcept;
  bool none() const noexcept;
  std::uint64_t to_integer() const;  // requires n <= 64
  std::string to_hex() const;
  std::string to_bits() const;
  std::vector<std::uint32_t> ones_indices() const;
  std::vector<std::uint32_t> zeros_indices() const;

  BitString& operator^=(const BitString& o);
  BitString& operator&=(const BitString& o);
  BitString& operator|=(const BitString& o);
  BitString operator~() const;
  // Clears every bit set in o.
  BitString& andnot(const BitString& o);

  friend BitString operator^(BitString a, const BitString& b) { return a ^= b; }
  friend BitString operator&(BitString a, const BitString& b) { return a &= b; }
  friend BitString operator|(BitString a, const BitString& b) { return a |= b; }
  friend bool operator==(const BitString& a, const BitString& b) noexcept {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }
  friend bool operator<(const BitString& a, const BitString& b) noexcept;

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  std::size_t hash() const noexcept;

 private:
  void trim() noexcept;
  void require_same(const BitString& o) const;

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitStringHash {
  std::size_t operator()(const BitString& x) const noexcept { return x.hash(); }
};

// |a & b|, |a & ~b|; both require equal dimension.
std::size_t count_and(const BitString& a, const BitString& b);
std::size_t count_andnot(const BitString& a, const BitString& b);
// True when every set bit of a is set in b.
bool is_subset(const BitString& a, const BitString& b);
bool intersects(const BitString& a, const BitString& b);
std::size_t hamming_distance(const BitString& a, const BitString& b);

// x <= y coordinatewise and x != y.
bool precedes(const BitString& x, const BitString& y);

}  // namespace ptlab
