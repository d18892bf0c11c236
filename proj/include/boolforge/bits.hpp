#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace boolforge {

/// Fixed-size bit container packed into 64-bit words.  Bits beyond size()
/// in the last word are kept zero so whole-word operations stay valid.
class PackedBits {
public:
  PackedBits() = default;
  explicit PackedBits(std::size_t nbits)
      : size_(nbits), words_((nbits + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  /// Zeroes any bits at positions >= size() in the last word.
  void mask_tail() {
    if (const std::size_t tail = size_ & 63; tail != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << tail) - 1;
  }

  friend bool operator==(const PackedBits&, const PackedBits&) = default;

  std::string to_binary_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

  /// Four bits per digit, table order; the earlier position is the more
  /// significant bit of its digit.  Requires size() divisible by 4.
  std::string to_hex_string() const {
    if (size_ % 4 != 0)
      throw std::invalid_argument("hex form needs a bit count divisible by 4");
    static const char digits[] = "0123456789abcdef";
    std::string s(size_ / 4, '0');
    for (std::size_t d = 0; d < s.size(); ++d) {
      unsigned v = 0;
      for (unsigned b = 0; b < 4; ++b)
        v = (v << 1) | unsigned(get(4 * d + b));
      s[d] = digits[v];
    }
    return s;
  }

  static PackedBits from_binary_string(std::string_view s) {
    PackedBits out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1')
        out.set(i, true);
      else if (s[i] != '0')
        throw std::invalid_argument("binary string may contain only 0/1");
    }
    return out;
  }

  static PackedBits from_hex_string(std::string_view s) {
    PackedBits out(s.size() * 4);
    for (std::size_t d = 0; d < s.size(); ++d) {
      const char c = s[d];
      unsigned v;
      if (c >= '0' && c <= '9')
        v = unsigned(c - '0');
      else if (c >= 'a' && c <= 'f')
        v = unsigned(c - 'a') + 10;
      else if (c >= 'A' && c <= 'F')
        v = unsigned(c - 'A') + 10;
      else
        throw std::invalid_argument("invalid hex digit in truth table");
      for (unsigned b = 0; b < 4; ++b)
        out.set(4 * d + b, (v >> (3 - b)) & 1u);
    }
    return out;
  }

private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace boolforge
