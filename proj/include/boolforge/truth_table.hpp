#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "boolforge/bits.hpp"

namespace boolforge {

/// Largest variable count for which full truth tables are materialized.
inline constexpr int kMaxTableVars = 26;

/// Output column of an n-variable Boolean function.  Position i holds
/// f(x) where x is the n-bit big-endian expansion of i (x1 is the most
/// significant bit), i.e. table indices follow the lexicographic order
/// of input vectors.
class TruthTable {
public:
  TruthTable() = default;

  explicit TruthTable(int n) : n_(check_n(n)), bits_(std::size_t{1} << n) {}

  TruthTable(int n, PackedBits bits) : n_(check_n(n)), bits_(std::move(bits)) {
    if (bits_.size() != (std::size_t{1} << n_))
      throw std::invalid_argument("truth table length must be 2^n");
  }

  int n() const { return n_; }
  std::size_t size() const { return bits_.size(); }
  bool get(std::size_t i) const { return bits_.get(i); }
  void set(std::size_t i, bool v) { bits_.set(i, v); }
  const PackedBits& bits() const { return bits_; }
  PackedBits& bits() { return bits_; }

  /// Pointwise complement, f -> 1 xor f.
  TruthTable complement() const {
    TruthTable out(n_);
    for (std::size_t w = 0; w < bits_.words().size(); ++w)
      out.bits_.words()[w] = ~bits_.words()[w];
    out.bits_.mask_tail();
    return out;
  }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

  std::string to_binary_string() const { return bits_.to_binary_string(); }
  std::string to_hex_string() const { return bits_.to_hex_string(); }

private:
  static int check_n(int n) {
    if (n < 1 || n > kMaxTableVars)
      throw std::invalid_argument("variable count out of supported range");
    return n;
  }

  int n_ = 0;
  PackedBits bits_;
};

/// True iff the table has equally many zeros and ones.
inline bool is_balanced(const TruthTable& tt) {
  return tt.bits().count() * 2 == tt.size();
}

inline int table_vars_for_length(std::size_t len) {
  if (len < 2 || (len & (len - 1)) != 0)
    throw std::invalid_argument("truth table length must be a power of two");
  int n = std::countr_zero(len);
  if (n > kMaxTableVars)
    throw std::invalid_argument("truth table too large");
  return n;
}

/// Parses the single-line text form: either 2^n characters of '0'/'1', or
/// hexadecimal with 4 bits per digit.  A string consisting only of 0/1
/// characters is read as binary; pass force_hex to override.
inline TruthTable parse_truth_table(std::string_view line, bool force_hex = false) {
  bool binary = !force_hex;
  if (binary)
    for (char c : line)
      if (c != '0' && c != '1') { binary = false; break; }
  PackedBits bits = binary ? PackedBits::from_binary_string(line)
                           : PackedBits::from_hex_string(line);
  return TruthTable(table_vars_for_length(bits.size()), std::move(bits));
}

}  // namespace boolforge
