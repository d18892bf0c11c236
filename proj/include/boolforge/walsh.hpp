#pragma once

#include <cstdint>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <vector>

#include "boolforge/truth_table.hpp"

namespace boolforge {

/// Signed correlations W_f(a) between f and every linear function a.x,
/// indexed like the truth table inputs.
struct WalshSpectrum {
  int n = 0;
  std::vector<std::int32_t> values;
};

/// In-place butterfly over a +-1 buffer whose length is a power of two;
/// n*2^n additions.
inline void walsh_transform_inplace(std::span<std::int32_t> buf) {
  const std::size_t size = buf.size();
  for (std::size_t len = 1; len < size; len <<= 1)
    for (std::size_t block = 0; block < size; block += len << 1)
      for (std::size_t j = block; j < block + len; ++j) {
        const std::int32_t a = buf[j];
        const std::int32_t b = buf[j + len];
        buf[j] = a + b;
        buf[j + len] = a - b;
      }
}

/// Expands the packed table into +-1 signs: buf[i] = 1 - 2*f(i).
inline void fill_signs(const PackedBits& bits, std::span<std::int32_t> buf) {
  const auto words = bits.words();
  const std::size_t size = bits.size();
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t word = words[w];
    const std::size_t base = w << 6;
    const std::size_t top = std::min<std::size_t>(64, size - base);
    for (std::size_t t = 0; t < top; ++t) {
      buf[base + t] = 1 - 2 * std::int32_t(word & 1);
      word >>= 1;
    }
  }
}

inline WalshSpectrum walsh_transform(const TruthTable& tt) {
  WalshSpectrum spec;
  spec.n = tt.n();
  spec.values.resize(tt.size());
  fill_signs(tt.bits(), spec.values);
  walsh_transform_inplace(spec.values);
  return spec;
}

inline std::int32_t max_abs_value(const WalshSpectrum& spec) {
  std::int32_t best = 0;
  for (auto v : spec.values) best = std::max(best, std::abs(v));
  return best;
}

/// nl_f = 2^(n-1) - max_a |W_f(a)| / 2.
inline std::int64_t nonlinearity(const WalshSpectrum& spec) {
  return (std::int64_t{1} << (spec.n - 1)) - max_abs_value(spec) / 2;
}

inline std::int64_t nonlinearity(const TruthTable& tt) {
  return nonlinearity(walsh_transform(tt));
}

}  // namespace boolforge
