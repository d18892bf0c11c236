#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "boolforge/orbits.hpp"
#include "boolforge/truth_table.hpp"

namespace boolforge {

/// Plain bitstring genotype: the output column itself, length 2^n.
struct BitstringGenotype {
  int target_n = 0;
  PackedBits bits;

  BitstringGenotype() = default;
  BitstringGenotype(int n, PackedBits b) : target_n(n), bits(std::move(b)) {
    if (bits.size() != (std::size_t{1} << target_n))
      throw std::invalid_argument("bitstring genotype length must be 2^n");
  }
};

/// Rotation symmetric genotype: one bit per orbit, length g_n.
struct RsBitstringGenotype {
  int target_n = 0;
  PackedBits bits;

  RsBitstringGenotype() = default;
  RsBitstringGenotype(int n, PackedBits b) : target_n(n), bits(std::move(b)) {
    if (std::int64_t(bits.size()) != orbit_count(target_n))
      throw std::invalid_argument("rs genotype length must equal g_n");
  }
};

/// Vector of reals in [0,1]; each coordinate encodes dec bits, so
/// dim * dec = gsize.
struct FloatVectorGenotype {
  std::vector<double> values;
  int dec = 0;

  FloatVectorGenotype() = default;
  FloatVectorGenotype(std::vector<double> v, int dec_bits, std::size_t gsize)
      : values(std::move(v)), dec(dec_bits) {
    if (dec < 1) throw std::invalid_argument("dec must be >= 1");
    if (values.size() * std::size_t(dec) != gsize)
      throw std::invalid_argument("dim * dec must equal the genotype bit length");
    for (double d : values)
      if (!(d >= 0.0 && d <= 1.0))
        throw std::invalid_argument("float genotype values must lie in [0,1]");
  }

  std::size_t dim() const { return values.size(); }
  std::size_t gsize() const { return values.size() * std::size_t(dec); }
};

inline TruthTable decode_bitstring(const BitstringGenotype& g) {
  return TruthTable(g.target_n, g.bits);
}

inline TruthTable decode_rs(const RsBitstringGenotype& g, const OrbitTable& orbits) {
  if (orbits.n != g.target_n)
    throw std::invalid_argument("decode_rs: orbit table is for a different n");
  return expand_rs(g.bits, orbits);
}

/// floor(d / 2^-dec), clamped to 2^dec - 1 so d = 1.0 maps to the top
/// integer instead of overflowing the range.
inline std::uint64_t float_coord_to_int(double d, int dec) {
  if (!(d >= 0.0 && d <= 1.0))
    throw std::invalid_argument("float_coord_to_int: value outside [0,1]");
  if (dec < 1) throw std::invalid_argument("float_coord_to_int: dec must be >= 1");
  const auto top = (std::uint64_t{1} << dec) - 1;
  const auto v = std::uint64_t(std::floor(std::ldexp(d, dec)));
  return v > top ? top : v;
}

/// Writes each coordinate's integer as dec big-endian bits, concatenated
/// in coordinate order.
inline PackedBits decode_float_bits(const FloatVectorGenotype& g) {
  PackedBits out(g.gsize());
  std::size_t pos = 0;
  for (double d : g.values) {
    const std::uint64_t v = float_coord_to_int(d, g.dec);
    for (int b = g.dec - 1; b >= 0; --b) out.set(pos++, (v >> b) & 1u);
  }
  return out;
}

inline TruthTable decode_float(const FloatVectorGenotype& g) {
  return TruthTable(table_vars_for_length(g.gsize()), decode_float_bits(g));
}

/// Round-trip exact text form for run logs: comma-separated decimals
/// with 17 significant digits.
inline std::string serialize_float_vector(const std::vector<double>& values) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << values[i];
  }
  return os.str();
}

inline std::vector<double> parse_float_vector(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string item(text.substr(start, end - start));
    if (!item.empty()) {
      try {
        out.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw std::invalid_argument("invalid float vector element: " + item);
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

}  // namespace boolforge
