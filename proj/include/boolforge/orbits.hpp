#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "boolforge/truth_table.hpp"

namespace boolforge {

/// Default cap on enumerating full orbit tables (2^n member entries).
inline constexpr int kDefaultOrbitCap = 24;

/// One cyclic shift of input coordinates: (x1,...,xn) -> (xn,x1,...,x_{n-1}).
/// On the big-endian index this is a right rotation of the low n bits.
inline std::uint32_t rotate_input(std::uint32_t x, int n) {
  return std::uint32_t((x >> 1) | ((x & 1u) << (n - 1)));
}

inline std::uint64_t euler_phi(std::uint64_t m) {
  std::uint64_t result = m;
  for (std::uint64_t p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  if (m > 1) result -= result / m;
  return result;
}

/// g_n = (1/n) * sum over t | n of phi(t) * 2^(n/t); the number of
/// rotation classes of F_2^n (Burnside).
inline std::int64_t orbit_count(int n) {
  if (n < 1 || n > 62) throw std::invalid_argument("orbit_count: n out of range");
  std::uint64_t total = 0;
  for (int t = 1; t <= n; ++t)
    if (n % t == 0) total += euler_phi(std::uint64_t(t)) << (n / t);
  return std::int64_t(total / std::uint64_t(n));
}

/// Partition of {0,...,2^n - 1} into rotation classes.  Each orbit lists
/// its lexicographically smallest member first, followed by successive
/// cyclic shifts; orbits are sorted by representative.
struct OrbitTable {
  int n = 0;
  std::int64_t count = 0;

  std::uint32_t representative(std::size_t k) const { return reps_[k]; }
  std::span<const std::uint32_t> members(std::size_t k) const {
    return {members_.data() + offsets_[k], offsets_[k + 1] - offsets_[k]};
  }
  /// Orbit index owning input x.
  std::size_t orbit_of(std::uint32_t x) const { return orbit_of_[x]; }

  std::vector<std::uint32_t> reps_;
  std::vector<std::size_t> offsets_;   // count+1 entries into members_
  std::vector<std::uint32_t> members_; // 2^n entries, grouped by orbit
  std::vector<std::uint32_t> orbit_of_;
};

inline OrbitTable enumerate_orbits(int n, int cap = kDefaultOrbitCap) {
  if (n < 1) throw std::invalid_argument("enumerate_orbits: n must be positive");
  if (n > cap) throw std::invalid_argument("enumerate_orbits: n exceeds cap");
  const std::uint32_t size = std::uint32_t{1} << n;
  OrbitTable table;
  table.n = n;
  table.orbit_of_.assign(size, std::uint32_t(-1));
  table.members_.reserve(size);
  table.offsets_.push_back(0);
  for (std::uint32_t x = 0; x < size; ++x) {
    if (table.orbit_of_[x] != std::uint32_t(-1)) continue;
    const auto k = std::uint32_t(table.reps_.size());
    table.reps_.push_back(x);
    std::uint32_t y = x;
    do {
      table.orbit_of_[y] = k;
      table.members_.push_back(y);
      y = rotate_input(y, n);
    } while (y != x);
    table.offsets_.push_back(table.members_.size());
  }
  table.count = std::int64_t(table.reps_.size());
  return table;
}

/// Copies genotype bit k to every member of orbit k, synthesizing the
/// full rotation symmetric table.
inline TruthTable expand_rs(const PackedBits& genotype, const OrbitTable& orbits) {
  if (genotype.size() != std::size_t(orbits.count))
    throw std::invalid_argument("expand_rs: genotype length must equal orbit count");
  TruthTable tt(orbits.n);
  for (std::size_t k = 0; k < std::size_t(orbits.count); ++k)
    if (genotype.get(k))
      for (auto m : orbits.members(k)) tt.set(m, true);
  return tt;
}

/// Reads one bit per orbit representative; left inverse of expand_rs on
/// rotation symmetric tables.
inline PackedBits representative_bits(const TruthTable& tt, const OrbitTable& orbits) {
  PackedBits g(std::size_t(orbits.count));
  for (std::size_t k = 0; k < std::size_t(orbits.count); ++k)
    g.set(k, tt.get(orbits.representative(k)));
  return g;
}

/// One-step invariance under the cyclic shift (which implies invariance
/// under the whole rotation group).
inline bool is_rotation_symmetric(const TruthTable& tt) {
  const auto size = std::uint32_t(tt.size());
  for (std::uint32_t x = 0; x < size; ++x)
    if (tt.get(x) != tt.get(rotate_input(x, tt.n()))) return false;
  return true;
}

}  // namespace boolforge
