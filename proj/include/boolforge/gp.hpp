#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "boolforge/orbits.hpp"
#include "boolforge/truth_table.hpp"

namespace boolforge {

enum class GpOp : std::uint8_t { Or, Xor, And, And2, Xnor, If, Not, Var, Seed };

inline int arity(GpOp op) {
  switch (op) {
    case GpOp::Not: return 1;
    case GpOp::If: return 3;
    case GpOp::Var:
    case GpOp::Seed: return 0;
    default: return 2;
  }
}

/// One tree node; index is the 1-based variable or seed number for leaves.
struct GpNode {
  GpOp op = GpOp::Var;
  std::int16_t index = 0;

  friend bool operator==(const GpNode&, const GpNode&) = default;
};

inline constexpr int kDefaultMaxDepth = 8;
inline constexpr int kDefaultInitDepthMin = 2;
inline constexpr int kDefaultInitDepthMax = 6;

/// Rooted ordered tree stored in preorder; subtrees are contiguous slices.
struct SyntaxTree {
  std::vector<GpNode> nodes;
  int max_depth = kDefaultMaxDepth;

  std::size_t size() const { return nodes.size(); }

  friend bool operator==(const SyntaxTree& a, const SyntaxTree& b) {
    return a.nodes == b.nodes;
  }
};

/// One past the last node of the subtree rooted at pos.
inline std::size_t subtree_end(const std::vector<GpNode>& nodes, std::size_t pos) {
  std::size_t i = pos;
  int pending = 1;
  while (pending > 0) {
    pending += arity(nodes[i].op) - 1;
    ++i;
  }
  return i;
}

/// Depth of each node, root = 1.
inline std::vector<int> node_depths(const std::vector<GpNode>& nodes) {
  std::vector<int> out(nodes.size());
  std::vector<std::pair<int, int>> open;  // {children pending, depth}
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const int d = open.empty() ? 1 : open.back().second + 1;
    out[i] = d;
    if (!open.empty()) --open.back().first;
    if (const int ar = arity(nodes[i].op); ar > 0)
      open.emplace_back(ar, d);
    else
      while (!open.empty() && open.back().first == 0) open.pop_back();
  }
  return out;
}

inline int tree_depth(const std::vector<GpNode>& nodes) {
  int best = 0;
  for (int d : node_depths(nodes)) best = std::max(best, d);
  return best;
}

inline int tree_depth(const SyntaxTree& tree) { return tree_depth(tree.nodes); }

/// Checks arity bookkeeping, the depth cap, and leaf legality for the
/// tree's mode (direct trees over nvars inputs, construction trees over
/// seeds f1..f4 plus x_{nvars+1}, x_{nvars+2}).
inline bool tree_is_valid(const SyntaxTree& tree, int nvars, bool construction) {
  if (tree.nodes.empty()) return false;
  long long pending = 1;
  for (const auto& nd : tree.nodes) {
    if (pending <= 0) return false;
    pending += arity(nd.op) - 1;
    if (nd.op == GpOp::Var) {
      if (construction) {
        if (nd.index != nvars + 1 && nd.index != nvars + 2) return false;
      } else if (nd.index < 1 || nd.index > nvars) {
        return false;
      }
    } else if (nd.op == GpOp::Seed) {
      if (!construction || nd.index < 1 || nd.index > 4) return false;
    }
  }
  if (pending != 0) return false;
  return tree_depth(tree) <= tree.max_depth;
}

// --- scalar evaluation ------------------------------------------------

namespace detail {

inline int eval_node(const std::vector<GpNode>& nodes, std::size_t& pos,
                     std::span<const std::uint8_t> assignment) {
  const GpNode nd = nodes[pos++];
  switch (nd.op) {
    case GpOp::Var:
      if (nd.index < 1 || std::size_t(nd.index) > assignment.size())
        throw std::invalid_argument("eval_tree: unbound variable terminal");
      return assignment[std::size_t(nd.index) - 1];
    case GpOp::Seed:
      throw std::invalid_argument("eval_tree: seed leaf outside construction context");
    case GpOp::Not:
      return eval_node(nodes, pos, assignment) ^ 1;
    case GpOp::If: {
      const int c = eval_node(nodes, pos, assignment);
      const int t = eval_node(nodes, pos, assignment);
      const int e = eval_node(nodes, pos, assignment);
      return c ? t : e;
    }
    default: {
      const int a = eval_node(nodes, pos, assignment);
      const int b = eval_node(nodes, pos, assignment);
      switch (nd.op) {
        case GpOp::Or: return a | b;
        case GpOp::Xor: return a ^ b;
        case GpOp::And: return a & b;
        case GpOp::And2: return a & (b ^ 1);
        default: return (a ^ b) ^ 1;  // Xnor
      }
    }
  }
}

}  // namespace detail

/// Bottom-up Boolean evaluation; assignment[i] is the value of x_{i+1}.
inline int eval_tree(const SyntaxTree& tree, std::span<const std::uint8_t> assignment) {
  std::size_t pos = 0;
  return detail::eval_node(tree.nodes, pos, assignment);
}

// --- bitsliced evaluation over all assignments ------------------------

namespace detail {

/// Word patterns for bit b of the within-word offset (b < 6).
inline constexpr std::array<std::uint64_t, 6> kOffsetBit = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};

/// Word w of the mask whose bit j equals bit b of the table index j.
inline std::uint64_t index_bit_word(int b, std::size_t w) {
  if (b < 6) return kOffsetBit[std::size_t(b)];
  return ((w >> (b - 6)) & 1u) ? ~std::uint64_t{0} : 0;
}

template <typename LeafFn>
class TreeWordEval {
public:
  TreeWordEval(const std::vector<GpNode>& nodes, std::size_t nwords,
               std::vector<std::uint64_t>& arena, const LeafFn& leaf)
      : nodes_(nodes), w_(nwords), arena_(arena), leaf_(leaf) {}

  void run(std::uint64_t* dst) {
    const std::size_t levels = std::size_t(tree_depth(nodes_)) + 1;
    arena_.resize(levels * 2 * w_);
    std::size_t pos = 0;
    eval(pos, 0, dst);
  }

private:
  std::uint64_t* slot(std::size_t level, std::size_t k) {
    return arena_.data() + (level * 2 + k) * w_;
  }

  void eval(std::size_t& pos, std::size_t level, std::uint64_t* dst) {
    const GpNode nd = nodes_[pos++];
    switch (nd.op) {
      case GpOp::Var:
      case GpOp::Seed:
        for (std::size_t w = 0; w < w_; ++w) dst[w] = leaf_(nd, w);
        return;
      case GpOp::Not:
        eval(pos, level + 1, dst);
        for (std::size_t w = 0; w < w_; ++w) dst[w] = ~dst[w];
        return;
      case GpOp::If: {
        std::uint64_t* c = slot(level, 0);
        std::uint64_t* t = slot(level, 1);
        eval(pos, level + 1, c);
        eval(pos, level + 1, t);
        eval(pos, level + 1, dst);
        for (std::size_t w = 0; w < w_; ++w)
          dst[w] = (c[w] & t[w]) | (~c[w] & dst[w]);
        return;
      }
      default: {
        std::uint64_t* a = slot(level, 0);
        eval(pos, level + 1, a);
        eval(pos, level + 1, dst);
        switch (nd.op) {
          case GpOp::Or:
            for (std::size_t w = 0; w < w_; ++w) dst[w] |= a[w];
            return;
          case GpOp::Xor:
            for (std::size_t w = 0; w < w_; ++w) dst[w] ^= a[w];
            return;
          case GpOp::And:
            for (std::size_t w = 0; w < w_; ++w) dst[w] &= a[w];
            return;
          case GpOp::And2:
            for (std::size_t w = 0; w < w_; ++w) dst[w] = a[w] & ~dst[w];
            return;
          default:  // Xnor
            for (std::size_t w = 0; w < w_; ++w) dst[w] = ~(a[w] ^ dst[w]);
            return;
        }
      }
    }
  }

  const std::vector<GpNode>& nodes_;
  std::size_t w_;
  std::vector<std::uint64_t>& arena_;
  const LeafFn& leaf_;
};

inline int max_var_index(const std::vector<GpNode>& nodes) {
  int maxi = 0;
  for (const auto& nd : nodes)
    if (nd.op == GpOp::Var) maxi = std::max(maxi, int(nd.index));
  return maxi;
}

}  // namespace detail

/// Reusable scratch for genotype-to-phenotype tree evaluation.
class TreeEvaluator {
public:
  /// Evaluates tree over all 2^nvars assignments into out; x1 is the
  /// most significant index bit.
  void truth_table_bits(const SyntaxTree& tree, int nvars, PackedBits& out) {
    if (detail::max_var_index(tree.nodes) > nvars)
      throw std::invalid_argument("tree variable index out of range");
    const std::size_t size = std::size_t{1} << nvars;
    out = PackedBits(size);
    const std::size_t nwords = (size + 63) / 64;
    auto leaf = [&](const GpNode& nd, std::size_t w) -> std::uint64_t {
      if (nd.op == GpOp::Seed)
        throw std::invalid_argument("seed leaf outside construction context");
      if (nd.index < 1) throw std::invalid_argument("tree variable index out of range");
      return detail::index_bit_word(nvars - nd.index, w);
    };
    detail::TreeWordEval(tree.nodes, nwords, arena_, leaf).run(out.words().data());
    out.mask_tail();
  }

  TruthTable truth_table(const SyntaxTree& tree, int nvars) {
    PackedBits bits;
    truth_table_bits(tree, nvars, bits);
    return TruthTable(nvars, std::move(bits));
  }

  std::vector<std::uint64_t>& arena() { return arena_; }

private:
  std::vector<std::uint64_t> arena_;
};

inline TruthTable tree_to_truth_table(const SyntaxTree& tree, int nvars) {
  TreeEvaluator ev;
  return ev.truth_table(tree, nvars);
}

/// Number of tree inputs used by the GP/PART decoding: the smallest
/// n~ with 2^n~ >= g_n.
inline int part_tree_vars(std::int64_t gn) {
  int v = 1;
  while ((std::int64_t{1} << v) < gn) ++v;
  return v;
}

/// GP/PART: evaluate a tree of n~ inputs, keep the first g_n output bits
/// as the rotation symmetric genotype, discard the rest, expand.
inline TruthTable tree_to_rs_part(const SyntaxTree& tree, const OrbitTable& orbits,
                                  TreeEvaluator& ev) {
  const int nv = part_tree_vars(orbits.count);
  if (detail::max_var_index(tree.nodes) > nv)
    throw std::invalid_argument("tree_to_rs_part: tree width mismatch");
  PackedBits full;
  ev.truth_table_bits(tree, nv, full);
  PackedBits genotype(std::size_t(orbits.count));
  for (std::size_t k = 0; k < std::size_t(orbits.count); ++k)
    genotype.set(k, full.get(k));
  return expand_rs(genotype, orbits);
}

inline TruthTable tree_to_rs_part(const SyntaxTree& tree, int target_n) {
  TreeEvaluator ev;
  const OrbitTable orbits = enumerate_orbits(target_n);
  return tree_to_rs_part(tree, orbits, ev);
}

/// GP/FULL: evaluate the tree only at each orbit representative and copy
/// that bit to all members of the class.
inline TruthTable tree_to_rs_full(const SyntaxTree& tree, const OrbitTable& orbits,
                                  TreeEvaluator& ev) {
  PackedBits full;
  ev.truth_table_bits(tree, orbits.n, full);
  PackedBits genotype(std::size_t(orbits.count));
  for (std::size_t k = 0; k < std::size_t(orbits.count); ++k)
    genotype.set(k, full.get(orbits.representative(k)));
  return expand_rs(genotype, orbits);
}

inline TruthTable tree_to_rs_full(const SyntaxTree& tree, int target_n) {
  TreeEvaluator ev;
  const OrbitTable orbits = enumerate_orbits(target_n);
  return tree_to_rs_full(tree, orbits, ev);
}

// --- secondary constructions ------------------------------------------

/// Four seed functions of n variables feeding a construction tree whose
/// output has n+2 variables.  Seed leaf f_k reads coordinates x1..xn (the
/// top n index bits); the added variables x_{n+1} and x_{n+2} read index
/// bits 0 and 1 respectively.
class ConstructionContext {
public:
  ConstructionContext(int n, std::array<TruthTable, 4> seeds)
      : n_(n), seeds_(std::move(seeds)) {
    for (const auto& s : seeds_)
      if (s.n() != n_)
        throw std::invalid_argument("construction seeds must share one variable count");
    const std::size_t out_words = ((std::size_t{1} << (n_ + 2)) + 63) / 64;
    for (int k = 0; k < 4; ++k) {
      seed_masks_[std::size_t(k)].resize(out_words);
      for (std::size_t w = 0; w < out_words; ++w) {
        std::uint64_t word = 0;
        for (std::size_t t = 0; t < 64; ++t) {
          const std::size_t j = (w << 6) | t;
          if (j >= (std::size_t{1} << (n_ + 2))) break;
          if (seeds_[std::size_t(k)].get(j >> 2)) word |= std::uint64_t{1} << t;
        }
        seed_masks_[std::size_t(k)][w] = word;
      }
    }
  }

  int n() const { return n_; }
  const std::array<TruthTable, 4>& seeds() const { return seeds_; }
  std::span<const std::uint64_t> seed_mask(int k) const { return seed_masks_[std::size_t(k)]; }

private:
  int n_;
  std::array<TruthTable, 4> seeds_;
  std::array<std::vector<std::uint64_t>, 4> seed_masks_;
};

inline TruthTable apply_construction(const SyntaxTree& tree, const ConstructionContext& ctx,
                                     TreeEvaluator& ev) {
  const int out_n = ctx.n() + 2;
  const std::size_t size = std::size_t{1} << out_n;
  const std::size_t nwords = (size + 63) / 64;
  auto leaf = [&](const GpNode& nd, std::size_t w) -> std::uint64_t {
    if (nd.op == GpOp::Seed) {
      if (nd.index < 1 || nd.index > 4)
        throw std::invalid_argument("construction tree references a missing seed");
      return ctx.seed_mask(nd.index - 1)[w];
    }
    if (nd.index == ctx.n() + 1) return detail::index_bit_word(0, w);
    if (nd.index == ctx.n() + 2) return detail::index_bit_word(1, w);
    throw std::invalid_argument("construction tree may only use x_{n+1} and x_{n+2}");
  };
  PackedBits bits(size);
  detail::TreeWordEval(tree.nodes, nwords, ev.arena(), leaf).run(bits.words().data());
  bits.mask_tail();
  return TruthTable(out_n, std::move(bits));
}

inline TruthTable apply_construction(const SyntaxTree& tree, const ConstructionContext& ctx) {
  TreeEvaluator ev;
  return apply_construction(tree, ctx, ev);
}

// --- random trees and variation operators ------------------------------

/// Terminal/function universe for one GP setup.
struct GpSpace {
  int nvars = 0;            // direct: usable inputs; construction: seed width n
  bool construction = false;
  int max_depth = kDefaultMaxDepth;
  int init_depth_min = kDefaultInitDepthMin;
  int init_depth_max = kDefaultInitDepthMax;

  int terminal_kinds() const { return construction ? 6 : nvars; }

  template <typename Rng>
  GpNode random_terminal(Rng& rng) const {
    std::uniform_int_distribution<int> pick(0, terminal_kinds() - 1);
    const int t = pick(rng);
    if (!construction) return {GpOp::Var, std::int16_t(t + 1)};
    if (t < 4) return {GpOp::Seed, std::int16_t(t + 1)};
    return {GpOp::Var, std::int16_t(nvars + (t - 4) + 1)};
  }

  template <typename Rng>
  GpOp random_function(Rng& rng) const {
    static constexpr std::array<GpOp, 7> kFunctions = {
        GpOp::Or,  GpOp::Xor, GpOp::And, GpOp::And2,
        GpOp::Xnor, GpOp::If, GpOp::Not};
    std::uniform_int_distribution<int> pick(0, int(kFunctions.size()) - 1);
    return kFunctions[std::size_t(pick(rng))];
  }
};

namespace detail {

template <typename Rng>
void grow_tree(const GpSpace& space, int depth_budget, bool full, Rng& rng,
               std::vector<GpNode>& out) {
  const bool make_terminal = [&] {
    if (depth_budget <= 1) return true;
    if (full) return false;
    // terminal with probability |T| / (|T| + |F|)
    const int kinds = space.terminal_kinds();
    std::uniform_int_distribution<int> pick(0, kinds + 7 - 1);
    return pick(rng) < kinds;
  }();
  if (make_terminal) {
    out.push_back(space.random_terminal(rng));
    return;
  }
  const GpOp op = space.random_function(rng);
  out.push_back({op, 0});
  for (int c = 0; c < arity(op); ++c)
    grow_tree(space, depth_budget - 1, full, rng, out);
}

}  // namespace detail

/// Fresh tree with the given construction method and depth limit.
template <typename Rng>
SyntaxTree random_tree(const GpSpace& space, int depth, bool full, Rng& rng) {
  SyntaxTree tree;
  tree.max_depth = space.max_depth;
  detail::grow_tree(space, depth, full, rng, tree.nodes);
  return tree;
}

/// Ramped half-and-half over the configured init depth range.
template <typename Rng>
SyntaxTree random_tree(const GpSpace& space, Rng& rng) {
  std::uniform_int_distribution<int> depth_pick(space.init_depth_min, space.init_depth_max);
  std::uniform_int_distribution<int> method_pick(0, 1);
  return random_tree(space, depth_pick(rng), method_pick(rng) == 1, rng);
}

namespace detail {

/// 90/10 internal/leaf selection, the usual GP point bias.
template <typename Rng>
std::size_t choose_point(const std::vector<GpNode>& nodes, Rng& rng) {
  std::vector<std::size_t> internals;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (arity(nodes[i].op) > 0) internals.push_back(i);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (!internals.empty() && coin(rng) < 0.9) {
    std::uniform_int_distribution<std::size_t> pick(0, internals.size() - 1);
    return internals[pick(rng)];
  }
  std::vector<std::size_t> leaves;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (arity(nodes[i].op) == 0) leaves.push_back(i);
  std::uniform_int_distribution<std::size_t> pick(0, leaves.size() - 1);
  return leaves[pick(rng)];
}

inline std::vector<GpNode> splice(const std::vector<GpNode>& host, std::size_t pos,
                                  std::span<const GpNode> graft) {
  const std::size_t end = subtree_end(host, pos);
  std::vector<GpNode> out;
  out.reserve(host.size() - (end - pos) + graft.size());
  out.insert(out.end(), host.begin(), host.begin() + long(pos));
  out.insert(out.end(), graft.begin(), graft.end());
  out.insert(out.end(), host.begin() + long(end), host.end());
  return out;
}

}  // namespace detail

/// Replaces a uniformly chosen node's subtree with a fresh random subtree
/// that keeps the whole tree within its depth cap.
template <typename Rng>
SyntaxTree subtree_mutation(const SyntaxTree& tree, const GpSpace& space, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, tree.nodes.size() - 1);
  const std::size_t pos = pick(rng);
  const int at_depth = node_depths(tree.nodes)[pos];
  const int budget = std::min(space.max_depth - at_depth + 1, space.init_depth_max);
  std::vector<GpNode> fresh;
  detail::grow_tree(space, std::max(1, budget), false, rng, fresh);
  SyntaxTree out;
  out.max_depth = tree.max_depth;
  out.nodes = detail::splice(tree.nodes, pos, fresh);
  return out;
}

enum class CrossoverKind : std::uint8_t {
  Subtree,
  Uniform,
  SizeFair,
  OnePoint,
  ContextPreserving,
};

inline constexpr std::array<CrossoverKind, 5> kAllCrossoverKinds = {
    CrossoverKind::Subtree, CrossoverKind::Uniform, CrossoverKind::SizeFair,
    CrossoverKind::OnePoint, CrossoverKind::ContextPreserving};

namespace detail {

template <typename Rng>
std::vector<GpNode> subtree_crossover(const std::vector<GpNode>& p1,
                                      const std::vector<GpNode>& p2, int cap, Rng& rng) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    const std::size_t pt1 = choose_point(p1, rng);
    const std::size_t pt2 = choose_point(p2, rng);
    auto child = splice(p1, pt1,
                        std::span(p2.data() + pt2, subtree_end(p2, pt2) - pt2));
    if (tree_depth(child) <= cap) return child;
  }
  return p1;  // give up and keep the first parent
}

template <typename Rng>
void uniform_cross_rec(const std::vector<GpNode>& p1, std::size_t& pos1,
                       const std::vector<GpNode>& p2, std::size_t& pos2,
                       std::vector<GpNode>& out, Rng& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  const GpNode n1 = p1[pos1];
  const GpNode n2 = p2[pos2];
  if (arity(n1.op) == arity(n2.op)) {
    out.push_back(coin(rng) ? n1 : n2);
    ++pos1;
    ++pos2;
    for (int c = 0; c < arity(n1.op); ++c)
      uniform_cross_rec(p1, pos1, p2, pos2, out, rng);
    return;
  }
  // shapes diverge: take one whole subtree
  const std::size_t end1 = subtree_end(p1, pos1);
  const std::size_t end2 = subtree_end(p2, pos2);
  if (coin(rng))
    out.insert(out.end(), p1.begin() + long(pos1), p1.begin() + long(end1));
  else
    out.insert(out.end(), p2.begin() + long(pos2), p2.begin() + long(end2));
  pos1 = end1;
  pos2 = end2;
}

template <typename Rng>
std::vector<GpNode> size_fair_crossover(const std::vector<GpNode>& p1,
                                        const std::vector<GpNode>& p2, int cap, Rng& rng) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    const std::size_t pt1 = choose_point(p1, rng);
    const std::size_t len1 = subtree_end(p1, pt1) - pt1;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < p2.size(); ++i)
      if (subtree_end(p2, i) - i <= 2 * len1 + 1) candidates.push_back(i);
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    const std::size_t pt2 = candidates[pick(rng)];
    auto child = splice(p1, pt1,
                        std::span(p2.data() + pt2, subtree_end(p2, pt2) - pt2));
    if (tree_depth(child) <= cap) return child;
  }
  return p1;
}

inline void common_region(const std::vector<GpNode>& p1, std::size_t pos1,
                          const std::vector<GpNode>& p2, std::size_t pos2,
                          std::vector<std::pair<std::size_t, std::size_t>>& out) {
  out.emplace_back(pos1, pos2);
  if (arity(p1[pos1].op) != arity(p2[pos2].op)) return;
  std::size_t c1 = pos1 + 1;
  std::size_t c2 = pos2 + 1;
  for (int c = 0; c < arity(p1[pos1].op); ++c) {
    common_region(p1, c1, p2, c2, out);
    c1 = subtree_end(p1, c1);
    c2 = subtree_end(p2, c2);
  }
}

template <typename Rng>
std::vector<GpNode> one_point_crossover_tree(const std::vector<GpNode>& p1,
                                             const std::vector<GpNode>& p2, Rng& rng) {
  std::vector<std::pair<std::size_t, std::size_t>> region;
  common_region(p1, 0, p2, 0, region);
  std::uniform_int_distribution<std::size_t> pick(0, region.size() - 1);
  const auto [pt1, pt2] = region[pick(rng)];
  return splice(p1, pt1, std::span(p2.data() + pt2, subtree_end(p2, pt2) - pt2));
}

inline void collect_paths(const std::vector<GpNode>& nodes, std::size_t pos,
                          std::string& path,
                          std::unordered_map<std::string, std::size_t>& out) {
  out.emplace(path, pos);
  std::size_t child = pos + 1;
  for (int c = 0; c < arity(nodes[pos].op); ++c) {
    path.push_back(char('0' + c));
    collect_paths(nodes, child, path, out);
    path.pop_back();
    child = subtree_end(nodes, child);
  }
}

template <typename Rng>
std::vector<GpNode> context_preserving_crossover(const std::vector<GpNode>& p1,
                                                 const std::vector<GpNode>& p2, Rng& rng) {
  std::unordered_map<std::string, std::size_t> paths1, paths2;
  std::string scratch;
  collect_paths(p1, 0, scratch, paths1);
  collect_paths(p2, 0, scratch, paths2);
  std::vector<std::pair<std::size_t, std::size_t>> common;
  for (const auto& [path, pos1] : paths1)
    if (auto it = paths2.find(path); it != paths2.end())
      common.emplace_back(pos1, it->second);
  std::sort(common.begin(), common.end());
  std::uniform_int_distribution<std::size_t> pick(0, common.size() - 1);
  const auto [pt1, pt2] = common[pick(rng)];
  return splice(p1, pt1, std::span(p2.data() + pt2, subtree_end(p2, pt2) - pt2));
}

}  // namespace detail

/// One offspring from two parents under the requested crossover kind.
/// Point choices that would breach the depth cap are retried, falling
/// back to a copy of the first parent.
template <typename Rng>
SyntaxTree tree_crossover(const SyntaxTree& p1, const SyntaxTree& p2,
                          CrossoverKind kind, Rng& rng) {
  SyntaxTree child;
  child.max_depth = p1.max_depth;
  switch (kind) {
    case CrossoverKind::Subtree:
      child.nodes = detail::subtree_crossover(p1.nodes, p2.nodes, child.max_depth, rng);
      break;
    case CrossoverKind::Uniform: {
      std::size_t pos1 = 0, pos2 = 0;
      detail::uniform_cross_rec(p1.nodes, pos1, p2.nodes, pos2, child.nodes, rng);
      break;
    }
    case CrossoverKind::SizeFair:
      child.nodes = detail::size_fair_crossover(p1.nodes, p2.nodes, child.max_depth, rng);
      break;
    case CrossoverKind::OnePoint:
      child.nodes = detail::one_point_crossover_tree(p1.nodes, p2.nodes, rng);
      break;
    case CrossoverKind::ContextPreserving:
      child.nodes = detail::context_preserving_crossover(p1.nodes, p2.nodes, rng);
      break;
  }
  return child;
}

/// Crossover kind drawn uniformly at random per invocation.
template <typename Rng>
SyntaxTree tree_crossover(const SyntaxTree& p1, const SyntaxTree& p2, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, kAllCrossoverKinds.size() - 1);
  return tree_crossover(p1, p2, kAllCrossoverKinds[pick(rng)], rng);
}

// --- prefix notation ----------------------------------------------------

inline std::string_view gp_op_name(GpOp op) {
  switch (op) {
    case GpOp::Or: return "OR";
    case GpOp::Xor: return "XOR";
    case GpOp::And: return "AND";
    case GpOp::And2: return "AND2";
    case GpOp::Xnor: return "XNOR";
    case GpOp::If: return "IF";
    case GpOp::Not: return "NOT";
    default: return "";
  }
}

namespace detail {

inline void print_node(const std::vector<GpNode>& nodes, std::size_t& pos, std::string& out) {
  const GpNode nd = nodes[pos++];
  if (nd.op == GpOp::Var) {
    out += 'x';
    out += std::to_string(nd.index);
    return;
  }
  if (nd.op == GpOp::Seed) {
    out += 'f';
    out += std::to_string(nd.index);
    return;
  }
  out += gp_op_name(nd.op);
  out += '(';
  for (int c = 0; c < arity(nd.op); ++c) {
    if (c) out += ',';
    print_node(nodes, pos, out);
  }
  out += ')';
}

struct PrefixParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("tree parse error at offset " + std::to_string(pos) +
                                ": " + what);
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  std::string_view ident() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) != 0))
      ++pos;
    if (pos == start) fail("expected identifier");
    return text.substr(start, pos - start);
  }

  void parse_node(std::vector<GpNode>& out) {
    const std::string_view name = ident();
    if ((name[0] == 'x' || name[0] == 'f') && name.size() > 1) {
      int idx = 0;
      for (char c : name.substr(1)) {
        if (c < '0' || c > '9') fail("bad terminal index");
        idx = idx * 10 + (c - '0');
      }
      out.push_back({name[0] == 'x' ? GpOp::Var : GpOp::Seed, std::int16_t(idx)});
      return;
    }
    GpOp op;
    if (name == "OR") op = GpOp::Or;
    else if (name == "XOR") op = GpOp::Xor;
    else if (name == "AND") op = GpOp::And;
    else if (name == "AND2") op = GpOp::And2;
    else if (name == "XNOR") op = GpOp::Xnor;
    else if (name == "IF") op = GpOp::If;
    else if (name == "NOT") op = GpOp::Not;
    else fail("unknown operator '" + std::string(name) + "'");
    out.push_back({op, 0});
    expect('(');
    for (int c = 0; c < arity(op); ++c) {
      if (c) expect(',');
      parse_node(out);
    }
    expect(')');
  }
};

}  // namespace detail

inline std::string to_prefix_string(const SyntaxTree& tree) {
  std::string out;
  std::size_t pos = 0;
  detail::print_node(tree.nodes, pos, out);
  return out;
}

inline SyntaxTree parse_prefix_tree(std::string_view text,
                                    int max_depth = kDefaultMaxDepth) {
  detail::PrefixParser parser{text};
  SyntaxTree tree;
  parser.parse_node(tree.nodes);
  parser.skip_ws();
  if (parser.pos != text.size()) parser.fail("trailing characters");
  tree.max_depth = std::max(max_depth, tree_depth(tree.nodes));
  return tree;
}

}  // namespace boolforge
