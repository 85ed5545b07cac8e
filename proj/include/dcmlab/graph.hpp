#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dcmlab/degseq.hpp"
#include "dcmlab/rng.hpp"

namespace dcmlab {

/// Immutable half-edge matching. Tails and heads are numbered contiguously
/// per vertex in input order; the matching is one flat permutation
/// tail index -> head index.
struct Digraph {
    BiDegreeSequence seq;
    std::vector<std::int64_t> matching;      // size m, bijection on [m]
    std::vector<std::int64_t> tail_offset;   // size n+1
    std::vector<std::int64_t> head_offset;   // size n+1
    std::vector<std::int32_t> tail_owner;    // half-edge -> vertex
    std::vector<std::int32_t> head_owner;
    std::vector<std::int32_t> out_neighbor;  // tail index -> head vertex (derived)

    Index n() const { return seq.n(); }
    std::int64_t m() const { return seq.m; }
};

/// Builds the offset/owner arrays and derived adjacency around a matching.
Digraph assemble_digraph(BiDegreeSequence seq, std::vector<std::int64_t> matching);

/// Uniform half-edge matching (Fisher-Yates over the head array).
Digraph sample_dcm(const BiDegreeSequence& seq, std::uint64_t seed);

bool is_simple(const Digraph& g);

/// Rejection-samples until loop-free and multi-edge-free.
Digraph sample_simple_dcm(const BiDegreeSequence& seq, std::uint64_t seed, int max_tries);

enum class PriorityRule { fixed_index, bfs };

struct SequentialResult {
    Digraph graph;
    std::int64_t collisions = 0;
};

/// Matches heads one at a time (priority rule picks the next head, the tail
/// is uniform among unmatched tails). A step is a collision when the chosen
/// tail's vertex was exposed by an earlier pairing.
SequentialResult sequential_generate(const BiDegreeSequence& seq, PriorityRule rule,
                                     std::uint64_t seed);

enum class Direction { in, out };

struct Neighborhood {
    std::int32_t root = 0;
    Direction direction = Direction::out;
    int depth = 0;
    std::vector<std::int32_t> vertices;                     // discovery order
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;  // (tail, head) half-edges
    std::vector<std::int32_t> boundary;                     // distance exactly h
    std::int64_t tree_excess = 0;                           // 1 + |E| - |V|
};

Neighborhood bfs_neighborhood(const Digraph& g, std::int32_t v, int h, Direction dir,
                              std::int64_t vertex_budget = std::int64_t{1} << 40);

struct TreeExcessReport {
    std::int64_t max_tx = 0;
    std::vector<std::int32_t> violating;  // Tx(B_x^+(h)) > 1
    std::int64_t num_positive = 0;        // Tx >= 1
};

TreeExcessReport tree_excess_event(const Digraph& g, int h);

/// Rooted tree with vertex marks; nodes stored in generation order.
struct MarkedTree {
    struct Node {
        std::int32_t mark;
        std::int64_t parent;  // -1 for root
        int depth;
    };
    std::vector<Node> nodes;
    std::int32_t root_mark = 0;
    int depth = 0;
};

/// Marked Galton-Watson tree sampler for a fixed sequence; precomputes the
/// mark distributions (mu_out for in-trees, mu_in for out-trees).
class TreeSampler {
public:
    explicit TreeSampler(const BiDegreeSequence& seq);
    MarkedTree sample(std::int32_t root, int h, Direction dir, Rng& rng) const;

private:
    const BiDegreeSequence* seq_;
    DiscreteSampler mu_out_;  // weights d^+
    DiscreteSampler mu_in_;   // weights d^-
};

MarkedTree sample_gw_tree(const BiDegreeSequence& seq, std::int32_t root, int h, Direction dir,
                          std::uint64_t seed);

/// Incrementally exposed matching; the environment left by a coupled
/// exploration, reusable to complete the graph.
struct PartialMatching {
    std::vector<std::int64_t> tail_to_head;  // -1 when unmatched
    std::vector<std::int64_t> head_to_tail;
    std::int64_t matched = 0;
};

struct CouplingOutcome {
    Neighborhood neighborhood;
    MarkedTree tree;
    bool success = true;
    std::optional<std::int64_t> tau;  // first used-mark proposal step
    std::int64_t collisions = 0;      // graph-side collision count
    PartialMatching env;
};

/// Grows B_y^-(h) and T_y^-(h) from one random stream; the tree freezes at
/// the first proposal of an already-used mark while the real neighborhood
/// exploration continues.
CouplingOutcome coupled_exploration(const BiDegreeSequence& seq, std::int32_t y, int h,
                                    std::uint64_t seed);

}  // namespace dcmlab
