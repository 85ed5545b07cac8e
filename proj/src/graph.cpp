#include "dcmlab/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <queue>
#include <utility>

namespace dcmlab {

Digraph assemble_digraph(BiDegreeSequence seq, std::vector<std::int64_t> matching) {
    const Index n = seq.n();
    const std::int64_t m = seq.m;
    if (static_cast<std::int64_t>(matching.size()) != m) {
        throw Error("matching length does not equal m");
    }
    Digraph g;
    g.tail_offset.assign(static_cast<std::size_t>(n) + 1, 0);
    g.head_offset.assign(static_cast<std::size_t>(n) + 1, 0);
    for (Index v = 0; v < n; ++v) {
        g.tail_offset[static_cast<std::size_t>(v) + 1] =
            g.tail_offset[static_cast<std::size_t>(v)] + seq.out_deg[v];
        g.head_offset[static_cast<std::size_t>(v) + 1] =
            g.head_offset[static_cast<std::size_t>(v)] + seq.in_deg[v];
    }
    g.tail_owner.resize(static_cast<std::size_t>(m));
    g.head_owner.resize(static_cast<std::size_t>(m));
    for (Index v = 0; v < n; ++v) {
        for (auto t = g.tail_offset[static_cast<std::size_t>(v)];
             t < g.tail_offset[static_cast<std::size_t>(v) + 1]; ++t) {
            g.tail_owner[static_cast<std::size_t>(t)] = static_cast<std::int32_t>(v);
        }
        for (auto h = g.head_offset[static_cast<std::size_t>(v)];
             h < g.head_offset[static_cast<std::size_t>(v) + 1]; ++h) {
            g.head_owner[static_cast<std::size_t>(h)] = static_cast<std::int32_t>(v);
        }
    }
    g.out_neighbor.resize(static_cast<std::size_t>(m));
    for (std::int64_t t = 0; t < m; ++t) {
        g.out_neighbor[static_cast<std::size_t>(t)] =
            g.head_owner[static_cast<std::size_t>(matching[static_cast<std::size_t>(t)])];
    }
    g.matching = std::move(matching);
    g.seq = std::move(seq);
    return g;
}

Digraph sample_dcm(const BiDegreeSequence& seq, std::uint64_t seed) {
    Rng rng(seed);
    const std::int64_t m = seq.m;
    std::vector<std::int64_t> heads(static_cast<std::size_t>(m));
    std::iota(heads.begin(), heads.end(), 0);
    for (std::int64_t i = m - 1; i > 0; --i) {
        const std::int64_t j = uniform_below(rng, i + 1);
        std::swap(heads[static_cast<std::size_t>(i)], heads[static_cast<std::size_t>(j)]);
    }
    return assemble_digraph(seq, std::move(heads));
}

bool is_simple(const Digraph& g) {
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    edges.reserve(g.matching.size());
    for (std::int64_t t = 0; t < g.m(); ++t) {
        const auto u = g.tail_owner[static_cast<std::size_t>(t)];
        const auto v = g.out_neighbor[static_cast<std::size_t>(t)];
        if (u == v) return false;  // loop
        edges.emplace_back(u, v);
    }
    std::sort(edges.begin(), edges.end());
    return std::adjacent_find(edges.begin(), edges.end()) == edges.end();
}

Digraph sample_simple_dcm(const BiDegreeSequence& seq, std::uint64_t seed, int max_tries) {
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        Digraph g = sample_dcm(seq, derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        if (is_simple(g)) return g;
    }
    throw SimpleUnreachable("no simple digraph found in " + std::to_string(max_tries) +
                            " tries");
}

SequentialResult sequential_generate(const BiDegreeSequence& seq, PriorityRule rule,
                                     std::uint64_t seed) {
    Rng rng(seed);
    const Index n = seq.n();
    const std::int64_t m = seq.m;

    std::vector<std::int64_t> head_offset(static_cast<std::size_t>(n) + 1, 0);
    for (Index v = 0; v < n; ++v) {
        head_offset[static_cast<std::size_t>(v) + 1] =
            head_offset[static_cast<std::size_t>(v)] + seq.in_deg[v];
    }
    std::vector<std::int32_t> tail_owner(static_cast<std::size_t>(m));
    {
        std::int64_t t = 0;
        for (Index v = 0; v < n; ++v) {
            for (int k = 0; k < seq.out_deg[v]; ++k) {
                tail_owner[static_cast<std::size_t>(t++)] = static_cast<std::int32_t>(v);
            }
        }
    }

    // Unmatched tails kept in a compact array for uniform draws.
    std::vector<std::int64_t> free_tails(static_cast<std::size_t>(m));
    std::iota(free_tails.begin(), free_tails.end(), 0);
    std::vector<std::int64_t> tail_pos(static_cast<std::size_t>(m));
    std::iota(tail_pos.begin(), tail_pos.end(), 0);
    auto remove_tail = [&](std::int64_t t) {
        const std::int64_t pos = tail_pos[static_cast<std::size_t>(t)];
        const std::int64_t last = free_tails.back();
        free_tails[static_cast<std::size_t>(pos)] = last;
        tail_pos[static_cast<std::size_t>(last)] = pos;
        free_tails.pop_back();
    };

    std::vector<std::int64_t> matching(static_cast<std::size_t>(m), -1);
    std::vector<char> exposed(static_cast<std::size_t>(n), 0);
    std::vector<std::int64_t> next_head(static_cast<std::size_t>(n));
    for (Index v = 0; v < n; ++v) {
        next_head[static_cast<std::size_t>(v)] = head_offset[static_cast<std::size_t>(v)];
    }
    std::int64_t collisions = 0;

    auto pair_head = [&](std::int64_t f) {
        const std::int64_t pick = uniform_below(rng, static_cast<std::int64_t>(free_tails.size()));
        const std::int64_t e = free_tails[static_cast<std::size_t>(pick)];
        remove_tail(e);
        matching[static_cast<std::size_t>(e)] = f;
        return tail_owner[static_cast<std::size_t>(e)];
    };

    if (rule == PriorityRule::fixed_index) {
        for (std::int64_t f = 0; f < m; ++f) {
            const auto hv = static_cast<Index>(std::distance(
                head_offset.begin(),
                std::upper_bound(head_offset.begin(), head_offset.end(), f))) - 1;
            const std::int32_t tv = pair_head(f);
            if (exposed[static_cast<std::size_t>(tv)]) ++collisions;
            exposed[static_cast<std::size_t>(tv)] = 1;
            exposed[static_cast<std::size_t>(hv)] = 1;
        }
    } else {
        // BFS over in-edges: process the unmatched heads of discovered
        // vertices in index order, restarting at the lowest-index vertex with
        // unmatched heads when the queue drains.
        std::deque<std::int32_t> queue;
        Index scan = 0;
        std::vector<char> enqueued(static_cast<std::size_t>(n), 0);
        std::int64_t matched = 0;
        while (matched < m) {
            if (queue.empty()) {
                while (scan < n &&
                       (enqueued[static_cast<std::size_t>(scan)] ||
                        next_head[static_cast<std::size_t>(scan)] ==
                            head_offset[static_cast<std::size_t>(scan) + 1])) {
                    ++scan;
                }
                if (scan >= n) break;
                queue.push_back(static_cast<std::int32_t>(scan));
                enqueued[static_cast<std::size_t>(scan)] = 1;
                exposed[static_cast<std::size_t>(scan)] = 1;  // component root
            }
            const std::int32_t v = queue.front();
            queue.pop_front();
            for (std::int64_t f = next_head[static_cast<std::size_t>(v)];
                 f < head_offset[static_cast<std::size_t>(v) + 1]; ++f) {
                const std::int32_t tv = pair_head(f);
                ++matched;
                if (exposed[static_cast<std::size_t>(tv)]) {
                    ++collisions;
                } else {
                    exposed[static_cast<std::size_t>(tv)] = 1;
                }
                if (!enqueued[static_cast<std::size_t>(tv)]) {
                    enqueued[static_cast<std::size_t>(tv)] = 1;
                    queue.push_back(tv);
                }
            }
            next_head[static_cast<std::size_t>(v)] = head_offset[static_cast<std::size_t>(v) + 1];
        }
    }

    return SequentialResult{assemble_digraph(seq, std::move(matching)), collisions};
}

Neighborhood bfs_neighborhood(const Digraph& g, std::int32_t v, int h, Direction dir,
                              std::int64_t vertex_budget) {
    Neighborhood nb;
    nb.root = v;
    nb.direction = dir;
    nb.depth = h;

    // inverse matching for in-direction walks
    std::vector<std::int64_t> inverse;
    if (dir == Direction::in) {
        inverse.assign(g.matching.size(), -1);
        for (std::int64_t t = 0; t < g.m(); ++t) {
            inverse[static_cast<std::size_t>(g.matching[static_cast<std::size_t>(t)])] = t;
        }
    }

    std::vector<int> dist(static_cast<std::size_t>(g.n()), -1);
    std::deque<std::int32_t> queue;
    dist[static_cast<std::size_t>(v)] = 0;
    queue.push_back(v);
    nb.vertices.push_back(v);
    while (!queue.empty()) {
        const std::int32_t u = queue.front();
        queue.pop_front();
        const int du = dist[static_cast<std::size_t>(u)];
        if (du >= h) continue;
        const auto& offsets = (dir == Direction::out) ? g.tail_offset : g.head_offset;
        for (std::int64_t e = offsets[static_cast<std::size_t>(u)];
             e < offsets[static_cast<std::size_t>(u) + 1]; ++e) {
            std::int64_t tail, head;
            if (dir == Direction::out) {
                tail = e;
                head = g.matching[static_cast<std::size_t>(e)];
            } else {
                head = e;
                tail = inverse[static_cast<std::size_t>(e)];
            }
            nb.edges.emplace_back(tail, head);
            const std::int32_t w = (dir == Direction::out)
                                       ? g.head_owner[static_cast<std::size_t>(head)]
                                       : g.tail_owner[static_cast<std::size_t>(tail)];
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = du + 1;
                nb.vertices.push_back(w);
                if (static_cast<std::int64_t>(nb.vertices.size()) > vertex_budget) {
                    throw BudgetExceeded("neighborhood exceeded vertex budget");
                }
                queue.push_back(w);
            }
        }
    }
    for (std::int32_t u : nb.vertices) {
        if (dist[static_cast<std::size_t>(u)] == h) nb.boundary.push_back(u);
    }
    nb.tree_excess = 1 + static_cast<std::int64_t>(nb.edges.size()) -
                     static_cast<std::int64_t>(nb.vertices.size());
    return nb;
}

TreeExcessReport tree_excess_event(const Digraph& g, int h) {
    TreeExcessReport report;
    const Index n = g.n();
    std::vector<std::int32_t> visit_mark(static_cast<std::size_t>(n), -1);
    std::vector<int> dist(static_cast<std::size_t>(n), 0);
    std::deque<std::int32_t> queue;
    for (Index x = 0; x < n; ++x) {
        std::int64_t nv = 1, ne = 0;
        const auto mark = static_cast<std::int32_t>(x);
        visit_mark[static_cast<std::size_t>(x)] = mark;
        dist[static_cast<std::size_t>(x)] = 0;
        queue.clear();
        queue.push_back(mark);
        while (!queue.empty()) {
            const std::int32_t u = queue.front();
            queue.pop_front();
            const int du = dist[static_cast<std::size_t>(u)];
            if (du >= h) continue;
            for (std::int64_t t = g.tail_offset[static_cast<std::size_t>(u)];
                 t < g.tail_offset[static_cast<std::size_t>(u) + 1]; ++t) {
                ++ne;
                const std::int32_t w = g.out_neighbor[static_cast<std::size_t>(t)];
                if (visit_mark[static_cast<std::size_t>(w)] != mark) {
                    visit_mark[static_cast<std::size_t>(w)] = mark;
                    dist[static_cast<std::size_t>(w)] = du + 1;
                    ++nv;
                    queue.push_back(w);
                }
            }
        }
        const std::int64_t tx = 1 + ne - nv;
        report.max_tx = std::max(report.max_tx, tx);
        if (tx >= 1) ++report.num_positive;
        if (tx > 1) report.violating.push_back(static_cast<std::int32_t>(x));
    }
    return report;
}

TreeSampler::TreeSampler(const BiDegreeSequence& seq) : seq_(&seq) {
    std::vector<double> wout(static_cast<std::size_t>(seq.n()));
    std::vector<double> win(static_cast<std::size_t>(seq.n()));
    for (Index v = 0; v < seq.n(); ++v) {
        wout[static_cast<std::size_t>(v)] = static_cast<double>(seq.out_deg[v]);
        win[static_cast<std::size_t>(v)] = static_cast<double>(seq.in_deg[v]);
    }
    mu_out_ = DiscreteSampler(wout);
    mu_in_ = DiscreteSampler(win);
}

MarkedTree TreeSampler::sample(std::int32_t root, int h, Direction dir, Rng& rng) const {
    // In-trees: a node with mark z has d_z^- children, marks ~ mu_out.
    // Out-trees reverse the roles.
    const auto& child_count = (dir == Direction::in) ? seq_->in_deg : seq_->out_deg;
    const auto& mark_dist = (dir == Direction::in) ? mu_out_ : mu_in_;
    MarkedTree tree;
    tree.root_mark = root;
    tree.depth = h;
    tree.nodes.push_back({root, -1, 0});
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto node = tree.nodes[i];
        if (node.depth >= h) continue;
        const int kids = child_count[node.mark];
        for (int k = 0; k < kids; ++k) {
            const auto mark = static_cast<std::int32_t>(mark_dist(rng));
            tree.nodes.push_back({mark, static_cast<std::int64_t>(i), node.depth + 1});
            if (tree.nodes.size() > (std::size_t{1} << 31)) {
                throw BudgetExceeded("galton-watson tree exceeded node budget");
            }
        }
    }
    return tree;
}

MarkedTree sample_gw_tree(const BiDegreeSequence& seq, std::int32_t root, int h, Direction dir,
                          std::uint64_t seed) {
    TreeSampler sampler(seq);
    Rng rng(seed);
    return sampler.sample(root, h, dir, rng);
}

CouplingOutcome coupled_exploration(const BiDegreeSequence& seq, std::int32_t y, int h,
                                    std::uint64_t seed) {
    Rng rng(seed);
    const Index n = seq.n();
    const std::int64_t m = seq.m;

    std::vector<std::int64_t> head_offset(static_cast<std::size_t>(n) + 1, 0);
    std::vector<std::int64_t> tail_offset(static_cast<std::size_t>(n) + 1, 0);
    for (Index v = 0; v < n; ++v) {
        head_offset[static_cast<std::size_t>(v) + 1] =
            head_offset[static_cast<std::size_t>(v)] + seq.in_deg[v];
        tail_offset[static_cast<std::size_t>(v) + 1] =
            tail_offset[static_cast<std::size_t>(v)] + seq.out_deg[v];
    }
    std::vector<std::int32_t> tail_owner(static_cast<std::size_t>(m));
    for (Index v = 0; v < n; ++v) {
        for (auto t = tail_offset[static_cast<std::size_t>(v)];
             t < tail_offset[static_cast<std::size_t>(v) + 1]; ++t) {
            tail_owner[static_cast<std::size_t>(t)] = static_cast<std::int32_t>(v);
        }
    }

    CouplingOutcome out;
    out.env.tail_to_head.assign(static_cast<std::size_t>(m), -1);
    out.env.head_to_tail.assign(static_cast<std::size_t>(m), -1);
    out.neighborhood.root = y;
    out.neighborhood.direction = Direction::in;
    out.neighborhood.depth = h;
    out.tree.root_mark = y;
    out.tree.depth = h;
    out.tree.nodes.push_back({y, -1, 0});

    std::vector<char> mark_used(static_cast<std::size_t>(n), 0);
    mark_used[static_cast<std::size_t>(y)] = 1;
    std::vector<char> exposed(static_cast<std::size_t>(n), 0);
    exposed[static_cast<std::size_t>(y)] = 1;
    std::vector<int> depth_of(static_cast<std::size_t>(n), -1);
    depth_of[static_cast<std::size_t>(y)] = 0;
    out.neighborhood.vertices.push_back(y);

    // Graph BFS queue of (vertex, depth, tree node index). The tree node
    // mirrors the vertex while the coupling is alive.
    struct Item {
        std::int32_t v;
        int depth;
        std::int64_t tree_node;
    };
    std::deque<Item> queue;
    queue.push_back({y, 0, 0});

    std::int64_t step = 0;
    while (!queue.empty()) {
        const Item it = queue.front();
        queue.pop_front();
        if (it.depth >= h) continue;
        for (std::int64_t f = head_offset[static_cast<std::size_t>(it.v)];
             f < head_offset[static_cast<std::size_t>(it.v) + 1]; ++f) {
            ++step;
            std::int64_t e = -1;
            if (out.success) {
                // One draw among all tails drives both structures.
                const std::int64_t proposal = uniform_below(rng, m);
                const auto mark = tail_owner[static_cast<std::size_t>(proposal)];
                if (out.env.tail_to_head[static_cast<std::size_t>(proposal)] != -1 ||
                    mark_used[static_cast<std::size_t>(mark)]) {
                    out.success = false;
                    out.tau = step;  // tree frozen from here on
                } else {
                    e = proposal;
                    out.tree.nodes.push_back({mark, it.tree_node, it.depth + 1});
                    mark_used[static_cast<std::size_t>(mark)] = 1;
                }
            }
            if (e < 0) {
                // graph side continues with a uniform unmatched tail
                do {
                    e = uniform_below(rng, m);
                } while (out.env.tail_to_head[static_cast<std::size_t>(e)] != -1);
            }
            out.env.tail_to_head[static_cast<std::size_t>(e)] = f;
            out.env.head_to_tail[static_cast<std::size_t>(f)] = e;
            ++out.env.matched;
            out.neighborhood.edges.emplace_back(e, f);
            const std::int32_t w = tail_owner[static_cast<std::size_t>(e)];
            if (!exposed[static_cast<std::size_t>(w)]) {
                exposed[static_cast<std::size_t>(w)] = 1;
                depth_of[static_cast<std::size_t>(w)] = it.depth + 1;
                out.neighborhood.vertices.push_back(w);
                const std::int64_t tree_node =
                    out.success ? static_cast<std::int64_t>(out.tree.nodes.size()) - 1 : -1;
                queue.push_back({w, it.depth + 1, tree_node});
            } else {
                ++out.collisions;
            }
        }
    }
    for (std::int32_t u : out.neighborhood.vertices) {
        if (depth_of[static_cast<std::size_t>(u)] == h) out.neighborhood.boundary.push_back(u);
    }
    out.neighborhood.tree_excess = 1 +
                                   static_cast<std::int64_t>(out.neighborhood.edges.size()) -
                                   static_cast<std::int64_t>(out.neighborhood.vertices.size());
    return out;
}

}  // namespace dcmlab
