#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "hausmet/errors.hpp"
#include "hausmet/greedy_tree.hpp"

namespace hausmet {

struct Edge {
    std::size_t b_node = 0;
    double center_dist = 0.0;  // cached d_ctr(x, y)
};

// Computed distances carry rounding of a few ulps, so the triangle
// inequality the lower bounds and the pruning rule certify against can be
// off by that much. Both are therefore evaluated one-sided: bounds are
// nudged down and pruning keeps razor-tie edges. The slack is relative to
// the operand magnitudes; zero-radius (leaf) terms stay exact so that
// exhausted queries reproduce the oracle bit-for-bit.
inline constexpr double kCertifiedSlack = 1e-12;

inline double certified_edge_bound(double center_dist, double rad_b) {
    if (rad_b == 0.0) return center_dist;
    return center_dist - rad_b - kCertifiedSlack * (center_dist + rad_b);
}

// Pure helpers so the pruning condition and lower-bound formula are
// testable in isolation.
//
// An edge (x,y) is pruned when some y' certifies
//   d_ctr(x,y) - rad(y) > d_ctr(x,y') + 2*rad(x);
// equivalently d_ctr(x,y) - rad(y) > m + 2*rad(x) with m the minimum
// center distance. The minimizing edge never satisfies its own test, so
// every node keeps at least one neighbor.
template <typename RadiusFn>
inline void prune_edges(std::vector<Edge>& edges, double rad_x,
                        RadiusFn rad_of_b) {
    if (edges.size() <= 1) return;
    double m = edges.front().center_dist;
    for (const Edge& e : edges) m = std::min(m, e.center_dist);
    const double cutoff = m + 2.0 * rad_x;
    std::erase_if(edges, [&](const Edge& e) {
        const double rad_b = rad_of_b(e.b_node);
        return e.center_dist - rad_b >
               cutoff + kCertifiedSlack * (e.center_dist + rad_b + cutoff);
    });
}

template <typename RadiusFn>
inline double lower_bound_value(const std::vector<Edge>& edges,
                                RadiusFn rad_of_b) {
    invariant(!edges.empty(), "local lower bound of a node with no neighbors");
    double m = certified_edge_bound(edges.front().center_dist,
                                    rad_of_b(edges.front().b_node));
    for (const Edge& e : edges)
        m = std::min(m, certified_edge_bound(e.center_dist, rad_of_b(e.b_node)));
    return std::max(m, 0.0);
}

struct LowerUpdate {
    std::size_t a_node = 0;
    double before = 0.0;  // stored l before the split (parent's l for new children)
    double after = 0.0;
};

// Bipartite graph between active nodes of two greedy trees. Confined to a
// single query; the trees are shared read-only.
class ViabilityGraph {
public:
    ViabilityGraph(const GreedyTree& tree_a, const GreedyTree& tree_b,
                   DistanceCounter* counter = nullptr)
        : a_(tree_a), b_(tree_b), counter_(counter) {
        if (a_.points().metric() != b_.points().metric())
            throw IncompatibleError("trees use different metrics");
        if (a_.points().dim() != b_.points().dim())
            throw IncompatibleError("trees have different dimensions");
        adj_a_.resize(a_.nodes().size());
        adj_b_.resize(b_.nodes().size());
        lower_.assign(a_.nodes().size(), 0.0);
        active_a_.assign(a_.nodes().size(), false);
        active_b_.assign(b_.nodes().size(), false);
        const double d = distance(a_.points().metric(), a_.center_point(0),
                                  b_.center_point(0), counter_);
        adj_a_[0].push_back(Edge{0, d});
        adj_b_[0].push_back(0);
        active_a_[0] = true;
        active_b_[0] = true;
        active_a_count_ = active_b_count_ = 1;
        edge_count_ = 1;
        lower_[0] = std::max(certified_edge_bound(d, b_.node(0).radius), 0.0);
        max_degree_ = 1;
    }

    const GreedyTree& tree_a() const { return a_; }
    const GreedyTree& tree_b() const { return b_; }

    bool active(Side s, std::size_t id) const {
        return s == Side::A ? active_a_[id] : active_b_[id];
    }
    double lower(std::size_t a_node) const { return lower_[a_node]; }
    const std::vector<Edge>& neighbors(std::size_t a_node) const {
        return adj_a_[a_node];
    }
    std::size_t edge_count() const { return edge_count_; }
    std::size_t max_degree() const { return max_degree_; }
    std::size_t active_count(Side s) const {
        return s == Side::A ? active_a_count_ : active_b_count_;
    }

    template <typename Fn>
    void for_each_active(Side s, Fn fn) const {
        const auto& flags = (s == Side::A) ? active_a_ : active_b_;
        for (std::size_t id = 0; id < flags.size(); ++id)
            if (flags[id]) fn(id);
    }

    bool has_edge(std::size_t a_node, std::size_t b_node) const {
        for (const Edge& e : adj_a_[a_node])
            if (e.b_node == b_node) return true;
        return false;
    }

    // Replace z by its children, inherit edges, prune and refresh the
    // local lower bounds of the affected A-nodes (S = {z_l, z_r} for an
    // A-split, S = N(z_l) for a B-split). Returns the updates performed.
    std::vector<LowerUpdate> split(const TraversalItem& z) {
        invariant(active(z.tree_tag, z.node), "split of an inactive node");
        std::vector<LowerUpdate> updates;
        if (z.tree_tag == Side::A) {
            const TreeNode& t = a_.node(z.node);
            const std::size_t zl = t.left, zr = t.right;
            const Point czr = a_.center_point(zr);
            adj_a_[zl] = adj_a_[z.node];
            adj_a_[zr].reserve(adj_a_[z.node].size());
            for (const Edge& e : adj_a_[z.node]) {
                adj_a_[zr].push_back(Edge{
                    e.b_node, distance(a_.points().metric(), czr,
                                       b_.center_point(e.b_node), counter_)});
                auto& rev = adj_b_[e.b_node];
                *std::find(rev.begin(), rev.end(), z.node) = zl;
                rev.push_back(zr);
                note_degree(rev.size());
            }
            edge_count_ += adj_a_[z.node].size();
            adj_a_[z.node].clear();
            adj_a_[z.node].shrink_to_fit();
            const double before = lower_[z.node];
            active_a_[z.node] = false;
            active_a_[zl] = active_a_[zr] = true;
            ++active_a_count_;
            for (std::size_t x : {zl, zr}) {
                prune_node(x);
                lower_[x] = recompute_lower(x);
                updates.push_back(LowerUpdate{x, before, lower_[x]});
            }
        } else {
            const TreeNode& t = b_.node(z.node);
            const std::size_t zl = t.left, zr = t.right;
            const Point czr = b_.center_point(zr);
            std::vector<std::size_t> affected = adj_b_[z.node];
            adj_b_[zl] = affected;
            adj_b_[zr] = affected;
            note_degree(affected.size());
            for (std::size_t x : affected) {
                auto& edges = adj_a_[x];
                auto it = std::find_if(edges.begin(), edges.end(), [&](const Edge& e) {
                    return e.b_node == z.node;
                });
                const double dl = it->center_dist;
                *it = Edge{zl, dl};
                edges.push_back(Edge{
                    zr, distance(a_.points().metric(), a_.center_point(x), czr,
                                 counter_)});
                note_degree(edges.size());
            }
            edge_count_ += affected.size();
            adj_b_[z.node].clear();
            adj_b_[z.node].shrink_to_fit();
            active_b_[z.node] = false;
            active_b_[zl] = active_b_[zr] = true;
            ++active_b_count_;
            for (std::size_t x : affected) {
                const double before = lower_[x];
                prune_node(x);
                lower_[x] = recompute_lower(x);
                updates.push_back(LowerUpdate{x, before, lower_[x]});
            }
        }
        return updates;
    }

    // Finish an A-node: drop it and all its edges (k-partial queries).
    void remove_a_node(std::size_t x) {
        invariant(active_a_[x], "remove of an inactive A-node");
        for (const Edge& e : adj_a_[x]) {
            auto& rev = adj_b_[e.b_node];
            rev.erase(std::find(rev.begin(), rev.end(), x));
        }
        edge_count_ -= adj_a_[x].size();
        adj_a_[x].clear();
        adj_a_[x].shrink_to_fit();
        active_a_[x] = false;
        --active_a_count_;
    }

    double recompute_lower(std::size_t x) const {
        return lower_bound_value(adj_a_[x],
                                 [&](std::size_t y) { return b_.node(y).radius; });
    }

private:
    void prune_node(std::size_t x) {
        auto& edges = adj_a_[x];
        const std::size_t before = edges.size();
        note_degree(before);
        if (before > 1) {
            double m = edges.front().center_dist;
            for (const Edge& e : edges) m = std::min(m, e.center_dist);
            const double cutoff = m + 2.0 * a_.node(x).radius;
            std::erase_if(edges, [&](const Edge& e) {
                const double rad_b = b_.node(e.b_node).radius;
                const bool drop =
                    e.center_dist - rad_b >
                    cutoff + kCertifiedSlack * (e.center_dist + rad_b + cutoff);
                if (drop) {
                    auto& rev = adj_b_[e.b_node];
                    rev.erase(std::find(rev.begin(), rev.end(), x));
                }
                return drop;
            });
        }
        invariant(!edges.empty(), "pruning removed the last edge of a node");
        edge_count_ -= before - edges.size();
    }

    void note_degree(std::size_t deg) { max_degree_ = std::max(max_degree_, deg); }

    const GreedyTree& a_;
    const GreedyTree& b_;
    DistanceCounter* counter_;
    std::vector<std::vector<Edge>> adj_a_;
    std::vector<std::vector<std::size_t>> adj_b_;
    std::vector<double> lower_;
    std::vector<bool> active_a_, active_b_;
    std::size_t active_a_count_ = 0, active_b_count_ = 0;
    std::size_t edge_count_ = 0;
    std::size_t max_degree_ = 0;
};

}  // namespace hausmet
