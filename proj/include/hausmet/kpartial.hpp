#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "hausmet/errors.hpp"
#include "hausmet/hausdorff.hpp"
#include "hausmet/viability.hpp"

namespace hausmet {

using BucketIndex = std::int64_t;

// Sentinel threshold below every bucket index: all buckets finishable.
inline constexpr BucketIndex kAllFinishable =
    std::numeric_limits<BucketIndex>::min() / 4;

// The unique m with beta^m < l <= beta^(m+1); nullopt marks the zero
// bucket. Computed from logs, then fixed up against the actual pow values
// so the bracketing holds exactly under floating rounding.
inline std::optional<BucketIndex> bucket_index(double l, double beta) {
    if (l < 0.0) throw InternalError("bucket_index: negative key");
    if (l == 0.0) return std::nullopt;
    BucketIndex m = static_cast<BucketIndex>(
                        std::ceil(std::log(l) / std::log(beta))) - 1;
    for (int guard = 0; !(std::pow(beta, static_cast<double>(m)) < l); ++guard) {
        --m;
        invariant(guard < 64, "bucket_index fix-up did not converge");
    }
    for (int guard = 0;
         !(l <= std::pow(beta, static_cast<double>(m + 1))); ++guard) {
        ++m;
        invariant(guard < 64, "bucket_index fix-up did not converge");
    }
    return m;
}

// s = ceil(log_beta(2*r*beta/(beta-1))), the smallest s with
// beta^s >= 2*r*beta/(beta-1); r = 0 yields the all-finishable sentinel.
inline BucketIndex finish_threshold(double r, double beta) {
    if (r == 0.0) return kAllFinishable;
    const double t = 2.0 * r * beta / (beta - 1.0);
    BucketIndex s =
        static_cast<BucketIndex>(std::ceil(std::log(t) / std::log(beta)));
    for (int guard = 0; std::pow(beta, static_cast<double>(s)) < t; ++guard) {
        ++s;
        invariant(guard < 64, "finish_threshold fix-up did not converge");
    }
    for (int guard = 0;
         std::pow(beta, static_cast<double>(s - 1)) >= t; ++guard) {
        --s;
        invariant(guard < 64, "finish_threshold fix-up did not converge");
    }
    return s;
}

struct PartialResult {
    std::vector<double> deltas;  // delta_0 .. delta_{n-1}, non-increasing
    double eps = 0.0;
    double beta = 0.0;
    std::uint64_t iterations = 0;
    std::uint64_t distance_calls = 0;
    std::size_t max_degree = 0;
    std::size_t buckets_finished = 0;  // distinct nonzero bucket indices
};

namespace detail {

// Monotone max-priority structure over lower bounds with geometric
// buckets (beta^m, beta^(m+1)] plus a dedicated zero bucket.
class BucketQueue {
public:
    explicit BucketQueue(double beta, std::size_t node_count)
        : beta_(beta), where_(node_count, kAbsent) {}

    void place(std::size_t node, double key) {
        invariant(where_[node] == kAbsent, "node already in bucket queue");
        const auto idx = bucket_index(key, beta_);
        if (!idx) {
            zero_.insert(node);
            where_[node] = kZero;
        } else {
            buckets_[*idx].insert(node);
            where_[node] = *idx;
        }
    }

    void remove(std::size_t node) {
        const BucketIndex w = where_[node];
        invariant(w != kAbsent, "node not in bucket queue");
        if (w == kZero) {
            zero_.erase(node);
        } else {
            auto it = buckets_.find(w);
            it->second.erase(node);
            if (it->second.empty()) buckets_.erase(it);
        }
        where_[node] = kAbsent;
    }

    bool empty() const { return buckets_.empty(); }
    BucketIndex top_index() const { return buckets_.rbegin()->first; }

    // Consumes the highest bucket; nodes come out in ascending id order.
    std::vector<std::size_t> pop_top_bucket() {
        auto it = std::prev(buckets_.end());
        std::vector<std::size_t> nodes(it->second.begin(), it->second.end());
        for (std::size_t x : nodes) where_[x] = kAbsent;
        buckets_.erase(it);
        return nodes;
    }

    std::vector<std::size_t> take_zero_bucket() {
        std::vector<std::size_t> nodes(zero_.begin(), zero_.end());
        for (std::size_t x : nodes) where_[x] = kAbsent;
        zero_.clear();
        return nodes;
    }

private:
    static constexpr BucketIndex kAbsent = std::numeric_limits<BucketIndex>::min();
    static constexpr BucketIndex kZero = std::numeric_limits<BucketIndex>::min() + 1;

    double beta_;
    std::map<BucketIndex, std::set<std::size_t>> buckets_;
    std::set<std::size_t> zero_;
    std::vector<BucketIndex> where_;
};

}  // namespace detail

// One-pass (1+eps)-approximation of all k-partial directed Hausdorff
// distances. Same loop as directed_hausdorff, but A-side nodes live in a
// bucket queue keyed by their local lower bounds; whenever the next radius
// r gives threshold s, every occupied bucket j > s is finished by emitting
// beta^(j-1) once per leaf and deleting the node.
//
// beta = 1 + min(eps,4)/4 and the emitted value is the finished bucket's
// lower endpoint divided by beta. Together these absorb the radius of a
// finished node: each emitted delta satisfies
// delta <= d(a,B) <= (1+eps)*delta for every leaf a it stands for, which
// is what the per-k sandwich needs (emitting beta^j with beta = 1+eps/2
// overshoots d(a,B) for leaves on the near side of a finished ball).
inline PartialResult k_hausdorff_all(const GreedyTree& tree_a,
                                     const GreedyTree& tree_b, double eps,
                                     const QueryTrace* trace = nullptr) {
    check_eps(eps);
    const double beta = 1.0 + std::min(eps, 4.0) / 4.0;
    DistanceCounter counter;
    ViabilityGraph graph(tree_a, tree_b, &counter);
    const auto merged = merge_traversals(traversal_list(tree_a, Side::A),
                                         traversal_list(tree_b, Side::B));

    PartialResult result;
    result.eps = eps;
    result.beta = beta;
    result.deltas.reserve(tree_a.size());

    detail::BucketQueue queue(beta, tree_a.nodes().size());
    queue.place(tree_a.root(), graph.lower(tree_a.root()));

    std::set<BucketIndex> finished_indices;
    const auto emit = [&](std::size_t node, double delta) {
        const std::size_t count = tree_a.node(node).leaf_count;
        result.deltas.insert(result.deltas.end(), count, delta);
        graph.remove_a_node(node);
    };
    const auto sweep = [&](BucketIndex s) {
        while (!queue.empty() && queue.top_index() > s) {
            const BucketIndex j = queue.top_index();
            invariant(finished_indices.insert(j).second,
                      "finishing sweep revisited a bucket");
            const double delta = std::pow(beta, static_cast<double>(j - 1));
            for (std::size_t x : queue.pop_top_bucket()) emit(x, delta);
        }
    };

    for (const TraversalItem& z : merged) {
        const BucketIndex s = finish_threshold(z.radius, beta);
        sweep(s);
        if (z.tree_tag == Side::A && !graph.active(Side::A, z.node))
            continue;  // an ancestor was finished
        if (z.tree_tag == Side::A) queue.remove(z.node);
        const double guard = std::pow(beta, static_cast<double>(s + 1));
        for (const LowerUpdate& u : graph.split(z)) {
            if (z.tree_tag == Side::B) queue.remove(u.a_node);
            if (trace && trace->on_lower_update)
                trace->on_lower_update(graph, u, z.tree_tag, z.radius);
            if (u.after > guard) {
                // would land above the sweep line; finish it now
                emit(u.a_node, std::pow(beta, static_cast<double>(s)));
            } else {
                const auto idx = bucket_index(u.after, beta);
                invariant(!idx || *idx <= s,
                          "re-bucketed node landed above the sweep line");
                queue.place(u.a_node, u.after);
            }
        }
        ++result.iterations;
        if (trace && trace->on_iteration)
            trace->on_iteration(graph,
                                IterationRecord{result.iterations, z.tree_tag,
                                                z.node, z.radius, 0.0,
                                                graph.edge_count(),
                                                graph.max_degree()});
    }

    sweep(kAllFinishable);
    for (std::size_t x : queue.take_zero_bucket()) emit(x, 0.0);

    invariant(result.deltas.size() == tree_a.size(),
              "partial output size differs from |A|");
    for (std::size_t k = 0; k + 1 < result.deltas.size(); ++k)
        invariant(result.deltas[k] >= result.deltas[k + 1],
                  "partial output not non-increasing");
    result.distance_calls = counter.calls;
    result.max_degree = graph.max_degree();
    result.buckets_finished = finished_indices.size();
    return result;
}

}  // namespace hausmet
