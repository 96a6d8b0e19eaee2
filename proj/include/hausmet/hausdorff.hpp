#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

#include "hausmet/errors.hpp"
#include "hausmet/viability.hpp"

namespace hausmet {

struct QueryResult {
    double value = 0.0;
    std::uint64_t iterations = 0;
    std::uint64_t distance_calls = 0;
    std::size_t max_degree = 0;
};

struct IterationRecord {
    std::uint64_t iteration = 0;
    Side side = Side::A;
    std::size_t node = 0;
    double radius = 0.0;
    double global_lower = 0.0;
    std::size_t edge_count = 0;
    std::size_t max_degree = 0;
};

// Optional instrumentation; both hooks may be empty. on_iteration fires
// after each split with the graph in its post-iteration state.
struct QueryTrace {
    std::function<void(const ViabilityGraph&, const IterationRecord&)> on_iteration;
    std::function<void(const ViabilityGraph&, const LowerUpdate&, Side split_side,
                       double radius)> on_lower_update;
};

inline void check_eps(double eps) {
    if (std::isnan(eps) || eps <= 0.0)
        throw ParameterError("eps must be a positive real");
}

// The main loop over the merged radius-order traversal. L is a running
// maximum of local lower bounds; stop once the next radius r satisfies
// r <= (eps/2)*L and return L, which then satisfies
// L <= d_h(A,B) <= (1+eps)*L. If the list is exhausted the result is
// exact.
inline QueryResult directed_hausdorff(const GreedyTree& tree_a,
                                      const GreedyTree& tree_b, double eps,
                                      const QueryTrace* trace = nullptr) {
    check_eps(eps);
    DistanceCounter counter;
    ViabilityGraph graph(tree_a, tree_b, &counter);
    const auto merged = merge_traversals(traversal_list(tree_a, Side::A),
                                         traversal_list(tree_b, Side::B));
    double global_lower = graph.lower(graph.tree_a().root());
    QueryResult result;
    for (const TraversalItem& z : merged) {
        if (z.radius <= (eps / 2.0) * global_lower) break;
        for (const LowerUpdate& u : graph.split(z)) {
            global_lower = std::max(global_lower, u.after);
            if (trace && trace->on_lower_update)
                trace->on_lower_update(graph, u, z.tree_tag, z.radius);
        }
        ++result.iterations;
        if (trace && trace->on_iteration)
            trace->on_iteration(graph,
                                IterationRecord{result.iterations, z.tree_tag,
                                                z.node, z.radius, global_lower,
                                                graph.edge_count(),
                                                graph.max_degree()});
    }
    result.value = global_lower;
    result.distance_calls = counter.calls;
    result.max_degree = graph.max_degree();
    return result;
}

// max of the two directed distances; iteration and distance counters are
// summed, max_degree is the larger of the two.
inline QueryResult hausdorff(const GreedyTree& tree_a, const GreedyTree& tree_b,
                             double eps, const QueryTrace* trace = nullptr) {
    const QueryResult ab = directed_hausdorff(tree_a, tree_b, eps, trace);
    const QueryResult ba = directed_hausdorff(tree_b, tree_a, eps, trace);
    QueryResult out;
    out.value = std::max(ab.value, ba.value);
    out.iterations = ab.iterations + ba.iterations;
    out.distance_calls = ab.distance_calls + ba.distance_calls;
    out.max_degree = std::max(ab.max_degree, ba.max_degree);
    return out;
}

}  // namespace hausmet
