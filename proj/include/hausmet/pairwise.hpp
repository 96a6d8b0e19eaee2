#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hausmet/errors.hpp"
#include "hausmet/hausdorff.hpp"

namespace hausmet {

struct PairwiseResult {
    std::vector<std::vector<double>> matrix;  // k x k, zero diagonal
    std::uint64_t directed_queries = 0;
    std::uint64_t distance_calls = 0;
};

// All-pairs distance matrix over already-built trees; trees are never
// rebuilt here. Default is the directed matrix (entry i,j = d_h(Xi -> Xj),
// one query per ordered pair); symmetric mode computes each unordered pair
// once with two directed queries and mirrors. Either way the total is
// exactly k*(k-1) directed queries.
inline PairwiseResult pairwise_matrix(const std::vector<const GreedyTree*>& trees,
                                      double eps, bool symmetric) {
    if (trees.size() < 2)
        throw InputError("pairwise needs at least 2 trees, got " +
                         std::to_string(trees.size()));
    check_eps(eps);
    for (std::size_t i = 0; i < trees.size(); ++i) {
        for (std::size_t j = i + 1; j < trees.size(); ++j) {
            const PointSet& a = trees[i]->points();
            const PointSet& b = trees[j]->points();
            if (a.metric() != b.metric() || a.dim() != b.dim())
                throw IncompatibleError(
                    "incompatible pair: '" + a.label() + "' (" +
                    metric_name(a.metric()) + ", dim " + std::to_string(a.dim()) +
                    ") vs '" + b.label() + "' (" + metric_name(b.metric()) +
                    ", dim " + std::to_string(b.dim()) + ")");
        }
    }

    const std::size_t k = trees.size();
    PairwiseResult out;
    out.matrix.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = symmetric ? i + 1 : 0; j < k; ++j) {
            if (i == j) continue;
            if (symmetric) {
                const QueryResult r = hausdorff(*trees[i], *trees[j], eps);
                out.matrix[i][j] = out.matrix[j][i] = r.value;
                out.directed_queries += 2;
                out.distance_calls += r.distance_calls;
            } else {
                const QueryResult r = directed_hausdorff(*trees[i], *trees[j], eps);
                out.matrix[i][j] = r.value;
                out.directed_queries += 1;
                out.distance_calls += r.distance_calls;
            }
        }
    }
    return out;
}

}  // namespace hausmet
