#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hausmet/errors.hpp"
#include "hausmet/metric.hpp"

namespace hausmet {

inline constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Alpha-approximate greedy permutation with an alpha-scaling predecessor
// map. pred[i] is the permutation *position* of the predecessor of the
// point at position i; pred[0] = kNone and insertion_dist[0] = +inf.
struct GreedyPermutation {
    std::vector<std::size_t> order;
    std::vector<std::size_t> pred;
    std::vector<double> insertion_dist;
    double alpha = 2.0;

    std::size_t size() const { return order.size(); }
};

// Gonzalez-style construction with alpha-lazy parent updates: insert the
// uninserted point farthest from its parent (ties: lowest original index),
// then reparent every uninserted q to the new point p iff
// alpha*d(p,q) < d(parent(q),q). Equality keeps the old parent.
inline GreedyPermutation greedy_permutation(const PointSet& set, double alpha,
                                            std::optional<std::size_t> root = {},
                                            DistanceCounter* counter = nullptr) {
    if (std::isnan(alpha) || alpha < 1.0)
        throw ParameterError("alpha must be >= 1 (alpha = 1 is exact-greedy mode)");
    validate(set);
    const std::size_t n = set.size();
    const std::size_t r = root.value_or(0);
    if (r >= n)
        throw InputError("root index " + std::to_string(r) + " out of range");

    GreedyPermutation perm;
    perm.alpha = alpha;
    perm.order.reserve(n);
    perm.pred.reserve(n);
    perm.insertion_dist.reserve(n);
    perm.order.push_back(r);
    perm.pred.push_back(kNone);
    perm.insertion_dist.push_back(std::numeric_limits<double>::infinity());

    std::vector<bool> inserted(n, false);
    std::vector<std::size_t> parent(n, r);
    std::vector<double> parent_dist(n, 0.0);
    std::vector<std::size_t> pos_in_perm(n, kNone);
    inserted[r] = true;
    pos_in_perm[r] = 0;
    for (std::size_t q = 0; q < n; ++q) {
        if (!inserted[q]) parent_dist[q] = set.dist(q, r, counter);
    }

    for (std::size_t step = 1; step < n; ++step) {
        std::size_t p = kNone;
        double best = -1.0;
        for (std::size_t q = 0; q < n; ++q) {
            if (!inserted[q] && parent_dist[q] > best) {
                best = parent_dist[q];
                p = q;
            }
        }
        perm.order.push_back(p);
        perm.pred.push_back(pos_in_perm[parent[p]]);
        perm.insertion_dist.push_back(parent_dist[p]);
        inserted[p] = true;
        pos_in_perm[p] = step;
        for (std::size_t q = 0; q < n; ++q) {
            if (inserted[q]) continue;
            const double d = set.dist(p, q, counter);
            if (alpha * d < parent_dist[q]) {
                parent_dist[q] = d;
                parent[q] = p;
            }
        }
    }
    return perm;
}

struct GreedyViolation {
    std::size_t position;
    std::string what;
};

// Brute-force O(n^2) check of the permutation invariants: structure,
// insertion distances, alpha-scaling along predecessor chains, and
// alpha-approximate greediness (max_p d(p,P_i) <= alpha * d(p_i,P_i)).
inline std::optional<GreedyViolation> verify_greedy(const PointSet& set,
                                                    const GreedyPermutation& perm) {
    const std::size_t n = perm.size();
    if (n != set.size())
        return GreedyViolation{0, "permutation size does not match point set"};
    if (n == 0) return GreedyViolation{0, "empty permutation"};

    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (perm.order[i] >= n || seen[perm.order[i]])
            return GreedyViolation{i, "order is not a permutation"};
        seen[perm.order[i]] = true;
    }
    if (perm.pred[0] != kNone ||
        !std::isinf(perm.insertion_dist[0]))
        return GreedyViolation{0, "root must have no predecessor and infinite insertion distance"};

    for (std::size_t i = 1; i < n; ++i) {
        if (perm.pred[i] >= i)
            return GreedyViolation{i, "predecessor not inserted earlier"};
        const double d = set.dist(perm.order[i], perm.order[perm.pred[i]]);
        if (d != perm.insertion_dist[i])
            return GreedyViolation{i, "insertion distance does not equal predecessor distance"};
        if (perm.pred[i] != 0 &&
            perm.insertion_dist[i] * perm.alpha >
                perm.insertion_dist[perm.pred[i]] * (1.0 + 1e-12))
            return GreedyViolation{i, "alpha-scaling violated"};
    }

    // dist_to_prefix[q] = d(q, P_i), updated incrementally.
    std::vector<double> dist_to_prefix(n, std::numeric_limits<double>::infinity());
    for (std::size_t q = 0; q < n; ++q)
        dist_to_prefix[q] = set.dist(q, perm.order[0]);
    dist_to_prefix[perm.order[0]] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        double far = 0.0;
        for (std::size_t q = 0; q < n; ++q) far = std::max(far, dist_to_prefix[q]);
        const double own = dist_to_prefix[perm.order[i]];
        if (far > perm.alpha * own * (1.0 + 1e-12))
            return GreedyViolation{i, "alpha-approximate greediness violated"};
        for (std::size_t q = 0; q < n; ++q)
            dist_to_prefix[q] =
                std::min(dist_to_prefix[q], set.dist(q, perm.order[i]));
        dist_to_prefix[perm.order[i]] = 0.0;
    }
    return std::nullopt;
}

}  // namespace hausmet
