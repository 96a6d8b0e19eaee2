#pragma once

#include <random>
#include <vector>

#include "hausmet/greedy_tree.hpp"
#include "hausmet/metric.hpp"

namespace hausmet::testing {

inline PointSet random_set(std::mt19937_64& rng, std::size_t n, std::size_t dim,
                           MetricKind metric = MetricKind::L2,
                           double scale = 1.0) {
    std::uniform_real_distribution<double> unit(0.0, scale);
    std::vector<double> flat(n * dim);
    for (double& c : flat) c = unit(rng);
    return PointSet(std::move(flat), dim, metric);
}

inline PointSet set_1d(std::vector<double> values,
                       MetricKind metric = MetricKind::L2) {
    return PointSet(std::move(values), 1, metric);
}

// Fig-style four-point 2D set used across the greedy and tree tests.
inline PointSet quad_set() {
    return PointSet::from_rows(
        {{0.1, 0.1}, {1.7, 1.5}, {2.5, 2.8}, {2.4, 1.7}}, MetricKind::L2,
        "quad");
}

}  // namespace hausmet::testing
