#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "hausmet/errors.hpp"
#include "hausmet/metric.hpp"

namespace hausmet {

// Exact brute-force references. Deliberately naive; these must stay
// obviously correct.

inline void check_compatible(const PointSet& a, const PointSet& b) {
    if (a.metric() != b.metric())
        throw IncompatibleError("point sets use different metrics");
    if (a.dim() != b.dim())
        throw IncompatibleError("point sets have different dimensions");
}

inline double point_to_set(const PointSet& a, std::size_t i, const PointSet& b,
                           DistanceCounter* counter = nullptr) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j)
        best = std::min(best,
                        distance(a.metric(), a.point(i), b.point(j), counter));
    return best;
}

// max over a in A of min over b in B of d(a,b); exactly |A|*|B| distance
// evaluations.
inline double exact_directed(const PointSet& a, const PointSet& b,
                             DistanceCounter* counter = nullptr) {
    check_compatible(a, b);
    if (a.size() == 0 || b.size() == 0)
        throw InputError("exact_directed: empty point set");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, point_to_set(a, i, b, counter));
    return worst;
}

// d(a,B) for every a, sorted descending; entry k is the (k+1)-st largest.
inline std::vector<double> exact_partial_all(const PointSet& a,
                                             const PointSet& b,
                                             DistanceCounter* counter = nullptr) {
    check_compatible(a, b);
    if (a.size() == 0 || b.size() == 0)
        throw InputError("exact_partial_all: empty point set");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = point_to_set(a, i, b, counter);
    std::stable_sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

inline double exact_hausdorff(const PointSet& a, const PointSet& b,
                              DistanceCounter* counter = nullptr) {
    return std::max(exact_directed(a, b, counter),
                    exact_directed(b, a, counter));
}

}  // namespace hausmet
