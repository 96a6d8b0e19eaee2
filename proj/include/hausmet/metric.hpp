#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hausmet/errors.hpp"

namespace hausmet {

enum class MetricKind { L2, L1, LInf };

inline const char* metric_name(MetricKind m) {
    switch (m) {
        case MetricKind::L2: return "l2";
        case MetricKind::L1: return "l1";
        case MetricKind::LInf: return "linf";
    }
    return "?";
}

inline MetricKind metric_from_name(const std::string& s) {
    if (s == "l2") return MetricKind::L2;
    if (s == "l1") return MetricKind::L1;
    if (s == "linf") return MetricKind::LInf;
    throw InputError("unknown metric '" + s + "' (expected l2, l1 or linf)");
}

using Point = std::span<const double>;

// Counts metric evaluations. One counter per query; never share across
// concurrent queries.
struct DistanceCounter {
    std::uint64_t calls = 0;
};

inline double distance(MetricKind metric, Point p, Point q,
                       DistanceCounter* counter = nullptr) {
    if (p.size() != q.size())
        throw InputError("distance: dimension mismatch (" +
                         std::to_string(p.size()) + " vs " +
                         std::to_string(q.size()) + ")");
    if (counter) ++counter->calls;
    switch (metric) {
        case MetricKind::L2: {
            double s = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                const double d = p[i] - q[i];
                s += d * d;
            }
            return std::sqrt(s);
        }
        case MetricKind::L1: {
            double s = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
            return s;
        }
        case MetricKind::LInf: {
            double s = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i)
                s = std::max(s, std::abs(p[i] - q[i]));
            return s;
        }
    }
    throw InternalError("bad metric tag");
}

// Immutable finite point collection. Flat row-major storage; all points
// share one dimension by construction.
class PointSet {
public:
    PointSet() = default;
    PointSet(std::vector<double> coords, std::size_t dim, MetricKind metric,
             std::string label = {})
        : coords_(std::move(coords)), dim_(dim), metric_(metric),
          label_(std::move(label)) {
        if (dim_ == 0) throw InputError("point set: dimension must be >= 1");
        if (coords_.size() % dim_ != 0)
            throw InputError("point set: coordinate count not a multiple of dim");
    }

    static PointSet from_rows(const std::vector<std::vector<double>>& rows,
                              MetricKind metric, std::string label = {}) {
        if (rows.empty()) throw InputError("point set: empty");
        const std::size_t dim = rows.front().size();
        std::vector<double> flat;
        flat.reserve(rows.size() * dim);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != dim)
                throw InputError("point " + std::to_string(i) + " has dimension " +
                                 std::to_string(rows[i].size()) + ", expected " +
                                 std::to_string(dim));
            flat.insert(flat.end(), rows[i].begin(), rows[i].end());
        }
        return PointSet(std::move(flat), dim, metric, std::move(label));
    }

    std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    std::size_t dim() const { return dim_; }
    MetricKind metric() const { return metric_; }
    const std::string& label() const { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }

    Point point(std::size_t i) const {
        return Point(coords_.data() + i * dim_, dim_);
    }

    double dist(std::size_t i, std::size_t j,
                DistanceCounter* counter = nullptr) const {
        return distance(metric_, point(i), point(j), counter);
    }

    const std::vector<double>& coords() const { return coords_; }

private:
    std::vector<double> coords_;
    std::size_t dim_ = 0;
    MetricKind metric_ = MetricKind::L2;
    std::string label_;
};

// Accepts iff nonempty, finite coordinates, no exact duplicates.
// Reports the first violation with its point index.
inline void validate(const PointSet& set) {
    if (set.size() == 0) throw InputError("point set is empty");
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (double c : set.point(i)) {
            if (!std::isfinite(c))
                throw InputError("point " + std::to_string(i) +
                                 " has a non-finite coordinate");
        }
    }
    for (std::size_t i = 0; i < set.size(); ++i) {
        const Point pi = set.point(i);
        for (std::size_t j = 0; j < i; ++j) {
            const Point pj = set.point(j);
            bool equal = true;
            for (std::size_t k = 0; k < set.dim(); ++k) {
                if (pi[k] != pj[k]) { equal = false; break; }
            }
            if (equal)
                throw InputError("duplicate point at index " + std::to_string(i) +
                                 " (equals point " + std::to_string(j) + ")");
        }
    }
}

// Diameter over minimum pairwise distance, by exhaustive O(n^2) pairs.
// Diagnostic only, not on the query path.
inline double spread(const PointSet& set) {
    if (set.size() < 2)
        throw InputError("spread undefined for fewer than 2 points");
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            const double d = set.dist(i, j);
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
    }
    if (lo == 0.0)
        throw InputError("spread is infinite: set contains duplicate points");
    return hi / lo;
}

}  // namespace hausmet
