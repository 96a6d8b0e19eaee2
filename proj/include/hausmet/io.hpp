#pragma once

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hausmet/errors.hpp"
#include "hausmet/format.hpp"
#include "hausmet/greedy_tree.hpp"

namespace hausmet {

// ---------------------------------------------------------------------------
// Point-set text files: one point per line, coordinates separated by commas
// or whitespace, '#' starts a comment line. Dimension is inferred from the
// first data line.

inline PointSet parse_points(std::istream& in, MetricKind metric,
                             std::string label) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<double> row;
        std::string token;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            const char c = i < line.size() ? line[i] : '\0';
            if (c == '#') break;
            if (c == ',' || c == ' ' || c == '\t' || c == '\r' || c == '\0') {
                if (!token.empty()) {
                    try {
                        row.push_back(parse_double(token));
                    } catch (const InputError&) {
                        throw InputError("line " + std::to_string(lineno) +
                                         ": not a number: '" + token + "'");
                    }
                    token.clear();
                }
            } else {
                token.push_back(c);
            }
        }
        if (row.empty()) continue;  // blank or comment-only line
        if (!rows.empty() && row.size() != rows.front().size())
            throw InputError("line " + std::to_string(lineno) + ": expected " +
                             std::to_string(rows.front().size()) +
                             " coordinates, got " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InputError("no points in input");
    return PointSet::from_rows(rows, metric, std::move(label));
}

inline PointSet read_point_file(const std::string& path, MetricKind metric) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open point file '" + path + "'");
    std::string label = path;
    const auto slash = label.find_last_of('/');
    if (slash != std::string::npos) label = label.substr(slash + 1);
    const auto dot = label.find_last_of('.');
    if (dot != std::string::npos && dot > 0) label = label.substr(0, dot);
    return parse_points(in, metric, label);
}

inline void write_point_file(std::ostream& out, const PointSet& set) {
    for (std::size_t i = 0; i < set.size(); ++i) {
        const Point p = set.point(i);
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (k) out << ' ';
            out << format_double(p[k]);
        }
        out << '\n';
    }
}

// ---------------------------------------------------------------------------
// Tree files: one JSON document holding the point set, the permutation and
// all node records, so a load is O(n) with no distance recomputation.

inline constexpr int kTreeFormatVersion = 1;

inline nlohmann::json tree_to_json(const GreedyTree& tree) {
    nlohmann::json j;
    j["version"] = kTreeFormatVersion;
    j["label"] = tree.points().label();
    j["metric"] = metric_name(tree.points().metric());
    j["dim"] = tree.points().dim();
    j["alpha"] = tree.perm().alpha;
    nlohmann::json points = nlohmann::json::array();
    for (std::size_t i = 0; i < tree.points().size(); ++i) {
        const Point p = tree.points().point(i);
        points.push_back(std::vector<double>(p.begin(), p.end()));
    }
    j["points"] = std::move(points);
    nlohmann::json pred = nlohmann::json::array();
    nlohmann::json ins = nlohmann::json::array();
    pred.push_back(nullptr);  // the root has no predecessor
    ins.push_back(nullptr);   // infinity sentinel
    for (std::size_t i = 1; i < tree.perm().size(); ++i) {
        pred.push_back(tree.perm().pred[i]);
        ins.push_back(tree.perm().insertion_dist[i]);
    }
    j["perm"] = {{"order", tree.perm().order},
                 {"pred", std::move(pred)},
                 {"insertion_dist", std::move(ins)}};
    nlohmann::json nodes = nlohmann::json::array();
    for (const TreeNode& x : tree.nodes()) {
        nlohmann::json n;
        n["id"] = x.id;
        n["center"] = x.center;
        n["radius"] = x.radius;
        n["left"] = x.is_leaf() ? nlohmann::json(nullptr) : nlohmann::json(x.left);
        n["right"] = x.is_leaf() ? nlohmann::json(nullptr) : nlohmann::json(x.right);
        n["leaf_count"] = x.leaf_count;
        nodes.push_back(std::move(n));
    }
    j["nodes"] = std::move(nodes);
    j["root"] = tree.root();
    j["sorted_nodes"] = tree.sorted_internal();
    return j;
}

inline std::string serialize_tree(const GreedyTree& tree) {
    return tree_to_json(tree).dump(1);
}

namespace detail {

[[noreturn]] inline void bad_tree(const std::string& why) {
    throw FormatError("invalid tree file: " + why);
}

inline GreedyTree tree_from_json(const nlohmann::json& j) {
    if (!j.contains("version") || !j["version"].is_number_integer())
        bad_tree("missing version field");
    if (j["version"].get<int>() != kTreeFormatVersion)
        bad_tree("version mismatch (got " + j["version"].dump() + ", expected " +
                 std::to_string(kTreeFormatVersion) + ")");

    const MetricKind metric = [&] {
        try {
            return metric_from_name(j.at("metric").get<std::string>());
        } catch (const InputError& e) {
            bad_tree(e.what());
        }
    }();
    const std::size_t dim = j.at("dim").get<std::size_t>();
    const double alpha = j.at("alpha").get<double>();
    if (dim == 0) bad_tree("dim must be >= 1");
    if (!(alpha >= 1.0)) bad_tree("alpha must be >= 1");

    const auto& jpoints = j.at("points");
    if (!jpoints.is_array() || jpoints.empty()) bad_tree("no points");
    const std::size_t n = jpoints.size();
    std::vector<double> flat;
    flat.reserve(n * dim);
    for (const auto& row : jpoints) {
        if (!row.is_array() || row.size() != dim)
            bad_tree("point with wrong dimension");
        for (const auto& c : row) {
            const double v = c.get<double>();
            if (!std::isfinite(v)) bad_tree("non-finite coordinate");
            flat.push_back(v);
        }
    }
    PointSet points(std::move(flat), dim, metric,
                    j.value("label", std::string{}));

    const auto& jperm = j.at("perm");
    GreedyPermutation perm;
    perm.alpha = alpha;
    perm.order = jperm.at("order").get<std::vector<std::size_t>>();
    const auto& jpred = jperm.at("pred");
    const auto& jins = jperm.at("insertion_dist");
    if (perm.order.size() != n || jpred.size() != n || jins.size() != n)
        bad_tree("permutation arrays do not match point count");
    std::vector<bool> seen(n, false);
    for (std::size_t p : perm.order) {
        if (p >= n || seen[p]) bad_tree("order is not a permutation");
        seen[p] = true;
    }
    if (!jpred[0].is_null() || !jins[0].is_null())
        bad_tree("root must have null predecessor and insertion distance");
    perm.pred.push_back(kNone);
    perm.insertion_dist.push_back(std::numeric_limits<double>::infinity());
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t p = jpred[i].get<std::size_t>();
        const double d = jins[i].get<double>();
        if (p >= i) bad_tree("predecessor not earlier in the permutation");
        if (!(d >= 0.0) || !std::isfinite(d)) bad_tree("bad insertion distance");
        perm.pred.push_back(p);
        perm.insertion_dist.push_back(d);
    }

    const auto& jnodes = j.at("nodes");
    if (jnodes.size() != 2 * n - 1)
        bad_tree("expected " + std::to_string(2 * n - 1) + " nodes, got " +
                 std::to_string(jnodes.size()));
    if (j.at("root").get<std::size_t>() != 0) bad_tree("root must be node 0");

    std::vector<TreeNode> nodes(jnodes.size());
    for (std::size_t id = 0; id < jnodes.size(); ++id) {
        const auto& jn = jnodes[id];
        TreeNode x;
        x.id = jn.at("id").get<std::size_t>();
        if (x.id != id) bad_tree("node ids must be 0..2n-2 in order");
        x.center = jn.at("center").get<std::size_t>();
        if (x.center >= n) bad_tree("node center out of range");
        x.radius = jn.at("radius").get<double>();
        if (!(x.radius >= 0.0) || !std::isfinite(x.radius))
            bad_tree("bad node radius");
        const bool leaf = jn.at("left").is_null();
        if (leaf != jn.at("right").is_null())
            bad_tree("node must have zero or two children");
        if (!leaf) {
            x.left = jn.at("left").get<std::size_t>();
            x.right = jn.at("right").get<std::size_t>();
        }
        x.leaf_count = jn.at("leaf_count").get<std::size_t>();
        // creation event: node 2k-1 and 2k come from insertion k
        x.perm_rank = (x.id + 1) / 2;
        nodes[id] = x;
    }

    // Structural checks, all O(n): the canonical id layout, the left child
    // sharing the parent's center, the right child centered at the
    // insertion event's point, consistent leaf counts, monotone radii, and
    // one leaf per point.
    std::vector<std::size_t> leaf_of_point(n, kNone);
    std::vector<bool> has_parent(nodes.size(), false);
    for (const TreeNode& x : nodes) {
        if (x.is_leaf()) {
            if (x.radius != 0.0) bad_tree("leaf with nonzero radius");
            if (x.leaf_count != 1) bad_tree("leaf with leaf_count != 1");
            if (leaf_of_point[x.center] != kNone)
                bad_tree("two leaves share a center");
            leaf_of_point[x.center] = x.id;
            continue;
        }
        if (x.left >= nodes.size() || x.right >= nodes.size())
            bad_tree("child id out of range");
        if (x.right != x.left + 1 || x.left % 2 != 1 || x.left <= x.id)
            bad_tree("children do not follow the construction id layout");
        if (has_parent[x.left] || has_parent[x.right])
            bad_tree("node with two parents");
        has_parent[x.left] = has_parent[x.right] = true;
        const TreeNode& l = nodes[x.left];
        const TreeNode& r = nodes[x.right];
        if (l.center != x.center) bad_tree("left child changes the center");
        if (r.center != perm.order[r.perm_rank])
            bad_tree("right child center does not match its insertion event");
        if (x.leaf_count != l.leaf_count + r.leaf_count)
            bad_tree("leaf_count mismatch");
        if (l.radius > x.radius || r.radius > x.radius)
            bad_tree("child radius exceeds parent radius");
    }
    for (std::size_t p = 0; p < n; ++p)
        if (leaf_of_point[p] == kNone) bad_tree("point without a leaf");
    if (nodes[0].leaf_count != n) bad_tree("root leaf_count must be n");

    const auto sorted =
        j.at("sorted_nodes").get<std::vector<std::size_t>>();
    if (sorted.size() != n - 1) bad_tree("sorted_nodes must list internal nodes");
    std::vector<bool> in_sorted(nodes.size(), false);
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        const std::size_t id = sorted[k];
        if (id >= nodes.size() || nodes[id].is_leaf() || in_sorted[id])
            bad_tree("sorted_nodes entry invalid or repeated");
        in_sorted[id] = true;
        if (k > 0) {
            const std::size_t prev = sorted[k - 1];
            if (nodes[prev].radius < nodes[id].radius ||
                (nodes[prev].radius == nodes[id].radius && prev > id))
                bad_tree("sorted_nodes not in radius order");
        }
    }

    return GreedyTree(std::move(points), std::move(perm), std::move(nodes),
                      sorted);
}

}  // namespace detail

inline GreedyTree deserialize_tree(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("invalid tree file: ") + e.what());
    }
    try {
        return detail::tree_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("invalid tree file: ") + e.what());
    }
}

inline void save_tree(const GreedyTree& tree, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    out << serialize_tree(tree) << '\n';
    if (!out) throw InputError("failed writing '" + path + "'");
}

inline GreedyTree load_tree(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open tree file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return deserialize_tree(buf.str());
}

}  // namespace hausmet
