#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "hausmet/errors.hpp"
#include "hausmet/greedy.hpp"
#include "hausmet/metric.hpp"

namespace hausmet {

enum class Side { A, B };

struct TreeNode {
    std::size_t id = 0;
    std::size_t center = 0;      // point index
    double radius = 0.0;         // exact max leaf distance
    std::size_t left = kNone;
    std::size_t right = kNone;
    std::size_t leaf_count = 1;
    std::size_t perm_rank = 0;   // insertion event that created this node

    bool is_leaf() const { return left == kNone; }
};

// Binary ball tree induced by a greedy permutation: inserting p with
// predecessor q splits the leaf centered at q into a left child centered
// at q and a right child centered at p. Immutable after build.
class GreedyTree {
public:
    GreedyTree() = default;
    GreedyTree(PointSet points, GreedyPermutation perm,
               std::vector<TreeNode> nodes,
               std::vector<std::size_t> sorted_internal)
        : points_(std::move(points)), perm_(std::move(perm)),
          nodes_(std::move(nodes)),
          sorted_internal_(std::move(sorted_internal)) {
        index_leaves();
    }

    const PointSet& points() const { return points_; }
    const GreedyPermutation& perm() const { return perm_; }
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    const TreeNode& node(std::size_t id) const { return nodes_[id]; }
    std::size_t root() const { return 0; }
    std::size_t size() const { return points_.size(); }
    const std::vector<std::size_t>& sorted_internal() const {
        return sorted_internal_;
    }

    Point center_point(std::size_t id) const {
        return points_.point(nodes_[id].center);
    }

    // Leaf points of a subtree as a contiguous slice of the DFS leaf order.
    std::pair<std::size_t, std::size_t> leaf_interval(std::size_t id) const {
        return {leaf_begin_[id], leaf_begin_[id] + nodes_[id].leaf_count};
    }
    const std::vector<std::size_t>& leaf_order() const { return leaf_order_; }

    // Permutation position of a point, and the active-node lookup used by
    // the instrumentation tests.
    std::size_t perm_position(std::size_t point) const {
        return pos_in_perm_[point];
    }

    std::size_t height() const {
        std::size_t h = 0;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
        while (!stack.empty()) {
            auto [id, depth] = stack.back();
            stack.pop_back();
            h = std::max(h, depth);
            if (!nodes_[id].is_leaf()) {
                stack.push_back({nodes_[id].left, depth + 1});
                stack.push_back({nodes_[id].right, depth + 1});
            }
        }
        return h;
    }

private:
    void index_leaves() {
        const std::size_t m = nodes_.size();
        leaf_begin_.assign(m, 0);
        leaf_order_.clear();
        leaf_order_.reserve(points_.size());
        // DFS, left child first; every node covers a contiguous run of
        // leaf_order_, and a child is always created after its parent, so a
        // reverse id pass fills internal begins from the left child.
        std::vector<std::size_t> stack{0};
        while (!stack.empty()) {
            const std::size_t id = stack.back();
            stack.pop_back();
            if (nodes_[id].is_leaf()) {
                leaf_begin_[id] = leaf_order_.size();
                leaf_order_.push_back(nodes_[id].center);
            } else {
                stack.push_back(nodes_[id].right);
                stack.push_back(nodes_[id].left);
            }
        }
        for (std::size_t id = m; id-- > 0;) {
            if (!nodes_[id].is_leaf())
                leaf_begin_[id] = leaf_begin_[nodes_[id].left];
        }
        pos_in_perm_.assign(points_.size(), kNone);
        for (std::size_t i = 0; i < perm_.order.size(); ++i)
            pos_in_perm_[perm_.order[i]] = i;
    }

    PointSet points_;
    GreedyPermutation perm_;
    std::vector<TreeNode> nodes_;
    std::vector<std::size_t> sorted_internal_;
    std::vector<std::size_t> leaf_begin_;
    std::vector<std::size_t> leaf_order_;
    std::vector<std::size_t> pos_in_perm_;
};

// Topology per the permutation, then exact radii by one pass over each
// subtree's leaf slice. Radii are never approximated.
inline GreedyTree build_tree(PointSet points, GreedyPermutation perm,
                             DistanceCounter* counter = nullptr) {
    const std::size_t n = perm.size();
    if (n == 0 || n != points.size())
        throw InputError("build_tree: permutation does not match point set");

    std::vector<TreeNode> nodes;
    nodes.reserve(2 * n - 1);
    nodes.push_back(TreeNode{0, perm.order[0], 0.0, kNone, kNone, 1, 0});
    std::vector<std::size_t> leaf_of(n, kNone);
    leaf_of[perm.order[0]] = 0;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t q = perm.order[perm.pred[i]];
        const std::size_t p = perm.order[i];
        const std::size_t t = leaf_of[q];
        const std::size_t l = nodes.size();
        const std::size_t r = l + 1;
        nodes.push_back(TreeNode{l, q, 0.0, kNone, kNone, 1, i});
        nodes.push_back(TreeNode{r, p, 0.0, kNone, kNone, 1, i});
        nodes[t].left = l;
        nodes[t].right = r;
        leaf_of[q] = l;
        leaf_of[p] = r;
    }

    // Leaf slices via DFS, then leaf counts and radii bottom-up.
    std::vector<std::size_t> leaf_order;
    leaf_order.reserve(n);
    std::vector<std::size_t> begin(nodes.size(), 0);
    {
        std::vector<std::size_t> stack{0};
        while (!stack.empty()) {
            const std::size_t id = stack.back();
            stack.pop_back();
            if (nodes[id].is_leaf()) {
                begin[id] = leaf_order.size();
                leaf_order.push_back(nodes[id].center);
            } else {
                stack.push_back(nodes[id].right);
                stack.push_back(nodes[id].left);
            }
        }
    }
    for (std::size_t id = nodes.size(); id-- > 0;) {
        TreeNode& x = nodes[id];
        if (x.is_leaf()) continue;
        x.leaf_count = nodes[x.left].leaf_count + nodes[x.right].leaf_count;
        begin[id] = begin[x.left];
        double rad = 0.0;
        const Point c = points.point(x.center);
        for (std::size_t k = begin[id]; k < begin[id] + x.leaf_count; ++k)
            rad = std::max(rad,
                           distance(points.metric(), c, points.point(leaf_order[k]),
                                    counter));
        x.radius = rad;
    }
    // Monotone radii are what the radius-order traversal relies on. They
    // are guaranteed for alpha >= 2 (a right child created with insertion
    // distance e has radius at most e/(alpha-1) <= e <= parent radius) but
    // can fail for alpha < 2 on chained insertions, so this is an input
    // condition, not an internal bug.
    for (const TreeNode& x : nodes) {
        if (!x.is_leaf() && (nodes[x.left].radius > x.radius ||
                             nodes[x.right].radius > x.radius)) {
            throw InputError(
                "greedy tree radii are not monotone on this input (node " +
                std::to_string(x.id) + "); alpha < 2 does not guarantee the "
                "ball-tree ordering, rebuild with alpha >= 2");
        }
    }

    std::vector<std::size_t> sorted_internal;
    sorted_internal.reserve(n - 1);
    for (const TreeNode& x : nodes)
        if (!x.is_leaf()) sorted_internal.push_back(x.id);
    std::sort(sorted_internal.begin(), sorted_internal.end(),
              [&](std::size_t a, std::size_t b) {
                  if (nodes[a].radius != nodes[b].radius)
                      return nodes[a].radius > nodes[b].radius;
                  return a < b;
              });

    return GreedyTree(std::move(points), std::move(perm), std::move(nodes),
                      std::move(sorted_internal));
}

inline GreedyTree build_greedy_tree(PointSet points, double alpha,
                                    std::optional<std::size_t> root = {},
                                    DistanceCounter* counter = nullptr) {
    GreedyPermutation perm = greedy_permutation(points, alpha, root, counter);
    return build_tree(std::move(points), std::move(perm), counter);
}

struct TraversalItem {
    Side tree_tag = Side::A;
    std::size_t node = 0;
    double radius = 0.0;
};

// Internal nodes only, non-increasing radius; identical to the order a
// max-heap seeded with the root would pop (parents precede children, ids
// break ties).
inline std::vector<TraversalItem> traversal_list(const GreedyTree& tree,
                                                 Side tag) {
    std::vector<TraversalItem> out;
    out.reserve(tree.sorted_internal().size());
    for (std::size_t id : tree.sorted_internal())
        out.push_back(TraversalItem{tag, id, tree.node(id).radius});
    return out;
}

// Stable two-way merge; on radius ties tree A wins, then ascending id.
inline std::vector<TraversalItem> merge_traversals(
    const std::vector<TraversalItem>& a, const std::vector<TraversalItem>& b) {
    std::vector<TraversalItem> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].radius >= b[j].radius)
            out.push_back(a[i++]);
        else
            out.push_back(b[j++]);
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
    return out;
}

}  // namespace hausmet
