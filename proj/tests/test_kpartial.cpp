#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hausmet/kpartial.hpp"
#include "hausmet/oracle.hpp"
#include "support.hpp"

using namespace hausmet;
using hausmet::testing::random_set;
using hausmet::testing::set_1d;

static GreedyTree tree_of(const PointSet& set, double alpha = 2.0) {
    return build_tree(set, greedy_permutation(set, alpha));
}

static void check_sandwich(const PartialResult& r,
                           const std::vector<double>& exact, double eps) {
    REQUIRE(r.deltas.size() == exact.size());
    for (std::size_t k = 0; k < exact.size(); ++k) {
        INFO("k = " << k);
        CHECK(r.deltas[k] <= exact[k]);
        CHECK(exact[k] <= (1.0 + eps) * r.deltas[k]);
    }
    for (std::size_t k = 0; k + 1 < r.deltas.size(); ++k)
        CHECK(r.deltas[k] >= r.deltas[k + 1]);
}

TEST_CASE("bucket_index brackets its key") {
    CHECK(bucket_index(1.0, 1.05) == -1);
    CHECK(bucket_index(21.0, 1.05) == 62);
    CHECK_FALSE(bucket_index(0.0, 1.05).has_value());
    CHECK_THROWS_AS(bucket_index(-1.0, 1.05), InternalError);

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> mag(-9.0, 4.0);
    for (double beta : {1.025, 1.05, 1.5, 2.0}) {
        for (int trial = 0; trial < 500; ++trial) {
            const double l = std::pow(10.0, mag(rng));
            const auto m = bucket_index(l, beta);
            REQUIRE(m.has_value());
            CHECK(std::pow(beta, static_cast<double>(*m)) < l);
            CHECK(l <= std::pow(beta, static_cast<double>(*m + 1)));
        }
    }
}

TEST_CASE("finish_threshold") {
    CHECK(finish_threshold(0.5, 1.05) == 63);
    CHECK(finish_threshold(0.0, 1.05) == kAllFinishable);
    // r = (beta-1)/(2 beta) * beta^m closes the inequality at s = m
    const double beta = 1.05;
    for (BucketIndex m : {-5, 0, 10, 40}) {
        const double r = (beta - 1.0) / (2.0 * beta) *
                         std::pow(beta, static_cast<double>(m));
        CHECK(finish_threshold(r, beta) == m);
    }
}

TEST_CASE("1D all-k example") {
    const PointSet A = set_1d({0.0, 1.0, 2.0, 50.0});
    const PointSet B = set_1d({0.0});
    const PartialResult r = k_hausdorff_all(tree_of(A), tree_of(B), 0.1);
    check_sandwich(r, {50.0, 2.0, 1.0, 0.0}, 0.1);
    CHECK(r.deltas[3] == 0.0);
}

TEST_CASE("identical sets give all zeros") {
    std::mt19937_64 rng(10);
    const PointSet set = random_set(rng, 30, 2);
    const GreedyTree t = tree_of(set);
    const PartialResult r = k_hausdorff_all(t, t, 0.25);
    REQUIRE(r.deltas.size() == set.size());
    for (double d : r.deltas) CHECK(d == 0.0);
}

TEST_CASE("single-point A") {
    const PointSet A = set_1d({3.0});
    const PointSet B = set_1d({0.0, 10.0});
    const PartialResult r = k_hausdorff_all(tree_of(A), tree_of(B), 0.3);
    check_sandwich(r, exact_partial_all(A, B), 0.3);
}

// Regression for the near-boundary geometry: the finished node centered at
// 97.1 covers a leaf at 96.8, below the 1+eps/2 bucket edge 1.1^48. The
// per-leaf sandwich must still hold for k = 1.
TEST_CASE("finished nodes with interior leaves keep the lower bound") {
    const PointSet A = set_1d({97.1, 96.8, 50.0});
    const PointSet B = set_1d({0.0});
    const PartialResult r = k_hausdorff_all(tree_of(A), tree_of(B), 0.2);
    check_sandwich(r, {97.1, 96.8, 50.0}, 0.2);
}

TEST_CASE("k-partial sandwich against the oracle on random instances") {
    std::mt19937_64 rng(7777);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + rng() % 70;
        const std::size_t m = 1 + rng() % 70;
        const std::size_t d = 1 + rng() % 3;
        const PointSet A = random_set(rng, n, d);
        const PointSet B = random_set(rng, m, d);
        const double eps = std::vector<double>{0.05, 0.2, 1.0, 3.0}[rng() % 4];
        const PartialResult r = k_hausdorff_all(tree_of(A), tree_of(B), eps);
        check_sandwich(r, exact_partial_all(A, B), eps);
        CHECK(r.beta == 1.0 + std::min(eps, 4.0) / 4.0);
    }
}

TEST_CASE("delta_0 agrees with the directed query's guarantee") {
    std::mt19937_64 rng(88);
    const PointSet A = random_set(rng, 60, 2);
    const PointSet B = random_set(rng, 50, 2);
    const PartialResult r = k_hausdorff_all(tree_of(A), tree_of(B), 0.2);
    const double exact = exact_directed(A, B);
    CHECK(r.deltas[0] <= exact);
    CHECK(exact <= 1.2 * r.deltas[0]);
}

// Growth caps from the two split cases: a B-split of radius r lifts an
// affected bound by at most r; an A-split leaves the left child's bound
// unchanged and lifts the right child's by at most r.
TEST_CASE("lower-bound growth stays within the split radius") {
    std::mt19937_64 rng(9999);
    for (int trial = 0; trial < 5; ++trial) {
        const PointSet A = random_set(rng, 50, 2);
        const PointSet B = random_set(rng, 50, 2);
        const GreedyTree ta = tree_of(A);
        QueryTrace trace;
        trace.on_lower_update = [&](const ViabilityGraph&, const LowerUpdate& u,
                                    Side split_side, double radius) {
            const double tol = 1e-9 * (1.0 + u.before + radius);
            if (split_side == Side::B) {
                REQUIRE(u.after <= u.before + radius + tol);
            } else {
                // updates come left child first, then right
                const bool is_left = ta.node(u.a_node).id % 2 == 1;
                if (is_left)
                    REQUIRE(u.after == u.before);
                else
                    REQUIRE(u.after <= u.before + radius + tol);
            }
        };
        k_hausdorff_all(ta, tree_of(B), 0.2, &trace);
    }
}

TEST_CASE("finishing sweep economy") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 6; ++trial) {
        const std::size_t n = 20 + rng() % 100;
        const PointSet A = random_set(rng, n, 2);
        const PointSet B = random_set(rng, n, 2);
        const PartialResult r = k_hausdorff_all(tree_of(A), tree_of(B), 0.2);
        // union spread bounds the number of distinct finished buckets
        std::vector<double> flat(A.coords());
        flat.insert(flat.end(), B.coords().begin(), B.coords().end());
        const double delta = spread(PointSet(std::move(flat), 2, MetricKind::L2));
        const double bound =
            std::ceil(std::log(delta) / std::log(r.beta)) + 2.0;
        CHECK(static_cast<double>(r.buckets_finished) <= bound);
    }
}
