#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <thread>

#include "hausmet/hausdorff.hpp"
#include "hausmet/oracle.hpp"
#include "support.hpp"

using namespace hausmet;
using hausmet::testing::random_set;
using hausmet::testing::set_1d;

static GreedyTree tree_of(const PointSet& set, double alpha = 2.0) {
    return build_tree(set, greedy_permutation(set, alpha));
}

TEST_CASE("identical sets give exactly zero") {
    std::mt19937_64 rng(1);
    const PointSet set = random_set(rng, 50, 2);
    const GreedyTree t = tree_of(set);
    for (double eps : {0.05, 1.0, 10.0}) {
        CHECK(directed_hausdorff(t, t, eps).value == 0.0);
        CHECK(hausdorff(t, t, eps).value == 0.0);
    }
}

TEST_CASE("small 1D instance sandwiches the exact value") {
    const PointSet A = set_1d({0.0, 5.0, 9.0});
    const PointSet B = set_1d({1.0, 8.0});
    const QueryResult r = directed_hausdorff(tree_of(A), tree_of(B), 0.1);
    CHECK(r.value <= 3.0);
    CHECK(3.0 <= 1.1 * r.value);
}

TEST_CASE("two singletons resolve at initialization") {
    const QueryResult r =
        directed_hausdorff(tree_of(set_1d({0.0})), tree_of(set_1d({7.0})), 0.5);
    CHECK(r.value == 7.0);
    CHECK(r.iterations == 0);
}

TEST_CASE("parameter and compatibility errors") {
    const GreedyTree a = tree_of(set_1d({0.0, 1.0}));
    CHECK_THROWS_AS(directed_hausdorff(a, a, 0.0), ParameterError);
    CHECK_THROWS_AS(directed_hausdorff(a, a, -1.0), ParameterError);
    CHECK_THROWS_AS(directed_hausdorff(a, a, std::nan("")), ParameterError);
    const GreedyTree b = tree_of(set_1d({0.0, 1.0}, MetricKind::LInf));
    CHECK_THROWS_AS(directed_hausdorff(a, b, 0.1), IncompatibleError);
}

TEST_CASE("symmetric query") {
    const GreedyTree a = tree_of(set_1d({0.0}));
    const GreedyTree b = tree_of(set_1d({0.0, 100.0}));
    const QueryResult r = hausdorff(a, b, 0.2);
    CHECK(r.value <= 100.0);
    CHECK(100.0 <= 1.2 * r.value);
    CHECK(hausdorff(b, a, 0.2).value == r.value);
}

TEST_CASE("sandwich against the oracle on random instances") {
    std::mt19937_64 rng(2222);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + rng() % 80;
        const std::size_t m = 1 + rng() % 80;
        const std::size_t d = 1 + rng() % 3;
        const PointSet A = random_set(rng, n, d);
        const PointSet B = random_set(rng, m, d);
        const double eps = std::vector<double>{0.05, 0.2, 1.0}[rng() % 3];
        const QueryResult r = directed_hausdorff(tree_of(A), tree_of(B), eps);
        const double exact = exact_directed(A, B);
        CHECK(r.value <= exact);
        CHECK(exact <= (1.0 + eps) * r.value);
        const QueryResult h = hausdorff(tree_of(A), tree_of(B), eps);
        const double exact_h = exact_hausdorff(A, B);
        CHECK(h.value <= exact_h);
        CHECK(exact_h <= (1.0 + eps) * h.value);
    }
}

TEST_CASE("exhausting the list returns the oracle exactly") {
    std::mt19937_64 rng(3333);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 1 + rng() % 60;
        const std::size_t m = 1 + rng() % 60;
        const PointSet A = random_set(rng, n, 2);
        const PointSet B = random_set(rng, m, 2);
        const QueryResult r = directed_hausdorff(tree_of(A), tree_of(B), 1e-9);
        CHECK(r.value == exact_directed(A, B));
    }
}

TEST_CASE("the global lower bound never decreases") {
    std::mt19937_64 rng(4444);
    const PointSet A = random_set(rng, 70, 2);
    const PointSet B = random_set(rng, 70, 2);
    double last = 0.0;
    QueryTrace trace;
    trace.on_iteration = [&](const ViabilityGraph&, const IterationRecord& rec) {
        REQUIRE(rec.global_lower >= last);
        last = rec.global_lower;
    };
    directed_hausdorff(tree_of(A), tree_of(B), 0.01, &trace);
}

TEST_CASE("looser eps never does more iterations") {
    std::mt19937_64 rng(5555);
    const PointSet A = random_set(rng, 120, 2);
    const PointSet B = random_set(rng, 120, 2);
    const GreedyTree ta = tree_of(A);
    const GreedyTree tb = tree_of(B);
    std::uint64_t prev = std::numeric_limits<std::uint64_t>::max();
    for (double eps : {0.01, 0.05, 0.2, 1.0, 5.0}) {
        const std::uint64_t iters = directed_hausdorff(ta, tb, eps).iterations;
        CHECK(iters <= prev);
        prev = iters;
    }
}

TEST_CASE("concurrent queries over shared trees agree") {
    std::mt19937_64 rng(6666);
    const PointSet A = random_set(rng, 90, 2);
    const PointSet B = random_set(rng, 90, 2);
    const GreedyTree ta = tree_of(A);
    const GreedyTree tb = tree_of(B);
    const double expected = directed_hausdorff(ta, tb, 0.1).value;
    std::vector<double> got(4);
    std::vector<std::thread> workers;
    for (int i = 0; i < 4; ++i)
        workers.emplace_back(
            [&, i] { got[i] = directed_hausdorff(ta, tb, 0.1).value; });
    for (auto& w : workers) w.join();
    for (double v : got) CHECK(v == expected);
}
