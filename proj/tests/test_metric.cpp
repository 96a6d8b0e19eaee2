#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hausmet/metric.hpp"
#include "support.hpp"

using namespace hausmet;
using hausmet::testing::random_set;
using hausmet::testing::set_1d;
using Catch::Approx;

TEST_CASE("distance on the standard examples") {
    const std::vector<double> o{0.0, 0.0}, p{3.0, 4.0};
    CHECK(distance(MetricKind::L2, o, p) == 5.0);
    CHECK(distance(MetricKind::L1, o, p) == 7.0);
    CHECK(distance(MetricKind::LInf, o, p) == 4.0);

    const std::vector<double> a{0.1, 0.1}, c{2.5, 2.8};
    CHECK(distance(MetricKind::L2, a, c) ==
          Approx(3.612478373637688).epsilon(1e-12));
}

TEST_CASE("distance increments the counter and rejects dimension mismatch") {
    DistanceCounter counter;
    const std::vector<double> p{1.0, 2.0}, q{3.0, 4.0}, bad{1.0};
    distance(MetricKind::L2, p, q, &counter);
    distance(MetricKind::L1, p, q, &counter);
    CHECK(counter.calls == 2);
    CHECK_THROWS_AS(distance(MetricKind::L2, p, bad), InputError);
}

TEST_CASE("metric axioms hold on random triples") {
    std::mt19937_64 rng(20240901);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    for (MetricKind m : {MetricKind::L2, MetricKind::L1, MetricKind::LInf}) {
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> p(3), q(3), r(3);
            for (int k = 0; k < 3; ++k) {
                p[k] = coord(rng);
                q[k] = coord(rng);
                r[k] = coord(rng);
            }
            const double pq = distance(m, p, q);
            const double qp = distance(m, q, p);
            const double pr = distance(m, p, r);
            const double qr = distance(m, q, r);
            CHECK(distance(m, p, p) == 0.0);
            CHECK(pq == qp);
            CHECK(pq >= 0.0);
            CHECK(std::isfinite(pq));
            CHECK(pr <= (pq + qr) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("spread examples") {
    CHECK(spread(set_1d({0.0, 1.0, 10.0})) == 10.0);
    CHECK(spread(set_1d({0.0, 5.0})) == 1.0);
    // diameter d(a,c), minimum pair d(b,d) = sqrt(0.53)
    CHECK(spread(hausmet::testing::quad_set()) ==
          Approx(4.962120666553159).epsilon(1e-12));
}

TEST_CASE("spread error cases") {
    CHECK_THROWS_AS(spread(set_1d({3.0})), InputError);
    CHECK_THROWS_AS(spread(set_1d({1.0, 1.0, 2.0})), InputError);
}

TEST_CASE("validate accepts distinct finite points") {
    CHECK_NOTHROW(validate(PointSet::from_rows({{0.0, 0.0}, {1.0, 1.0}},
                                               MetricKind::L2)));
}

TEST_CASE("validate reports the first violation with its index") {
    const PointSet dup =
        PointSet::from_rows({{0.0, 0.0}, {0.0, 0.0}}, MetricKind::L2);
    CHECK_THROWS_WITH(validate(dup),
                      Catch::Matchers::ContainsSubstring("index 1"));
    const PointSet empty;
    CHECK_THROWS_AS(validate(empty), InputError);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate(set_1d({0.0, inf})), InputError);
}

TEST_CASE("from_rows rejects ragged rows") {
    CHECK_THROWS_AS(PointSet::from_rows({{0.0, 1.0}, {2.0}}, MetricKind::L2),
                    InputError);
}

TEST_CASE("counter counts exactly the instrumented evaluations") {
    std::mt19937_64 rng(7);
    const PointSet set = random_set(rng, 20, 3);
    DistanceCounter counter;
    std::uint64_t expected = 0;
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            set.dist(i, j, &counter);
            ++expected;
        }
    }
    CHECK(counter.calls == expected);
}
