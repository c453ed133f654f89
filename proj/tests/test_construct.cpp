#include <catch2/catch_amalgamated.hpp>

#include "rbt/construct.hpp"
#include "rbt/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using rbt::BigInt;
using rbt::ColoredTournament;
using rbt::DerivedHypergraph;
using rbt::RPattern;

namespace {

// Exhaustive maximum independent set over all 2^n vertex subsets.
long long alpha_exhaustive(const DerivedHypergraph& g) {
    REQUIRE(g.n() <= 22);
    const long long n = g.n();
    std::vector<std::uint64_t> edge_masks;
    for (const auto& edge : g.edges()) {
        std::uint64_t mask = 0;
        for (long long v : edge) mask |= 1ULL << v;
        edge_masks.push_back(mask);
    }
    long long best = 0;
    for (std::uint64_t subset = 0; subset < (1ULL << n); ++subset) {
        bool independent = true;
        for (std::uint64_t mask : edge_masks)
            if ((mask & ~subset) == 0) {
                independent = false;
                break;
            }
        if (independent)
            best = std::max<long long>(best, __builtin_popcountll(subset));
    }
    return best;
}

}  // namespace

TEST_CASE("blow-up achieves g", "[construct]") {
    const RPattern r4 = RPattern::transitive(4);
    for (long long s : {0LL, 3LL, 4LL, 5LL, 8LL, 13LL, 16LL}) {
        CAPTURE(s);
        const auto built = rbt::extremal_tournament(4, s, r4);
        CHECK(rbt::count_copies(built.tournament, r4) == rbt::g(4, s));
    }
    // a non-transitive pattern gives the same count
    const RPattern rr = RPattern::random(4, 5150);
    CHECK(rbt::count_copies(rbt::extremal_tournament(4, 11, rr).tournament, rr) ==
          rbt::g(4, 11));
    const RPattern r5 = RPattern::transitive(5);
    CHECK(rbt::count_copies(rbt::extremal_tournament(5, 12, r5).tournament, r5) ==
          rbt::g(5, 12));
    CHECK_THROWS_AS(rbt::extremal_tournament(5, 8, r4), std::domain_error);
}

TEST_CASE("construction trace", "[construct]") {
    const RPattern r = RPattern::transitive(4);
    const auto built = rbt::extremal_tournament(4, 16, r);
    REQUIRE_FALSE(built.trace.nodes.empty());
    CHECK(built.trace.nodes.front().size == 16);
    for (const auto& node : built.trace.nodes) {
        CHECK(node.size >= 4);  // leaves (< k vertices) are not recorded
        CHECK(std::accumulate(node.split.begin(), node.split.end(), 0LL) ==
              node.size);
        CHECK(node.split.front() - node.split.back() <= 1);  // equitable
        CHECK(std::is_sorted(node.split.rbegin(), node.split.rend()));
    }
}

TEST_CASE("random tournament determinism and distribution", "[construct]") {
    const ColoredTournament empty = rbt::random_tournament(0, 4, 1);
    CHECK(empty.n() == 0);

    const ColoredTournament a = rbt::random_tournament(30, 4, 99);
    const ColoredTournament b = rbt::random_tournament(30, 4, 99);
    CHECK(rbt::to_text(a) == rbt::to_text(b));
    const ColoredTournament c = rbt::random_tournament(30, 4, 100);
    CHECK_FALSE(a == c);

    // each of the 12 (orientation, color) states lands near 1/12:
    // ~10^4 pairs, tolerance 3 binomial sigmas
    const long long n = 145;  // C(145,2) = 10440 pairs
    const ColoredTournament t = rbt::random_tournament(n, 4, 777);
    std::vector<long long> state_counts(12, 0);
    for (long long x = 0; x < n; ++x)
        for (long long y = x + 1; y < n; ++y) {
            const int state = 2 * t.color(x, y) + (t.forward(x, y) ? 1 : 0);
            ++state_counts[state];
        }
    const double pairs = static_cast<double>(n) * (n - 1) / 2;
    const double expected = pairs / 12.0;
    const double sigma = std::sqrt(pairs * (1.0 / 12) * (11.0 / 12));
    for (int state = 0; state < 12; ++state) {
        CAPTURE(state, state_counts[state], expected);
        CHECK(std::abs(state_counts[state] - expected) <= 3 * sigma);
    }
}

TEST_CASE("derived hypergraph", "[construct]") {
    const RPattern r = RPattern::transitive(4);
    const ColoredTournament blowup = rbt::extremal_tournament(4, 8, r).tournament;
    const DerivedHypergraph g = rbt::derived_hypergraph(blowup, r);
    CHECK(g.edge_count() == 16);
    CHECK(g.edge_count() == rbt::count_copies(blowup, r));
    // every edge re-validates as a copy
    for (const auto& edge : g.edges())
        CHECK(rbt::detect_copy(blowup, r, edge).has_value());

    ColoredTournament mono(6, 4);
    for (long long x = 0; x < 6; ++x)
        for (long long y = x + 1; y < 6; ++y) mono.set_pair(x, y, true, 0);
    CHECK(rbt::derived_hypergraph(mono, r).edge_count() == 0);

    // random hosts at this size almost never contain copies; the count is
    // still a valid edge count
    const DerivedHypergraph sparse =
        rbt::derived_hypergraph(rbt::random_tournament(20, 4, 3), r);
    CHECK(sparse.edge_count() >= 0);
    CHECK(sparse.edge_count() <= 4845);  // C(20,4)
}

TEST_CASE("hypergraph serialization round trips", "[construct]") {
    const RPattern r = RPattern::transitive(4);
    const DerivedHypergraph g =
        rbt::derived_hypergraph(rbt::extremal_tournament(4, 9, r).tournament, r);
    const DerivedHypergraph g2 = rbt::hypergraph_from_text(rbt::to_text(g));
    CHECK(g2.edges() == g.edges());
    CHECK(rbt::to_text(g2) == rbt::to_text(g));
    const DerivedHypergraph g3 = rbt::hypergraph_from_json(rbt::to_json(g));
    CHECK(g3.edges() == g.edges());
}

TEST_CASE("independence exact", "[construct]") {
    // no edges: alpha = n
    const DerivedHypergraph empty(9, 4);
    const auto free_all = rbt::independence_number_exact(empty);
    CHECK(free_all.alpha == 9);

    // a single edge on 4 vertices: alpha = 3
    const DerivedHypergraph single =
        DerivedHypergraph::from_edges(4, 4, {{0, 1, 2, 3}});
    CHECK(rbt::independence_number_exact(single).alpha == 3);

    // blow-up on 16 vertices vs exhaustive subset check
    const RPattern r = RPattern::transitive(4);
    const DerivedHypergraph dense =
        rbt::derived_hypergraph(rbt::extremal_tournament(4, 16, r).tournament, r);
    CHECK(dense.edge_count() == 260);
    const auto exact = rbt::independence_number_exact(dense);
    CHECK(exact.alpha == alpha_exhaustive(dense));
    CHECK(dense.independent(exact.witness));

    // refusal above the cap names the cap
    const DerivedHypergraph big(100, 4);
    try {
        rbt::independence_number_exact(big);
        FAIL("expected a refusal");
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("80") != std::string::npos);
    }
    CHECK(rbt::independence_number_exact(big, 128).alpha == 100);
}

TEST_CASE("independence exact matches exhaustion on seeded instances", "[construct]") {
    // k = 3 patterns make derived hypergraphs dense enough to be interesting
    const RPattern r3 = RPattern::transitive(3);
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
        const ColoredTournament t = rbt::random_tournament(15, 3, seed);
        const DerivedHypergraph g = rbt::derived_hypergraph(t, r3);
        CAPTURE(seed, g.edge_count());
        CHECK(rbt::independence_number_exact(g).alpha == alpha_exhaustive(g));
    }
}

TEST_CASE("independence is monotone under edge deletion", "[construct]") {
    const RPattern r3 = RPattern::transitive(3);
    const ColoredTournament t = rbt::random_tournament(14, 3, 31);
    const DerivedHypergraph g = rbt::derived_hypergraph(t, r3);
    REQUIRE(g.edge_count() >= 3);
    const long long alpha_full = rbt::independence_number_exact(g).alpha;
    rbt::Rng rng(5);
    auto edges = g.edges();
    for (int trial = 0; trial < 3; ++trial) {
        auto subset = edges;
        subset.erase(subset.begin() +
                     static_cast<long long>(rng.bounded(subset.size())));
        const DerivedHypergraph smaller =
            DerivedHypergraph::from_edges(g.n(), g.k(), subset);
        CHECK(rbt::independence_number_exact(smaller).alpha >= alpha_full);
    }
}

TEST_CASE("independence Monte Carlo", "[construct]") {
    const DerivedHypergraph empty(40, 4);
    const auto all_free = rbt::independence_mc(empty, 10, 2000, 7);
    CHECK(all_free.estimate == 1.0);
    CHECK(all_free.hits == 2000);

    // t < k: no edge can fit inside the sample
    const RPattern r = RPattern::transitive(4);
    const DerivedHypergraph g =
        rbt::derived_hypergraph(rbt::extremal_tournament(4, 12, r).tournament, r);
    const auto tiny = rbt::independence_mc(g, 3, 500, 7);
    CHECK(tiny.estimate == 1.0);

    CHECK_THROWS_AS(rbt::independence_mc(g, 13, 10, 7), std::domain_error);

    // replication: two seeds agree within combined 95% intervals
    const RPattern r3 = RPattern::transitive(3);
    const DerivedHypergraph h =
        rbt::derived_hypergraph(rbt::random_tournament(40, 3, 11), r3);
    const auto est_a = rbt::independence_mc(h, 12, 4000, 100);
    const auto est_b = rbt::independence_mc(h, 12, 4000, 200);
    CHECK(est_a.ci_low <= est_b.ci_high);
    CHECK(est_b.ci_low <= est_a.ci_high);
    // interval actually brackets the estimate
    CHECK(est_a.ci_low <= est_a.estimate);
    CHECK(est_a.estimate <= est_a.ci_high);
    // determinism
    const auto est_c = rbt::independence_mc(h, 12, 4000, 100);
    CHECK(est_a.hits == est_c.hits);
}

TEST_CASE("independence Monte Carlo replication at scale", "[construct]") {
    const rbt::RPattern r = rbt::RPattern::transitive(4);
    const DerivedHypergraph g =
        rbt::derived_hypergraph(rbt::random_tournament(200, 4, 404), r);
    const auto est_a = rbt::independence_mc(g, 60, 2000, 1);
    const auto est_b = rbt::independence_mc(g, 60, 2000, 2);
    CHECK(est_a.ci_low <= est_b.ci_high);
    CHECK(est_b.ci_low <= est_a.ci_high);
}
