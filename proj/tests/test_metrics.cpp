#include "support.hpp"

#include "altroute/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace testing;

namespace {

// d_H computed with Bellman-Ford over the AG edges, independent of the library.
std::map<NodeId, Weight> ag_bf(const AlternativeGraph& ag, bool backward) {
    std::map<NodeId, Weight> d;
    for (NodeId v : ag.nodes) d[v] = kInfinity;
    d[backward ? ag.target : ag.source] = 0;
    for (std::size_t i = 0; i < ag.nodes.size(); ++i)
        for (const auto& e : ag.edges) {
            const NodeId u = backward ? e.to : e.from, v = backward ? e.from : e.to;
            if (d[u] != kInfinity && d[u] + e.weight < d[v]) d[v] = d[u] + e.weight;
        }
    return d;
}

// Midpoint-rule integral of (TD - count(x))^2 over [0,1] on the reduced graph.
double sampled_variance(const AlternativeGraph& ag, int samples) {
    const auto r = reduce(ag);
    const auto fwd = ag_bf(r, false), bwd = ag_bf(r, true);
    auto position = [&](NodeId u) {
        const double a = static_cast<double>(fwd.at(u)), b = static_cast<double>(bwd.at(u));
        return a + b == 0 ? 0.0 : a / (a + b);
    };
    double td = 0;
    for (const auto& e : r.edges)
        td += static_cast<double>(e.weight) / static_cast<double>(fwd.at(e.from) + e.weight + bwd.at(e.to));
    double sum = 0;
    for (int i = 0; i < samples; ++i) {
        const double x = (i + 0.5) / samples;
        int count = 0;
        for (const auto& e : r.edges) {
            const double lo = std::min(position(e.from), position(e.to));
            const double hi = std::max(position(e.from), position(e.to));
            if (lo <= x && x <= hi) ++count;
        }
        sum += (td - count) * (td - count);
    }
    return sum / samples;
}

std::vector<Rational> all_metrics(const AlternativeGraph& ag, Weight base) {
    return {total_distance(ag), average_distance(ag, base), Rational(decision_edges(ag)), variance(ag),
            cov_squared(ag)};
}

// 0 = s, 1..3 = arm midpoints, 4 = m, 5 = y, 6 = t
RoadGraph three_then_one() {
    return graph_of(7, {{0, 1, 1}, {1, 4, 1}, {0, 2, 1}, {2, 4, 1}, {0, 3, 1}, {3, 4, 1}, {4, 5, 1}, {5, 6, 1}});
}

} // namespace

TEST_CASE("pos") {
    const auto g = diamond();
    const auto ag = full_ag(g, 0, 3, {{0, 1}, {2, 3}});
    CHECK(pos(ag, 0) == 0);
    CHECK(pos(ag, 3) == 1);
    CHECK(pos(ag, 1) == Rational(1, 2));
    CHECK_THROWS_AS(pos(ag, 7), Error);

    const auto chain = graph_of(3, {{0, 1, 1}, {1, 2, 3}});
    const auto c = full_ag(chain, 0, 2, {{0, 1}});
    CHECK(pos(c, 1) == Rational(1, 4));
    const auto fwd = ag_bf(c, false), bwd = ag_bf(c, true);
    CHECK(pos(c, 1) == Rational(fwd.at(1), fwd.at(1) + bwd.at(1)));
}

TEST_CASE("total distance") {
    const auto chain = graph_of(4, {{0, 1, 2}, {1, 2, 5}, {2, 3, 1}});
    CHECK(total_distance(full_ag(chain, 0, 3, {{0, 1, 2}})) == 1);
    CHECK(total_distance(full_ag(diamond(), 0, 3, {{0, 1}, {2, 3}})) == 2);
    CHECK(total_distance(full_ag(diamond(1, 1, 2, 2), 0, 3, {{0, 1}, {2, 3}})) == 2);
    // disjoint paths of very different lengths still count as two
    CHECK(total_distance(full_ag(diamond(1, 1, 40, 3), 0, 3, {{0, 1}, {2, 3}})) == 2);
}

TEST_CASE("k edge-disjoint paths have total distance k") {
    for (std::uint32_t k = 1; k <= 5; ++k) {
        std::vector<std::tuple<NodeId, NodeId, Weight>> arcs;
        std::vector<std::vector<EdgeId>> routes;
        const NodeId t = k + 1;
        for (NodeId i = 0; i < k; ++i) {
            arcs.push_back({0, i + 1, 1 + i});
            arcs.push_back({i + 1, t, 3 * i + 2});
            routes.push_back({2 * i, 2 * i + 1});
        }
        const auto g = graph_of(k + 2, arcs);
        CHECK(total_distance(full_ag(g, 0, t, routes)) == k);
    }
}

TEST_CASE("average distance") {
    const auto chain = graph_of(3, {{0, 1, 2}, {1, 2, 5}});
    CHECK(average_distance(full_ag(chain, 0, 2, {{0, 1}}), 7) == 1);
    CHECK(average_distance(full_ag(diamond(), 0, 3, {{0, 1}, {2, 3}}), 2) == 1);
    CHECK(average_distance(full_ag(diamond(1, 1, 2, 2), 0, 3, {{0, 1}, {2, 3}}), 2) == Rational(3, 2));
    CHECK_THROWS_AS(average_distance(full_ag(diamond(), 0, 3, {{0, 1}}), 0), Error);
}

TEST_CASE("decision edges") {
    const auto chain = graph_of(3, {{0, 1, 2}, {1, 2, 5}});
    CHECK(decision_edges(full_ag(chain, 0, 2, {{0, 1}})) == 0);
    CHECK(decision_edges(full_ag(diamond(), 0, 3, {{0, 1}, {2, 3}})) == 1);
    const auto three = graph_of(2, {{0, 1, 1}, {0, 1, 2}, {0, 1, 3}});
    const auto ag = full_ag(three, 0, 1, {{0}, {1}, {2}});
    CHECK(decision_edges(ag) == 2);
    CHECK(static_cast<std::int64_t>(reduce(ag).edges.size()) - 1 == 2);
}

TEST_CASE("variance of balanced graphs is zero") {
    const auto d = full_ag(diamond(), 0, 3, {{0, 1}, {2, 3}});
    CHECK(variance(d) == 0);
    CHECK(coefficient_of_variation(d) == 0.0);
    const auto chain = graph_of(3, {{0, 1, 2}, {1, 2, 5}});
    CHECK(variance(full_ag(chain, 0, 2, {{0, 1}})) == 0);
}

TEST_CASE("three arms then one arm") {
    const auto g = three_then_one();
    const auto ag = full_ag(g, 0, 6, {{0, 1, 6, 7}, {2, 3, 6, 7}, {4, 5, 6, 7}});
    CHECK(total_distance(ag) == 2);
    // count 3 on [0, 1/2], 1 on [1/2, 1]; mean 2
    CHECK(variance(ag) == 1);
    CHECK(cov_squared(ag) == Rational(1, 4));
    CHECK(coefficient_of_variation(ag) == doctest::Approx(0.5));
    CHECK(std::abs(variance(ag).get_d() - sampled_variance(ag, 10'000)) < 1e-3);
}

TEST_CASE("variance matches numeric integration on random graphs") {
    std::mt19937_64 rng(99);
    const auto g = generate_grid(9, 9, 12, 5);
    double worst = 0;
    for (int round = 0; round < 40; ++round) {
        const auto ag = random_ag(g, rng, 2 + rng() % 4);
        const double err = std::abs(variance(ag).get_d() - sampled_variance(ag, 10'000));
        worst = std::max(worst, err);
        CHECK(err < 1e-3);
    }
    MESSAGE("largest deviation " << worst);
}

TEST_CASE("metrics are unchanged by reduce") {
    std::mt19937_64 rng(41);
    const auto g = generate_grid(12, 12, 3, 6);
    for (int round = 0; round < 60; ++round) {
        const auto ag = random_ag(g, rng, 2 + rng() % 5);
        const Weight base = shortest_path(g, ag.source, ag.target).weight;
        CHECK(all_metrics(ag, base) == all_metrics(reduce(ag), base));
        CHECK(compute_metrics(ag, base) == compute_metrics(reduce(ag), base));
    }
}

TEST_CASE("scaling every weight leaves the metrics unchanged") {
    std::mt19937_64 rng(43);
    const auto g = generate_grid(8, 8, 6, 4);
    for (int round = 0; round < 20; ++round) {
        const auto ag = random_ag(g, rng, 2 + rng() % 4);
        const Weight base = shortest_path(g, ag.source, ag.target).weight;
        for (Weight factor : {2, 7}) {
            auto scaled = ag;
            for (auto& e : scaled.edges) {
                e.weight *= factor;
                for (auto& s : e.underlying.steps) s *= factor;
            }
            CHECK(all_metrics(scaled, base * factor) == all_metrics(ag, base));
        }
    }
}

TEST_CASE("average distance is at least one and equals one on shortest routes only") {
    std::mt19937_64 rng(47);
    const auto g = generate_grid(8, 8, 10, 3);
    for (int round = 0; round < 30; ++round) {
        const auto ag = random_ag(g, rng, 1 + rng() % 4);
        const Weight base = shortest_path(g, ag.source, ag.target).weight;
        const auto avg = average_distance(ag, base);
        CHECK(avg >= 1);
        CHECK(total_distance(ag) >= 1);
        const auto fwd = ag_bf(ag, false), bwd = ag_bf(ag, true);
        bool all_shortest = fwd.at(ag.target) == base;
        for (const auto& e : ag.edges) all_shortest = all_shortest && fwd.at(e.from) + e.weight + bwd.at(e.to) == base;
        CHECK((avg == 1) == all_shortest);
    }
}

TEST_CASE("evaluate") {
    ObjectiveConfig cfg;
    const auto chain = graph_of(3, {{0, 1, 2}, {1, 2, 5}});
    const auto single = evaluate(full_ag(chain, 0, 2, {{0, 1}}), cfg, 7);
    CHECK(single.score == 0);
    CHECK(single.feasible);

    const auto d = evaluate(full_ag(diamond(), 0, 3, {{0, 1}, {2, 3}}), cfg, 2);
    CHECK(d.score == 1);
    CHECK(d.feasible);

    // 12 parallel edges: 11 decision edges
    std::vector<std::tuple<NodeId, NodeId, Weight>> arcs;
    std::vector<std::vector<EdgeId>> routes;
    for (EdgeId i = 0; i < 12; ++i) {
        arcs.push_back({0, 1, 10});
        routes.push_back({i});
    }
    const auto many = evaluate(full_ag(graph_of(2, arcs), 0, 1, routes), cfg, 10);
    CHECK(many.report.decision_edges == 11);
    CHECK(many.score == 11);
    CHECK_FALSE(many.feasible);

    // a detour 60% longer breaks the default stretch bound
    const auto stretched = evaluate(full_ag(diamond(1, 1, 2, 2), 0, 3, {{0, 1}, {2, 3}}), cfg, 2);
    CHECK_FALSE(stretched.feasible);
    ObjectiveConfig loose;
    loose.max_stretch = 1.0;
    CHECK(evaluate(full_ag(diamond(1, 1, 2, 2), 0, 3, {{0, 1}, {2, 3}}), loose, 2).feasible);
    const Weight path_weights[] = {2, 4};
    loose.max_stretch = 0.5;
    CHECK_FALSE(evaluate(full_ag(diamond(1, 1, 2, 2), 0, 3, {{0, 1}}), loose, 2, path_weights).feasible);

    ObjectiveConfig capped;
    capped.max_stretch = 1.0;
    capped.max_cov = 0.4;
    const auto skewed = full_ag(three_then_one(), 0, 6, {{0, 1, 6, 7}, {2, 3, 6, 7}, {4, 5, 6, 7}});
    CHECK_FALSE(evaluate(skewed, capped, 4).feasible);
    capped.max_cov = 0.5;
    CHECK(evaluate(skewed, capped, 4).feasible);
}

TEST_CASE("stretch comparison is exact") {
    CHECK(within_stretch(125, 100, 0.25));
    CHECK_FALSE(within_stretch(126, 100, 0.25));
    CHECK(within_stretch(1'000'000, 1, std::numeric_limits<double>::infinity()));
}

TEST_CASE("objective config rejects negative bounds") {
    ObjectiveConfig cfg;
    cfg.alpha = -1;
    CHECK_THROWS_AS(cfg.check(), Error);
    cfg = {};
    cfg.max_stretch = -0.1;
    CHECK_THROWS_AS(cfg.check(), Error);
    cfg = {};
    cfg.max_decision_edges = -1;
    CHECK_THROWS_AS(cfg.check(), Error);
}
