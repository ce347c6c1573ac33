#include "support.hpp"

#include "altroute/methods.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>

using namespace testing;

namespace {

constexpr double kUnbounded = std::numeric_limits<double>::infinity();

// s=0 a=1 b=2 t=3 c=4 d=5
RoadGraph plateau_example() {
    return graph_of(6, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 4, 2}, {4, 5, 1}, {5, 3, 2}});
}

std::vector<std::vector<Weight>> cost_vectors(const RoadGraph& g, const std::vector<Candidate>& cs,
                                              const std::vector<WeightFn>& fs) {
    std::vector<std::vector<Weight>> out;
    for (const auto& c : cs) {
        std::vector<Weight> v;
        for (WeightFn f : fs) v.push_back(path_weight(g, c.path.edges, f));
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("method names round trip") {
    for (auto m : {Method::Plateau, Method::Disjoint, Method::Yen, Method::Pareto, Method::Penalty})
        CHECK(method_from_string(to_string(m)) == m);
    CHECK_THROWS_AS(method_from_string("dijkstra"), Error);
}

TEST_CASE("plateau hand example") {
    const auto g = plateau_example();
    const auto cs = plateau_candidates(WeightOverlay(g), 0, 3);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].rank_key == 0);
    CHECK(cs[0].path.edges == std::vector<EdgeId>{0, 1, 2});
    CHECK(cs[1].rank_key == 4);
    CHECK(cs[1].path.weight == 5);
    CHECK(cs[1].path.edges == std::vector<EdgeId>{3, 4, 5});
}

TEST_CASE("plateau on a single path graph") {
    const auto g = graph_of(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
    const auto cs = plateau_candidates(WeightOverlay(g), 0, 3);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].rank_key == 0);
}

TEST_CASE("plateau first candidate is the shortest path on random graphs") {
    std::mt19937_64 rng(4);
    for (int round = 0; round < 60; ++round) {
        const auto g = round % 2 ? random_graph(rng, 30, 90, 6) : generate_grid(7, 7, rng(), 4);
        const NodeId t = g.node_count() - 1;
        const auto cs = plateau_candidates(WeightOverlay(g), 0, t);
        REQUIRE_FALSE(cs.empty());
        CHECK(cs[0].rank_key == 0);
        CHECK(cs[0].path.weight == shortest_path(g, 0, t).weight);
        for (std::size_t i = 1; i < cs.size(); ++i) {
            CHECK(cs[i].rank_key > 0);
            CHECK(is_simple(g, cs[i].path));
            CHECK(cs[i].path.weight == path_weight(g, cs[i].path.edges));
        }
    }
}

TEST_CASE("plateau candidate limit and partitions") {
    const auto g = generate_grid(10, 10, 5, 4);
    PlateauConfig cfg;
    cfg.max_candidates = 3;
    CHECK(plateau_candidates(WeightOverlay(g), 0, 99, cfg).size() <= 3);
    cfg.max_candidates = 50;
    const auto plain = plateau_candidates(WeightOverlay(g), 0, 99, cfg);
    cfg.partitions = 3;
    const auto parts = plateau_candidates(WeightOverlay(g), 0, 99, cfg);
    CHECK(parts[0].path == plain[0].path);
    for (const auto& c : parts) {
        CHECK(c.rank_key >= 0);
        CHECK(is_simple(g, c.path));
    }
}

TEST_CASE("disjoint on the diamond returns both arms") {
    const auto g = diamond();
    const auto cs = disjoint_candidates(WeightOverlay(g), 0, 3, 10);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].path.edges == std::vector<EdgeId>{0, 1});
    CHECK(cs[1].path.edges == std::vector<EdgeId>{2, 3});
}

TEST_CASE("disjoint with a single edge into t gives one path") {
    const auto g = graph_of(5, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}, {3, 4, 1}});
    CHECK(disjoint_candidates(WeightOverlay(g), 0, 4, 10).size() == 1);
    CHECK_THROWS_AS(disjoint_candidates(WeightOverlay(g), 4, 0, 10), Error);
}

TEST_CASE("disjoint candidate count equals max flow on corner queries") {
    for (std::uint32_t size : {3u, 4u, 6u}) {
        const auto g = unit_grid(size, size);
        const NodeId t = size * size - 1;
        const auto cs = disjoint_candidates(WeightOverlay(g), 0, t, 100);
        CHECK(static_cast<int>(cs.size()) == unit_max_flow(g, 0, t));
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = i + 1; j < cs.size(); ++j) {
                std::set<EdgeId> a(cs[i].path.edges.begin(), cs[i].path.edges.end());
                for (EdgeId e : cs[j].path.edges) CHECK_FALSE(a.count(e));
            }
    }
}

TEST_CASE("yen basics") {
    const auto g = diamond();
    const auto one = yen_candidates(WeightOverlay(g), 0, 3, 1, kUnbounded);
    REQUIRE(one.size() == 1);
    CHECK(one[0].path == shortest_path(g, 0, 3));
    CHECK(yen_candidates(WeightOverlay(g), 0, 3, 3, kUnbounded).size() == 2);
}

TEST_CASE("yen matches brute force enumeration") {
    std::mt19937_64 rng(77);
    for (int round = 0; round < 40; ++round) {
        const auto g = random_graph(rng, 10, 26, 9);
        std::vector<Weight> brute;
        for (const auto& p : all_simple_paths(g, 0, 9)) brute.push_back(path_weight(g, p));
        std::sort(brute.begin(), brute.end());
        if (brute.size() > 20) brute.resize(20);
        const auto cs = yen_candidates(WeightOverlay(g), 0, 9, 20, kUnbounded);
        std::vector<Weight> got;
        std::set<std::vector<EdgeId>> distinct;
        for (const auto& c : cs) {
            got.push_back(c.path.weight);
            CHECK(is_simple(g, c.path));
            distinct.insert(c.path.edges);
        }
        CHECK(got == brute);
        CHECK(distinct.size() == cs.size());
    }
}

TEST_CASE("yen stops at the stretch bound") {
    std::mt19937_64 rng(78);
    const auto g = generate_grid(6, 6, 3, 4);
    const Weight d = shortest_path(g, 0, 35).weight;
    const auto cs = yen_candidates(WeightOverlay(g), 0, 35, 500, 0.1);
    CHECK_FALSE(cs.empty());
    for (const auto& c : cs) CHECK(c.path.weight * 10 <= d * 11);
    for (std::size_t i = 1; i < cs.size(); ++i) CHECK(cs[i - 1].path.weight <= cs[i].path.weight);
}

TEST_CASE("tightened domination rules") {
    ParetoConfig cfg;
    const Weight a[] = {10, 10}, b[] = {11, 11}, c[] = {12, 5}, e[] = {10, 10};
    CHECK(tightened_dominates(a, b, cfg));
    CHECK_FALSE(tightened_dominates(a, c, cfg));
    CHECK_FALSE(tightened_dominates(a, e, cfg));
    cfg.epsilon = 0.2;
    CHECK(tightened_dominates(a, c, cfg));
    cfg.epsilon = 0.25;
    CHECK_FALSE(tightened_dominates(a, c, cfg));
    cfg.epsilon.reset();
    // other-criteria ratio 5/10 against length ratio 10/(gamma*12)
    cfg.gamma = 2.0;
    CHECK(tightened_dominates(a, c, cfg));
    cfg.gamma = 1.0;
    CHECK_FALSE(tightened_dominates(a, c, cfg));
    CHECK_FALSE(tightened_dominates(c, a, cfg));
}

TEST_CASE("pareto with a duplicated weight collapses to the shortest path") {
    std::mt19937_64 rng(5);
    const auto base = random_graph(rng, 10, 30, 9);
    const auto g = base.with_weight_function("copy", std::vector<Weight>(base.weights(0).begin(), base.weights(0).end()));
    ParetoConfig cfg;
    cfg.criteria = {"main", "copy"};
    const auto res = pareto_candidates(g, 0, 9, cfg);
    REQUIRE(res.candidates.size() == 1);
    CHECK(res.candidates[0].path.weight == shortest_path(g, 0, 9).weight);
}

TEST_CASE("pareto without tightening equals the brute force front on a hand graph") {
    // s=0 t=5; three routes with trade-offs, two dominated ones
    std::vector<Arc> arcs{{0, 1}, {1, 5}, {0, 2}, {2, 5}, {0, 3}, {3, 5}, {0, 4}, {4, 5}, {1, 2}};
    std::vector<Weight> time{2, 2, 3, 3, 5, 5, 4, 4, 1};
    std::vector<Weight> cost{5, 5, 3, 3, 1, 1, 6, 6, 1};
    const RoadGraph g(6, arcs, {"time", "cost"}, {time, cost});
    ParetoConfig cfg;
    cfg.criteria = {"time", "cost"};
    const auto res = pareto_candidates(g, 0, 5, cfg);
    CHECK_FALSE(res.label_cap_exceeded);
    CHECK(cost_vectors(g, res.candidates, {0, 1}) == brute_pareto(g, 0, 5, {0, 1}));
    CHECK(res.candidates.size() == 3);
}

TEST_CASE("pareto front on random graphs and epsilon monotonicity") {
    std::mt19937_64 rng(13);
    for (int round = 0; round < 30; ++round) {
        const auto g = random_graph(rng, 9, 24, 12, 2);
        ParetoConfig cfg;
        cfg.criteria = {"main", "w1"};
        const auto res = pareto_candidates(g, 0, 8, cfg);
        CHECK(cost_vectors(g, res.candidates, {0, 1}) == brute_pareto(g, 0, 8, {0, 1}));
        cfg.epsilon = 0.1;
        const auto tight = pareto_candidates(g, 0, 8, cfg);
        CHECK(tight.candidates.size() <= res.candidates.size());
        CHECK(tight.candidates.front().path.weight == shortest_path(g, 0, 8).weight);
        // no survivor dominates another under the rules in force
        for (const auto& x : tight.candidates)
            for (const auto& y : tight.candidates) {
                if (&x == &y) continue;
                const Weight cx[] = {path_weight(g, x.path.edges, 0), path_weight(g, x.path.edges, 1)};
                const Weight cy[] = {path_weight(g, y.path.edges, 0), path_weight(g, y.path.edges, 1)};
                CHECK_FALSE(tightened_dominates(cx, cy, cfg));
            }
    }
}

TEST_CASE("pareto label cap") {
    const auto g = generate_grid(8, 8, 2, 5);
    const auto overlap = shortest_path_overlap_weights(g, 0, 63);
    const auto g2 = g.with_weight_function("overlap", overlap);
    ParetoConfig cfg;
    cfg.criteria = {"main", "overlap"};
    cfg.label_cap = 50;
    const auto res = pareto_candidates(g2, 0, 63, cfg);
    CHECK(res.label_cap_exceeded);
    REQUIRE_FALSE(res.candidates.empty());
    CHECK(res.candidates.front().path.weight == shortest_path(g, 0, 63).weight);
}

TEST_CASE("overlap weights mark the shortest path") {
    const auto g = diamond(1, 1, 2, 2);
    CHECK(shortest_path_overlap_weights(g, 0, 3) == std::vector<Weight>{1, 1, 0, 0});
}
