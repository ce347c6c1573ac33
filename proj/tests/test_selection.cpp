#include "support.hpp"

#include "altroute/methods.hpp"
#include "altroute/metrics.hpp"
#include "altroute/selection.hpp"

#include <doctest.h>

using namespace testing;

namespace {

Candidate candidate(const RoadGraph& g, NodeId s, NodeId t, std::vector<EdgeId> edges) {
    auto p = make_path(g, s, t, std::move(edges));
    return Candidate{p, p.weight, Method::Yen, "test"};
}

Weight base_of(const AlternativeGraph& ag, const RoadGraph& g) { return shortest_path(g, ag.source, ag.target).weight; }

void check_selection_invariants(const RoadGraph& g, NodeId s, NodeId t, const std::vector<Candidate>& cs,
                                const ObjectiveConfig& cfg) {
    const auto sel = greedy_select(g, s, t, cs, cfg);
    const Weight base = shortest_path(g, s, t).weight;
    CHECK(validate(sel.ag).empty());
    CHECK(sel.evaluation.feasible);
    CHECK(sel.evaluation.report.decision_edges <= cfg.max_decision_edges);
    CHECK(cs[sel.chosen.front()].path.weight == base);
    for (std::size_t i = 1; i < sel.scores.size(); ++i) CHECK(sel.scores[i] > sel.scores[i - 1]);

    const auto refined = refine(sel.ag, cfg, base);
    CHECK(validate(refined).empty());
    const auto ev = evaluate(refined, cfg, base);
    CHECK(ev.feasible);
    CHECK(ev.score >= 0); // score of the shortest path alone
    CHECK(refined == reduce(refined));
    CHECK(refine(refined, cfg, base) == refined);
}

} // namespace

TEST_CASE("only the shortest path") {
    const auto g = diamond(1, 1, 2, 2);
    const std::vector<Candidate> cs{candidate(g, 0, 3, {0, 1})};
    const auto sel = greedy_select(g, 0, 3, cs, ObjectiveConfig{});
    CHECK(sel.ag == full_ag(g, 0, 3, {{0, 1}}));
    CHECK(sel.evaluation.score == 0);
    CHECK(sel.chosen == std::vector<std::size_t>{0});
}

TEST_CASE("no candidates") {
    const auto g = diamond();
    CHECK_THROWS_AS(greedy_select(g, 0, 3, std::vector<Candidate>{}, ObjectiveConfig{}), Error);
}

TEST_CASE("diamond arms are both selected") {
    const auto g = diamond();
    const std::vector<Candidate> cs{candidate(g, 0, 3, {2, 3}), candidate(g, 0, 3, {0, 1})};
    const auto sel = greedy_select(g, 0, 3, cs, ObjectiveConfig{});
    CHECK(sel.scores == std::vector<Rational>{0, 1});
    CHECK(sel.ag.edges.size() == 4);
    // equal weights and rank keys keep input order
    CHECK(sel.chosen == std::vector<std::size_t>{0, 1});
}

TEST_CASE("near-duplicate candidates stop at the decision-edge cap") {
    // a spine 0..13 of unit edges; candidate i swaps spine edge i for a parallel edge
    std::vector<std::tuple<NodeId, NodeId, Weight>> arcs;
    for (NodeId v = 0; v < 13; ++v) arcs.push_back({v, v + 1, 10});
    for (NodeId v = 0; v < 13; ++v) arcs.push_back({v, v + 1, 10});
    const auto g = graph_of(14, arcs);
    std::vector<Candidate> cs;
    std::vector<EdgeId> spine(13);
    std::iota(spine.begin(), spine.end(), 0);
    cs.push_back(candidate(g, 0, 13, spine));
    for (EdgeId i = 0; i < 12; ++i) {
        auto edges = spine;
        edges[i] = 13 + i;
        cs.push_back(candidate(g, 0, 13, edges));
    }
    ObjectiveConfig cfg;
    const auto sel = greedy_select(g, 0, 13, cs, cfg);
    CHECK(sel.evaluation.feasible);
    CHECK(sel.evaluation.report.decision_edges <= 10);
    CHECK(sel.chosen.size() > 1);
    // every candidate left out would break the cap
    std::vector<Path> chosen;
    for (auto i : sel.chosen) chosen.push_back(cs[i].path);
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (std::find(sel.chosen.begin(), sel.chosen.end(), i) != sel.chosen.end()) continue;
        auto more = chosen;
        more.push_back(cs[i].path);
        CHECK(decision_edges(ag_from_paths(g, more, 0, 13)) > cfg.max_decision_edges);
    }
    check_selection_invariants(g, 0, 13, cs, cfg);
}

TEST_CASE("refine keeps an optimal diamond") {
    const auto g = diamond();
    const auto ag = reduce(full_ag(g, 0, 3, {{0, 1}, {2, 3}}));
    CHECK(refine(ag, ObjectiveConfig{}, 2) == ag);
}

TEST_CASE("refine drops a hop that breaks the stretch bound") {
    // diamond arms of length 20 plus a direct s-t edge of 26 (stretch 1.3)
    const auto g = graph_of(4, {{0, 1, 10}, {1, 3, 10}, {0, 2, 10}, {2, 3, 10}, {0, 3, 26}});
    const auto ag = full_ag(g, 0, 3, {{0, 1}, {2, 3}, {4}});
    const ObjectiveConfig cfg;
    const auto before = evaluate(ag, cfg, 20);
    CHECK_FALSE(before.feasible);
    CHECK(before.score > 1); // the hop alone would raise the score
    const auto refined = refine(ag, cfg, 20);
    const auto after = evaluate(refined, cfg, 20);
    CHECK(after.feasible);
    CHECK(after.report.decision_edges == before.report.decision_edges - 1);
    CHECK(refined == reduce(full_ag(g, 0, 3, {{0, 1}, {2, 3}})));
}

TEST_CASE("refine enforces the decision-edge cap") {
    std::vector<std::tuple<NodeId, NodeId, Weight>> arcs;
    std::vector<std::vector<EdgeId>> routes;
    for (EdgeId i = 0; i < 13; ++i) {
        arcs.push_back({0, 1, 10 + i % 2});
        routes.push_back({i});
    }
    const auto g = graph_of(2, arcs);
    const auto ag = full_ag(g, 0, 1, routes);
    CHECK(decision_edges(ag) == 12);
    ObjectiveConfig cfg;
    const auto refined = refine(ag, cfg, 10);
    CHECK(decision_edges(refined) <= 10);
    CHECK(evaluate(refined, cfg, 10).feasible);
}

TEST_CASE("refine falls back to the best single route") {
    // two arms where the second one only hurts under a heavy average-distance weight
    const auto g = diamond(1, 1, 1, 1);
    ObjectiveConfig cfg;
    cfg.alpha = 100;
    const auto ag = full_ag(g, 0, 3, {{0, 1}, {2, 3}});
    const auto refined = refine(ag, cfg, 2);
    CHECK(evaluate(refined, cfg, 2).score >= evaluate(reduce(ag), cfg, 2).score);
}

TEST_CASE("selection and refinement invariants on random candidate sets") {
    std::mt19937_64 rng(61);
    for (int round = 0; round < 12; ++round) {
        const auto g = generate_grid(10, 10, rng(), 4);
        const NodeId s = static_cast<NodeId>(rng() % 100);
        NodeId t = static_cast<NodeId>(rng() % 100);
        if (t == s) t = (s + 55) % 100;
        ObjectiveConfig cfg;
        cfg.max_decision_edges = 2 + round % 5;
        const WeightOverlay w(g);
        check_selection_invariants(g, s, t, plateau_candidates(w, s, t), cfg);
        check_selection_invariants(g, s, t, yen_candidates(w, s, t, 15, cfg.max_stretch), cfg);
        check_selection_invariants(g, s, t, disjoint_candidates(w, s, t, 5), cfg);
    }
}
