#include "altroute/pipeline.hpp"

#include "altroute/selection.hpp"

#include <spdlog/spdlog.h>

namespace altroute {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

RoadGraph pareto_graph(const RoadGraph& graph, NodeId s, NodeId t, std::vector<std::string>& criteria) {
    if (!criteria.empty()) return graph;
    if (graph.weight_count() >= 2) {
        criteria = graph.weight_names();
        return graph;
    }
    criteria = {graph.weight_name(0), "overlap"};
    return graph.with_weight_function("overlap", shortest_path_overlap_weights(graph, s, t));
}

std::vector<Candidate> candidates_for(const RoadGraph& graph, NodeId s, NodeId t, Method method, const RunConfig& cfg) {
    const WeightOverlay weights(graph);
    switch (method) {
    case Method::Plateau: return plateau_candidates(weights, s, t, cfg.plateau);
    case Method::Disjoint: return disjoint_candidates(weights, s, t, cfg.disjoint_max);
    case Method::Yen: return yen_candidates(weights, s, t, cfg.yen_k, cfg.objective.max_stretch);
    case Method::Pareto: {
        ParetoConfig pc;
        pc.criteria = cfg.pareto_criteria;
        const RoadGraph extended = pareto_graph(graph, s, t, pc.criteria);
        pc.epsilon = cfg.pareto_epsilon;
        pc.gamma = cfg.pareto_gamma;
        pc.max_stretch = cfg.objective.max_stretch;
        pc.label_cap = cfg.pareto_label_cap;
        auto result = pareto_candidates(extended, s, t, pc);
        if (result.label_cap_exceeded)
            spdlog::warn("pareto search stopped at the label cap after {} labels", result.labels_created);
        // Paths refer to edge ids, which the extended graph shares with the original.
        return std::move(result.candidates);
    }
    case Method::Penalty: break;
    }
    throw Error(ErrorCode::InvalidArgument, "method has no candidate generator");
}

AlternativeGraph select(const RoadGraph& graph, NodeId s, NodeId t, std::span<const Candidate> candidates,
                        const RunConfig& cfg) {
    return greedy_select(graph, s, t, candidates, cfg.objective).ag;
}

} // namespace

void RunConfig::check() const {
    objective.check();
    penalty.check();
    if (yen_k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
    if (disjoint_max == 0) throw Error(ErrorCode::InvalidArgument, "disjoint candidate limit must be positive");
    if (plateau.max_candidates == 0 || plateau.partitions == 0)
        throw Error(ErrorCode::InvalidArgument, "plateau limits must be positive");
    if (seed_method == Method::Penalty) throw Error(ErrorCode::InvalidArgument, "penalty cannot seed itself");
}

json config_to_json(Method method, const RunConfig& cfg) {
    json j;
    j["objective"] = json{{"alpha", cfg.objective.alpha},
                          {"max_decision_edges", cfg.objective.max_decision_edges},
                          {"max_stretch", cfg.objective.max_stretch},
                          {"max_cov", optional_number(cfg.objective.max_cov)}};
    j["refine"] = cfg.refine;
    switch (method) {
    case Method::Plateau:
        j["max_candidates"] = cfg.plateau.max_candidates;
        j["partitions"] = cfg.plateau.partitions;
        break;
    case Method::Disjoint: j["max_candidates"] = cfg.disjoint_max; break;
    case Method::Yen: j["k"] = cfg.yen_k; break;
    case Method::Pareto:
        j["epsilon"] = optional_number(cfg.pareto_epsilon);
        j["gamma"] = optional_number(cfg.pareto_gamma);
        j["label_cap"] = cfg.pareto_label_cap;
        j["criteria"] = cfg.pareto_criteria;
        break;
    case Method::Penalty: {
        const auto& p = cfg.penalty;
        j["factor"] = p.factor;
        j["rejoin"] = p.rejoin_fraction;
        j["max_increases_per_edge"] = p.max_increases_per_edge;
        j["increase_damping"] = p.increase_damping;
        j["max_iterations"] = p.max_iterations;
        j["tube_radius"] = p.tube_radius;
        j["tube_decay"] = p.tube_decay;
        j["cov_penalty_scale"] = p.cov_penalty_scale;
        j["min_new_fraction"] = p.min_new_fraction;
        j["seed_method"] = cfg.seed_method ? json(to_string(*cfg.seed_method)) : json(nullptr);
        break;
    }
    }
    return j;
}

MethodRun run_method(const RoadGraph& graph, NodeId s, NodeId t, Method method, const RunConfig& cfg) {
    cfg.check();
    if (s >= graph.node_count() || t >= graph.node_count())
        throw Error(ErrorCode::IdOutOfRange, "source or target outside the graph");
    MethodRun run;
    run.method = method;
    run.config = config_to_json(method, cfg);
    run.base_distance = shortest_path(graph, s, t).weight;

    AlternativeGraph ag;
    if (method == Method::Penalty) {
        std::vector<Candidate> candidates;
        std::optional<AlternativeGraph> seed;
        if (cfg.seed_method) {
            candidates = candidates_for(graph, s, t, *cfg.seed_method, cfg);
            seed = select(graph, s, t, candidates, cfg);
        }
        PenaltyConfig pc = cfg.penalty;
        pc.max_stretch = cfg.objective.max_stretch;
        const auto result = penalty_alternatives(graph, s, t, pc, seed ? &*seed : nullptr);
        for (std::size_t i = 0; i < result.accepted.size(); ++i)
            candidates.push_back(Candidate{result.accepted[i], result.accepted[i].weight, Method::Penalty,
                                           "penalty route " + std::to_string(i)});
        run.candidate_count = result.accepted.size();
        ag = select(graph, s, t, candidates, cfg);
    } else {
        const auto candidates = candidates_for(graph, s, t, method, cfg);
        run.candidate_count = candidates.size();
        ag = select(graph, s, t, candidates, cfg);
    }
    if (cfg.refine) ag = refine(ag, cfg.objective, run.base_distance);
    run.ag = reduce(ag);
    canonicalize(run.ag);
    run.evaluation = evaluate(run.ag, cfg.objective, run.base_distance);
    spdlog::info("{}: {} candidates, {} reduced edges, score {}", to_string(method), run.candidate_count,
                 run.ag.edges.size(), run.evaluation.score.get_d());
    return run;
}

AGDocument to_document(const RoadGraph& graph, const MethodRun& run) {
    return make_document(graph, run.ag, run.evaluation.report, to_string(run.method), run.config);
}

json compare(const RoadGraph& graph, NodeId s, NodeId t, const std::vector<Method>& methods, const RunConfig& cfg) {
    if (methods.empty()) throw Error(ErrorCode::InvalidArgument, "no methods to compare");
    json runs = json::array();
    for (Method m : methods) {
        const auto run = run_method(graph, s, t, m, cfg);
        runs.push_back(json{{"method", to_string(m)},
                            {"config", run.config},
                            {"candidates", run.candidate_count},
                            {"reduced_edges", run.ag.edges.size()},
                            {"score", json{{"exact", run.evaluation.score.get_str()},
                                           {"value", run.evaluation.score.get_d()}}},
                            {"feasible", run.evaluation.feasible},
                            {"metrics", to_json(run.evaluation.report)}});
    }
    return json{{"schema_version", kSchemaVersion},
                {"source", s + 1},
                {"target", t + 1},
                {"base_distance", shortest_path(graph, s, t).weight},
                {"runs", runs}};
}

} // namespace altroute
