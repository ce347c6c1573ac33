#pragma once

#include "altroute/io.hpp"
#include "altroute/methods.hpp"
#include "altroute/metrics.hpp"
#include "altroute/penalty.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace altroute {

struct RunConfig {
    ObjectiveConfig objective;
    PenaltyConfig penalty;
    PlateauConfig plateau;
    std::size_t disjoint_max = 10;
    std::size_t yen_k = 20;
    std::optional<double> pareto_epsilon = 0.1;
    std::optional<double> pareto_gamma;
    std::size_t pareto_label_cap = 200'000;
    /// Weight functions for the multi-criteria search. Empty: the main weight
    /// plus the derived shortest-path overlap.
    std::vector<std::string> pareto_criteria;
    /// Penalty only: start from the graph another method produced.
    std::optional<Method> seed_method;
    bool refine = true;
    void check() const;
};

struct MethodRun {
    Method method = Method::Plateau;
    AlternativeGraph ag; // reduced
    Evaluation evaluation;
    Weight base_distance = 0;
    std::size_t candidate_count = 0;
    nlohmann::json config;
};

/// Echo of everything that influenced a run of `method`.
nlohmann::json config_to_json(Method method, const RunConfig& cfg);

/// Candidates (or penalty iterations), greedy assembly, then refinement.
/// Throws NoRoute when t is unreachable.
MethodRun run_method(const RoadGraph& graph, NodeId s, NodeId t, Method method, const RunConfig& cfg);

AGDocument to_document(const RoadGraph& graph, const MethodRun& run);

/// One entry per method, all sharing the same objective. Output is
/// deterministic for identical inputs.
nlohmann::json compare(const RoadGraph& graph, NodeId s, NodeId t, const std::vector<Method>& methods,
                       const RunConfig& cfg);

} // namespace altroute
