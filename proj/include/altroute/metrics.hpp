#pragma once

#include "altroute/alternative_graph.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>

namespace altroute {

using Rational = mpq_class;

/// Shortest distances inside an alternative graph: from its source to every
/// node and from every node to its target.
struct AGDistances {
    std::unordered_map<NodeId, Weight> from_source;
    std::unordered_map<NodeId, Weight> to_target;

    Weight source_to(NodeId u) const;
    Weight to_target_from(NodeId u) const;
};

AGDistances ag_distances(const AlternativeGraph& ag);

/// Relative position d(s,u) / (d(s,u) + d(u,t)) of a node inside the graph.
/// Throws NodeNotInAG.
Rational pos(const AlternativeGraph& ag, NodeId u);

/// Sum over edges of w(e) / (d(s,u) + w(e) + d(v,t)).
Rational total_distance(const AlternativeGraph& ag);

/// Sum of edge weights / (d_G(s,t) * total distance). Throws ZeroBaseDistance.
Rational average_distance(const AlternativeGraph& ag, Weight base_distance);

/// Sum of outdegrees over all nodes but the target, minus one, counted on
/// the reduced form of the graph.
std::int64_t decision_edges(const AlternativeGraph& ag);

/// Integral over [0,1] of (total distance - edges covering x)^2, evaluated
/// exactly on the reduced form of the graph.
Rational variance(const AlternativeGraph& ag);

/// variance / total_distance^2 (the square of the coefficient of variation).
Rational cov_squared(const AlternativeGraph& ag);
double coefficient_of_variation(const AlternativeGraph& ag);

struct MetricsReport {
    Rational total_distance;
    Rational average_distance;
    std::int64_t decision_edges = 0;
    Rational variance;
    Rational cov_squared;
    double coefficient_of_variation = 0.0;
    std::uint64_t simple_path_count = 0;
    Weight base_distance = 0;

    friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

inline constexpr std::uint64_t kDefaultPathCountCap = 1'000'000;

MetricsReport compute_metrics(const AlternativeGraph& ag, Weight base_distance,
                              std::uint64_t path_count_cap = kDefaultPathCountCap);

struct ObjectiveConfig {
    double alpha = 1.0;
    std::int64_t max_decision_edges = 10;
    double max_stretch = 0.25;
    std::optional<double> max_cov;

    void check() const;
};

struct Evaluation {
    Rational score;
    bool feasible = false;
    MetricsReport report;
};

/// total_distance - alpha * average_distance, without the other metrics.
Rational objective_score(const AlternativeGraph& ag, double alpha, Weight base_distance);

/// score = total_distance - alpha * average_distance. Feasible when the
/// decision-edge cap holds, every listed path weight and every edge's best
/// through-route stays within (1 + max_stretch) * base_distance, and the
/// optional CoV cap holds.
Evaluation evaluate(const AlternativeGraph& ag, const ObjectiveConfig& cfg, Weight base_distance,
                    std::span<const Weight> path_weights = {});

/// weight <= (1 + stretch) * base, compared exactly. Infinite stretch always holds.
bool within_stretch(Weight weight, Weight base, double stretch);

/// Number of edges covering a position, on the reduced form of the graph.
/// Helper shared with the balancing penalty.
struct PositionCoverage {
    std::vector<Rational> breakpoints;
    std::vector<std::int64_t> counts; // counts[i] covers (breakpoints[i], breakpoints[i+1])

    std::int64_t count_at(const Rational& x) const;
};

PositionCoverage position_coverage(const AlternativeGraph& ag);

} // namespace altroute
