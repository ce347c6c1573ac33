#pragma once

#include "altroute/types.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace altroute {

struct Coordinate {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

struct Arc {
    NodeId source = 0;
    NodeId target = 0;
};

/// Index of a named weight function inside a RoadGraph. Index 0 is the main one.
using WeightFn = std::size_t;

/// Immutable directed road graph with one or more named nonnegative weight
/// functions. Adjacency is kept in CSR form for both directions; edge ids are
/// the positions in the arc list passed at construction.
class RoadGraph {
  public:
    RoadGraph() = default;

    /// `weights[f][e]` is the weight of edge `e` under weight function `f`.
    RoadGraph(NodeId node_count, std::vector<Arc> arcs, std::vector<std::string> weight_names,
              std::vector<std::vector<Weight>> weights,
              std::optional<std::vector<Coordinate>> coordinates = std::nullopt);

    /// Single weight function named "main".
    static RoadGraph from_weighted_arcs(NodeId node_count,
                                        const std::vector<std::tuple<NodeId, NodeId, Weight>>& arcs);

    NodeId node_count() const noexcept { return node_count_; }
    EdgeId edge_count() const noexcept { return static_cast<EdgeId>(arcs_.size()); }

    NodeId source(EdgeId e) const { return arcs_[e].source; }
    NodeId target(EdgeId e) const { return arcs_[e].target; }
    const std::vector<Arc>& arcs() const noexcept { return arcs_; }

    std::span<const EdgeId> out_edges(NodeId u) const {
        return {out_edges_.data() + out_offsets_[u], out_edges_.data() + out_offsets_[u + 1]};
    }
    std::span<const EdgeId> in_edges(NodeId v) const {
        return {in_edges_.data() + in_offsets_[v], in_edges_.data() + in_offsets_[v + 1]};
    }

    std::size_t weight_count() const noexcept { return weight_names_.size(); }
    const std::string& weight_name(WeightFn f) const { return weight_names_.at(f); }
    const std::vector<std::string>& weight_names() const noexcept { return weight_names_; }
    /// Throws InvalidArgument for unknown names.
    WeightFn weight_index(std::string_view name) const;
    std::span<const Weight> weights(WeightFn f = 0) const { return weights_.at(f); }
    Weight weight(EdgeId e, WeightFn f = 0) const { return weights_[f][e]; }

    bool has_coordinates() const noexcept { return coordinates_.has_value(); }
    const Coordinate& coordinate(NodeId u) const { return coordinates_->at(u); }
    const std::optional<std::vector<Coordinate>>& coordinates() const noexcept { return coordinates_; }

    /// Copy of this graph with an additional weight function appended.
    RoadGraph with_weight_function(std::string name, std::vector<Weight> weights) const;
    RoadGraph with_coordinates(std::vector<Coordinate> coordinates) const;

  private:
    void build_adjacency();

    NodeId node_count_ = 0;
    std::vector<Arc> arcs_;
    std::vector<std::string> weight_names_;
    std::vector<std::vector<Weight>> weights_;
    std::optional<std::vector<Coordinate>> coordinates_;

    std::vector<std::size_t> out_offsets_;
    std::vector<EdgeId> out_edges_;
    std::vector<std::size_t> in_offsets_;
    std::vector<EdgeId> in_edges_;
};

/// Query-local weight state layered over one weight function of a graph.
///
/// effective(e) = round_half_up(base(e) * resolution * factor(e)) + additive(e)
///
/// Factors are fixed-point with kFactorUnit == 1.0 and compose by
/// multiplication. `resolution` scales the base weights so that penalties on
/// small integer weights do not vanish in rounding; effective weights are then
/// expressed in units of 1/resolution.
class WeightOverlay {
  public:
    static constexpr std::int64_t kFactorUnit = 1'000'000;

    explicit WeightOverlay(const RoadGraph& graph, WeightFn base = 0, Weight resolution = 1);

    const RoadGraph& graph() const noexcept { return *graph_; }
    WeightFn base() const noexcept { return base_; }
    Weight resolution() const noexcept { return resolution_; }

    Weight effective(EdgeId e) const;

    /// Fixed-point factor currently applied to `e` (kFactorUnit when untouched).
    std::int64_t factor(EdgeId e) const;
    Weight additive(EdgeId e) const;

    /// Composes `factor` (fixed-point, >= kFactorUnit) into the edge's factor.
    void multiply(EdgeId e, std::int64_t factor);
    /// Adds `amount` (in effective units) to the edge; the running total stays >= 0.
    void add(EdgeId e, Weight amount);

    const std::unordered_map<EdgeId, std::int64_t>& factors() const noexcept { return factors_; }
    const std::unordered_map<EdgeId, Weight>& additives() const noexcept { return additive_; }

  private:
    const RoadGraph* graph_;
    WeightFn base_;
    Weight resolution_;
    std::unordered_map<EdgeId, std::int64_t> factors_;
    std::unordered_map<EdgeId, Weight> additive_;
};

/// Converts a real factor such as 1.4 to WeightOverlay's fixed-point form.
std::int64_t to_fixed_factor(double factor);

/// (a * b) / d rounded half up, with a 128-bit intermediate. All arguments >= 0, d > 0.
std::int64_t mul_div_round(std::int64_t a, std::int64_t b, std::int64_t d);

/// An s-t path as a sequence of edge ids, with its weight under the weight
/// state that produced it.
struct Path {
    NodeId source = kNoNode;
    NodeId target = kNoNode;
    std::vector<EdgeId> edges;
    Weight weight = 0;

    std::vector<NodeId> nodes(const RoadGraph& graph) const;

    friend bool operator==(const Path&, const Path&) = default;
};

/// Sum of the edges' weights under a plain weight function.
Weight path_weight(const RoadGraph& graph, std::span<const EdgeId> edges, WeightFn f = 0);
Weight path_weight(const WeightOverlay& weights, std::span<const EdgeId> edges);

/// Builds a Path from an edge list, checking connectivity. Weight is taken
/// under weight function `f`.
Path make_path(const RoadGraph& graph, NodeId source, NodeId target, std::vector<EdgeId> edges,
               WeightFn f = 0);

/// True when no node repeats along the path.
bool is_simple(const RoadGraph& graph, const Path& path);

} // namespace altroute
