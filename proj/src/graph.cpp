#include "altroute/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace altroute {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoRoute: return "NoRoute";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::MixedEndpoints: return "MixedEndpoints";
    case ErrorCode::NodeNotInAG: return "NodeNotInAG";
    case ErrorCode::ZeroBaseDistance: return "ZeroBaseDistance";
    case ErrorCode::NoCandidates: return "NoCandidates";
    case ErrorCode::LabelCapExceeded: return "LabelCapExceeded";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::ArcCountMismatch: return "ArcCountMismatch";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::IdOutOfRange: return "IdOutOfRange";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::MissingCoordinates: return "MissingCoordinates";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

RoadGraph::RoadGraph(NodeId node_count, std::vector<Arc> arcs, std::vector<std::string> weight_names,
                     std::vector<std::vector<Weight>> weights,
                     std::optional<std::vector<Coordinate>> coordinates)
    : node_count_(node_count), arcs_(std::move(arcs)), weight_names_(std::move(weight_names)),
      weights_(std::move(weights)), coordinates_(std::move(coordinates)) {
    if (weight_names_.empty() || weight_names_.size() != weights_.size())
        throw Error(ErrorCode::InvalidArgument, "one weight array per weight function name required");
    std::unordered_set<std::string> seen;
    for (const auto& name : weight_names_)
        if (!seen.insert(name).second)
            throw Error(ErrorCode::InvalidArgument, "duplicate weight function '" + name + "'");
    for (const auto& arc : arcs_)
        if (arc.source >= node_count_ || arc.target >= node_count_)
            throw Error(ErrorCode::IdOutOfRange, "arc endpoint outside [0, node_count)");
    for (std::size_t f = 0; f < weights_.size(); ++f) {
        if (weights_[f].size() != arcs_.size())
            throw Error(ErrorCode::InvalidArgument,
                        "weight function '" + weight_names_[f] + "' has wrong length");
        for (Weight w : weights_[f])
            if (w < 0) throw Error(ErrorCode::NegativeWeight, "weight function '" + weight_names_[f] + "'");
    }
    if (coordinates_ && coordinates_->size() != node_count_)
        throw Error(ErrorCode::InvalidArgument, "coordinate count differs from node count");
    build_adjacency();
}

RoadGraph RoadGraph::from_weighted_arcs(NodeId node_count,
                                        const std::vector<std::tuple<NodeId, NodeId, Weight>>& arcs) {
    std::vector<Arc> plain;
    std::vector<Weight> weights;
    plain.reserve(arcs.size());
    weights.reserve(arcs.size());
    for (const auto& [u, v, w] : arcs) {
        plain.push_back({u, v});
        weights.push_back(w);
    }
    return RoadGraph(node_count, std::move(plain), {"main"}, {std::move(weights)});
}

void RoadGraph::build_adjacency() {
    out_offsets_.assign(node_count_ + 1, 0);
    in_offsets_.assign(node_count_ + 1, 0);
    for (const auto& arc : arcs_) {
        ++out_offsets_[arc.source + 1];
        ++in_offsets_[arc.target + 1];
    }
    std::partial_sum(out_offsets_.begin(), out_offsets_.end(), out_offsets_.begin());
    std::partial_sum(in_offsets_.begin(), in_offsets_.end(), in_offsets_.begin());
    out_edges_.resize(arcs_.size());
    in_edges_.resize(arcs_.size());
    std::vector<std::size_t> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
    std::vector<std::size_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
    // Edge ids are visited in increasing order, so every adjacency list is sorted.
    for (EdgeId e = 0; e < arcs_.size(); ++e) {
        out_edges_[out_fill[arcs_[e].source]++] = e;
        in_edges_[in_fill[arcs_[e].target]++] = e;
    }
}

WeightFn RoadGraph::weight_index(std::string_view name) const {
    for (WeightFn f = 0; f < weight_names_.size(); ++f)
        if (weight_names_[f] == name) return f;
    throw Error(ErrorCode::InvalidArgument, "unknown weight function '" + std::string(name) + "'");
}

RoadGraph RoadGraph::with_weight_function(std::string name, std::vector<Weight> weights) const {
    auto names = weight_names_;
    auto all = weights_;
    names.push_back(std::move(name));
    all.push_back(std::move(weights));
    return RoadGraph(node_count_, arcs_, std::move(names), std::move(all), coordinates_);
}

RoadGraph RoadGraph::with_coordinates(std::vector<Coordinate> coordinates) const {
    return RoadGraph(node_count_, arcs_, weight_names_, weights_, std::move(coordinates));
}

std::int64_t mul_div_round(std::int64_t a, std::int64_t b, std::int64_t d) {
    const __int128 product = static_cast<__int128>(a) * b;
    const __int128 rounded = (product + d / 2) / d;
    if (rounded > std::numeric_limits<std::int64_t>::max())
        throw Error(ErrorCode::InvalidArgument, "weight overflow in overlay arithmetic");
    return static_cast<std::int64_t>(rounded);
}

std::int64_t to_fixed_factor(double factor) {
    if (!std::isfinite(factor) || factor < 1.0)
        throw Error(ErrorCode::InvalidArgument, "penalty factors must be finite and >= 1");
    return std::llround(factor * static_cast<double>(WeightOverlay::kFactorUnit));
}

WeightOverlay::WeightOverlay(const RoadGraph& graph, WeightFn base, Weight resolution)
    : graph_(&graph), base_(base), resolution_(resolution) {
    if (base >= graph.weight_count()) throw Error(ErrorCode::InvalidArgument, "weight function index");
    if (resolution < 1) throw Error(ErrorCode::InvalidArgument, "overlay resolution must be >= 1");
}

Weight WeightOverlay::effective(EdgeId e) const {
    const Weight base = graph_->weight(e, base_) * resolution_;
    if (factors_.empty() && additive_.empty()) return base;
    Weight w = base;
    if (auto it = factors_.find(e); it != factors_.end()) w = mul_div_round(base, it->second, kFactorUnit);
    if (auto it = additive_.find(e); it != additive_.end()) w += it->second;
    return w;
}

std::int64_t WeightOverlay::factor(EdgeId e) const {
    auto it = factors_.find(e);
    return it == factors_.end() ? kFactorUnit : it->second;
}

Weight WeightOverlay::additive(EdgeId e) const {
    auto it = additive_.find(e);
    return it == additive_.end() ? 0 : it->second;
}

void WeightOverlay::multiply(EdgeId e, std::int64_t factor) {
    if (factor < kFactorUnit) throw Error(ErrorCode::InvalidArgument, "overlay factor below 1");
    if (factor == kFactorUnit) return;
    auto [it, inserted] = factors_.try_emplace(e, kFactorUnit);
    it->second = mul_div_round(it->second, factor, kFactorUnit);
}

void WeightOverlay::add(EdgeId e, Weight amount) {
    if (amount == 0) return;
    const Weight total = additive(e) + amount;
    if (total < 0) throw Error(ErrorCode::InvalidArgument, "negative additive overlay");
    if (total == 0)
        additive_.erase(e);
    else
        additive_[e] = total;
}

std::vector<NodeId> Path::nodes(const RoadGraph& graph) const {
    std::vector<NodeId> out;
    out.reserve(edges.size() + 1);
    out.push_back(source);
    for (EdgeId e : edges) out.push_back(graph.target(e));
    return out;
}

Weight path_weight(const RoadGraph& graph, std::span<const EdgeId> edges, WeightFn f) {
    Weight sum = 0;
    for (EdgeId e : edges) sum += graph.weight(e, f);
    return sum;
}

Weight path_weight(const WeightOverlay& weights, std::span<const EdgeId> edges) {
    Weight sum = 0;
    for (EdgeId e : edges) sum += weights.effective(e);
    return sum;
}

Path make_path(const RoadGraph& graph, NodeId source, NodeId target, std::vector<EdgeId> edges, WeightFn f) {
    NodeId at = source;
    for (EdgeId e : edges) {
        if (e >= graph.edge_count() || graph.source(e) != at)
            throw Error(ErrorCode::InvalidPath, "edge sequence is not connected");
        at = graph.target(e);
    }
    if (at != target) throw Error(ErrorCode::InvalidPath, "edge sequence does not end at the target");
    Path p{source, target, std::move(edges), 0};
    p.weight = path_weight(graph, p.edges, f);
    return p;
}

bool is_simple(const RoadGraph& graph, const Path& path) {
    auto nodes = path.nodes(graph);
    std::sort(nodes.begin(), nodes.end());
    return std::adjacent_find(nodes.begin(), nodes.end()) == nodes.end();
}

} // namespace altroute
