#pragma once

#include "altroute/graph.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace altroute {

enum class Direction { Forward, Backward };

/// Optional restrictions and tie-break hints for a single Dijkstra run.
/// Empty spans mean "no restriction".
struct SearchOptions {
    std::span<const std::uint8_t> blocked_edges;
    std::span<const std::uint8_t> blocked_nodes;
    /// Among parents that give the same distance, a higher preference wins
    /// before the smaller edge id does.
    std::span<const std::uint8_t> edge_preference;
    /// Stop as soon as this node is settled.
    NodeId stop_at = kNoNode;
    /// Do not settle nodes farther than this.
    Weight radius = kInfinity;
};

/// Result of a single-source search. For a backward tree, dist(v) is the
/// distance from v to the root and parent_edge(v) is the first edge of that
/// route.
class ShortestPathTree {
  public:
    ShortestPathTree(NodeId root, Direction direction, std::vector<Weight> dist,
                     std::vector<EdgeId> parent_edge)
        : root_(root), direction_(direction), dist_(std::move(dist)), parent_(std::move(parent_edge)) {}

    NodeId root() const noexcept { return root_; }
    Direction direction() const noexcept { return direction_; }
    const std::vector<Weight>& dist() const noexcept { return dist_; }
    Weight distance(NodeId v) const { return dist_[v]; }
    bool reached(NodeId v) const { return dist_[v] != kInfinity; }
    EdgeId parent_edge(NodeId v) const { return parent_[v]; }

    bool is_tree_edge(const RoadGraph& graph, EdgeId e) const {
        return direction_ == Direction::Forward ? parent_[graph.target(e)] == e
                                                : parent_[graph.source(e)] == e;
    }

    /// Edges of the tree route between the root and `v`, in travel order
    /// (root to v when forward, v to root when backward). Empty if unreached.
    std::vector<EdgeId> route(const RoadGraph& graph, NodeId v) const;

  private:
    NodeId root_;
    Direction direction_;
    std::vector<Weight> dist_;
    std::vector<EdgeId> parent_;
};

/// Plain Dijkstra over the overlay's effective weights. The queue is ordered
/// by (distance, node id); among equal-distance parents the higher
/// preference, then the smaller edge id, is kept.
ShortestPathTree dijkstra(const WeightOverlay& weights, NodeId root, Direction direction,
                          const SearchOptions& options = {});

/// Dijkstra under an unmodified weight function.
ShortestPathTree dijkstra(const RoadGraph& graph, NodeId root, Direction direction, WeightFn f = 0);

/// Throws NoRoute if t is unreachable. s == t gives the empty path.
Path shortest_path(const WeightOverlay& weights, NodeId s, NodeId t, const SearchOptions& options = {});
Path shortest_path(const RoadGraph& graph, NodeId s, NodeId t, WeightFn f = 0);

/// Multi-source search ignoring edge direction, settling nodes with distance
/// < radius. Returns kInfinity for everything else.
std::vector<Weight> undirected_ball(const RoadGraph& graph, WeightFn f, std::span<const NodeId> sources,
                                    Weight radius);

} // namespace altroute
