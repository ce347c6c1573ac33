#pragma once

#include "altroute/alternative_graph.hpp"
#include "altroute/graph.hpp"
#include "altroute/metrics.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace altroute {

// DIMACS shortest-path format. Node ids are 1-based in files and 0-based in
// memory; arc ids follow the order of the `a` lines.

RoadGraph parse_dimacs(std::istream& gr, std::istream* co = nullptr);
RoadGraph load_dimacs(const std::filesystem::path& gr, const std::optional<std::filesystem::path>& co = std::nullopt);
/// Writes the main weight function, plus coordinates when `co` is given.
void write_dimacs(const RoadGraph& graph, std::ostream& gr, std::ostream* co = nullptr);

/// Bidirected width x height grid, base weight 10 perturbed uniformly within
/// [10 - perturb, 10 + perturb]. Node (x, y) has id y * width + x.
RoadGraph generate_grid(std::uint32_t width, std::uint32_t height, std::uint64_t seed, Weight perturb);

/// `rings` concentric bidirected cycles of `spokes` nodes each, joined by
/// radial edges. Same weight model as the grid.
RoadGraph generate_ring(std::uint32_t spokes, std::uint32_t rings, std::uint64_t seed, Weight perturb);

inline constexpr int kSchemaVersion = 1;

/// Serialized alternative graph with its metrics and the producing method.
struct AGDocument {
    AlternativeGraph ag;
    /// Coordinates of every node on an underlying route, when known.
    std::map<NodeId, Coordinate> coordinates;
    MetricsReport metrics;
    std::string method;
    nlohmann::json config = nlohmann::json::object();

    friend bool operator==(const AGDocument&, const AGDocument&) = default;
};

AGDocument make_document(const RoadGraph& graph, const AlternativeGraph& ag, const MetricsReport& metrics,
                         std::string method, nlohmann::json config = nlohmann::json::object());

nlohmann::json to_json(const AGDocument& doc);
nlohmann::json to_json(const MetricsReport& report);
/// Strict: unknown or missing fields throw MalformedInput.
AGDocument document_from_json(const nlohmann::json& j);

std::string to_json_string(const AGDocument& doc);
AGDocument parse_document(const std::string& text);
AGDocument load_document(const std::filesystem::path& path);

/// Reduced graph with edge labels "weight / pos-span".
std::string to_dot(const AGDocument& doc);
/// One LineString feature per reduced edge. Throws MissingCoordinates.
std::string to_geojson(const AGDocument& doc);

enum class ExportFormat { Json, Dot, GeoJson };
ExportFormat export_format_from_string(const std::string& name);
std::string render(const AGDocument& doc, ExportFormat format);
void export_document(const AGDocument& doc, ExportFormat format, const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace altroute
