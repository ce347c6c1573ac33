#include "altroute/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

namespace altroute {

using nlohmann::json;

namespace {

[[noreturn]] void fail_at(ErrorCode code, const std::string& file, std::size_t line, const std::string& what) {
    throw Error(code, file + " line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

std::int64_t parse_int(const std::string& tok, ErrorCode code, const std::string& file, std::size_t line) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        fail_at(code, file, line, "expected an integer, got '" + tok + "'");
    }
    if (used != tok.size()) fail_at(code, file, line, "expected an integer, got '" + tok + "'");
    return v;
}

double parse_double(const std::string& tok, const std::string& file, std::size_t line) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        fail_at(ErrorCode::MalformedInput, file, line, "expected a number, got '" + tok + "'");
    }
    if (used != tok.size()) fail_at(ErrorCode::MalformedInput, file, line, "expected a number, got '" + tok + "'");
    return v;
}

std::vector<Coordinate> parse_coordinates(std::istream& co, NodeId n) {
    const std::string file = "coordinate file";
    std::vector<Coordinate> coords(n);
    std::vector<bool> seen(n, false);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(co, line)) {
        ++lineno;
        const auto tok = split(line);
        if (tok.empty() || tok[0] == "c" || tok[0] == "p") continue;
        if (tok[0] != "v" || tok.size() != 4) fail_at(ErrorCode::MalformedInput, file, lineno, "expected 'v <id> <x> <y>'");
        const auto id = parse_int(tok[1], ErrorCode::MalformedInput, file, lineno);
        if (id < 1 || id > static_cast<std::int64_t>(n))
            fail_at(ErrorCode::IdOutOfRange, file, lineno, "node id " + tok[1] + " outside [1, " + std::to_string(n) + "]");
        coords[id - 1] = {parse_double(tok[2], file, lineno), parse_double(tok[3], file, lineno)};
        seen[id - 1] = true;
    }
    for (NodeId v = 0; v < n; ++v)
        if (!seen[v]) fail_at(ErrorCode::MalformedInput, file, lineno, "no coordinate for node " + std::to_string(v + 1));
    return coords;
}

std::uint64_t draw(std::mt19937_64& rng, Weight perturb) {
    return rng() % static_cast<std::uint64_t>(2 * perturb + 1);
}

Weight perturbed(std::mt19937_64& rng, Weight perturb) {
    if (perturb == 0) return 10;
    return 10 - perturb + static_cast<Weight>(draw(rng, perturb));
}

void check_perturb(Weight perturb) {
    if (perturb < 0 || perturb > 9)
        throw Error(ErrorCode::InvalidArgument, "perturbation must lie in [0, 9] so that weights stay >= 1");
}

json exact(const Rational& r) { return json{{"exact", r.get_str()}, {"value", r.get_d()}}; }

Rational read_exact(const json& j) {
    Rational r;
    if (r.set_str(j.at("exact").get<std::string>(), 10) != 0)
        throw Error(ErrorCode::MalformedInput, "bad rational '" + j.at("exact").get<std::string>() + "'");
    r.canonicalize();
    return r;
}

void require_keys(const json& j, const std::set<std::string>& required, const std::set<std::string>& optional,
                  const std::string& where) {
    if (!j.is_object()) throw Error(ErrorCode::MalformedInput, where + " must be an object");
    for (const auto& [key, value] : j.items())
        if (!required.count(key) && !optional.count(key))
            throw Error(ErrorCode::MalformedInput, "unknown field '" + key + "' in " + where);
    for (const auto& key : required)
        if (!j.contains(key)) throw Error(ErrorCode::MalformedInput, "missing field '" + key + "' in " + where);
}

NodeId read_node(const json& j) {
    const auto v = j.get<std::int64_t>();
    if (v < 1 || v > static_cast<std::int64_t>(kNoNode)) throw Error(ErrorCode::IdOutOfRange, "node id " + std::to_string(v));
    return static_cast<NodeId>(v - 1);
}

std::string fmt_pos(const Rational& r) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(3) << r.get_d();
    return out.str();
}

} // namespace

RoadGraph parse_dimacs(std::istream& gr, std::istream* co) {
    const std::string file = "graph file";
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    NodeId n = 0;
    std::int64_t m = 0;
    std::vector<Arc> arcs;
    std::vector<Weight> weights;
    while (std::getline(gr, line)) {
        ++lineno;
        const auto tok = split(line);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (have_header) fail_at(ErrorCode::MalformedHeader, file, lineno, "second problem line");
            if (tok.size() != 4 || tok[1] != "sp") fail_at(ErrorCode::MalformedHeader, file, lineno, "expected 'p sp <n> <m>'");
            const auto nodes = parse_int(tok[2], ErrorCode::MalformedHeader, file, lineno);
            m = parse_int(tok[3], ErrorCode::MalformedHeader, file, lineno);
            if (nodes < 0 || nodes >= static_cast<std::int64_t>(kNoNode) || m < 0)
                fail_at(ErrorCode::MalformedHeader, file, lineno, "node and arc counts must be nonnegative");
            n = static_cast<NodeId>(nodes);
            arcs.reserve(static_cast<std::size_t>(m));
            weights.reserve(static_cast<std::size_t>(m));
            have_header = true;
            continue;
        }
        if (tok[0] != "a") fail_at(ErrorCode::MalformedInput, file, lineno, "unknown line type '" + tok[0] + "'");
        if (!have_header) fail_at(ErrorCode::MalformedHeader, file, lineno, "arc before the problem line");
        if (tok.size() != 4) fail_at(ErrorCode::MalformedInput, file, lineno, "expected 'a <u> <v> <w>'");
        const auto u = parse_int(tok[1], ErrorCode::MalformedInput, file, lineno);
        const auto v = parse_int(tok[2], ErrorCode::MalformedInput, file, lineno);
        const auto w = parse_int(tok[3], ErrorCode::MalformedInput, file, lineno);
        for (auto id : {u, v})
            if (id < 1 || id > static_cast<std::int64_t>(n))
                fail_at(ErrorCode::IdOutOfRange, file, lineno, "node id " + std::to_string(id) + " outside [1, " + std::to_string(n) + "]");
        if (w < 0) fail_at(ErrorCode::NegativeWeight, file, lineno, "negative weight " + tok[3]);
        arcs.push_back({static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1)});
        weights.push_back(w);
    }
    if (!have_header) fail_at(ErrorCode::MalformedHeader, file, lineno, "missing 'p sp <n> <m>' line");
    if (static_cast<std::int64_t>(arcs.size()) != m)
        fail_at(ErrorCode::ArcCountMismatch, file, lineno,
                "header announces " + std::to_string(m) + " arcs, found " + std::to_string(arcs.size()));
    std::optional<std::vector<Coordinate>> coords;
    if (co) coords = parse_coordinates(*co, n);
    return RoadGraph(n, std::move(arcs), {"main"}, {std::move(weights)}, std::move(coords));
}

RoadGraph load_dimacs(const std::filesystem::path& gr, const std::optional<std::filesystem::path>& co) {
    std::ifstream gin(gr);
    if (!gin) throw Error(ErrorCode::Io, "cannot open " + gr.string());
    if (!co) return parse_dimacs(gin);
    std::ifstream cin(*co);
    if (!cin) throw Error(ErrorCode::Io, "cannot open " + co->string());
    return parse_dimacs(gin, &cin);
}

void write_dimacs(const RoadGraph& graph, std::ostream& gr, std::ostream* co) {
    gr << "c generated by altroute\n";
    gr << "p sp " << graph.node_count() << ' ' << graph.edge_count() << '\n';
    for (EdgeId e = 0; e < graph.edge_count(); ++e)
        gr << "a " << graph.source(e) + 1 << ' ' << graph.target(e) + 1 << ' ' << graph.weight(e) << '\n';
    if (co) {
        if (!graph.has_coordinates()) throw Error(ErrorCode::MissingCoordinates, "graph has no coordinates");
        *co << "c generated by altroute\n";
        *co << "p aux sp co " << graph.node_count() << '\n';
        *co << std::setprecision(17);
        for (NodeId v = 0; v < graph.node_count(); ++v)
            *co << "v " << v + 1 << ' ' << graph.coordinate(v).x << ' ' << graph.coordinate(v).y << '\n';
    }
}

RoadGraph generate_grid(std::uint32_t width, std::uint32_t height, std::uint64_t seed, Weight perturb) {
    if (width < 2 || height < 2) throw Error(ErrorCode::InvalidArgument, "grid width and height must be >= 2");
    check_perturb(perturb);
    std::mt19937_64 rng(seed);
    std::vector<Arc> arcs;
    std::vector<Weight> weights;
    std::vector<Coordinate> coords;
    auto id = [width](std::uint32_t x, std::uint32_t y) { return static_cast<NodeId>(y * width + x); };
    auto link = [&](NodeId a, NodeId b) {
        arcs.push_back({a, b});
        weights.push_back(perturbed(rng, perturb));
        arcs.push_back({b, a});
        weights.push_back(perturbed(rng, perturb));
    };
    for (std::uint32_t y = 0; y < height; ++y)
        for (std::uint32_t x = 0; x < width; ++x) {
            coords.push_back({static_cast<double>(x), static_cast<double>(y)});
            if (x + 1 < width) link(id(x, y), id(x + 1, y));
            if (y + 1 < height) link(id(x, y), id(x, y + 1));
        }
    return RoadGraph(width * height, std::move(arcs), {"main"}, {std::move(weights)}, std::move(coords));
}

RoadGraph generate_ring(std::uint32_t spokes, std::uint32_t rings, std::uint64_t seed, Weight perturb) {
    if (spokes < 3 || rings < 1) throw Error(ErrorCode::InvalidArgument, "ring needs >= 3 spokes and >= 1 ring");
    check_perturb(perturb);
    std::mt19937_64 rng(seed);
    std::vector<Arc> arcs;
    std::vector<Weight> weights;
    std::vector<Coordinate> coords;
    auto id = [spokes](std::uint32_t ring, std::uint32_t i) { return static_cast<NodeId>(ring * spokes + i); };
    auto link = [&](NodeId a, NodeId b) {
        arcs.push_back({a, b});
        weights.push_back(perturbed(rng, perturb));
        arcs.push_back({b, a});
        weights.push_back(perturbed(rng, perturb));
    };
    const double pi = std::acos(-1.0);
    for (std::uint32_t r = 0; r < rings; ++r)
        for (std::uint32_t i = 0; i < spokes; ++i) {
            const double angle = 2.0 * pi * i / spokes;
            const double radius = 10.0 * (r + 1);
            coords.push_back({radius * std::cos(angle), radius * std::sin(angle)});
            link(id(r, i), id(r, (i + 1) % spokes));
            if (r + 1 < rings) link(id(r, i), id(r + 1, i));
        }
    return RoadGraph(spokes * rings, std::move(arcs), {"main"}, {std::move(weights)}, std::move(coords));
}

AGDocument make_document(const RoadGraph& graph, const AlternativeGraph& ag, const MetricsReport& metrics,
                         std::string method, nlohmann::json config) {
    AGDocument doc{ag, {}, metrics, std::move(method), std::move(config)};
    if (graph.has_coordinates()) {
        for (NodeId v : ag.nodes) doc.coordinates[v] = graph.coordinate(v);
        for (const auto& e : ag.edges)
            for (NodeId v : e.underlying.nodes) doc.coordinates[v] = graph.coordinate(v);
    }
    return doc;
}

json to_json(const MetricsReport& r) {
    return json{
        {"base_distance", r.base_distance},
        {"total_distance", exact(r.total_distance)},
        {"average_distance", exact(r.average_distance)},
        {"decision_edges", r.decision_edges},
        {"variance", exact(r.variance)},
        {"cov_squared", exact(r.cov_squared)},
        {"coefficient_of_variation", r.coefficient_of_variation},
        {"simple_path_count", r.simple_path_count},
    };
}

json to_json(const AGDocument& doc) {
    json nodes = json::array();
    for (NodeId v : doc.ag.nodes) nodes.push_back(v + 1);
    json edges = json::array();
    for (const auto& e : doc.ag.edges) {
        json path = json::array(), road = json::array();
        for (NodeId v : e.underlying.nodes) path.push_back(v + 1);
        for (EdgeId id : e.underlying.edges) road.push_back(id + 1);
        edges.push_back(json{{"from", e.from + 1}, {"to", e.to + 1}, {"weight", e.weight},
                             {"path", path}, {"arcs", road}, {"steps", e.underlying.steps}});
    }
    json coords = json::array();
    for (const auto& [v, c] : doc.coordinates) coords.push_back(json{{"id", v + 1}, {"x", c.x}, {"y", c.y}});
    return json{
        {"schema_version", kSchemaVersion},
        {"source", doc.ag.source + 1},
        {"target", doc.ag.target + 1},
        {"main_weight", doc.ag.main_weight},
        {"nodes", nodes},
        {"edges", edges},
        {"coordinates", coords},
        {"metrics", to_json(doc.metrics)},
        {"method", json{{"name", doc.method}, {"config", doc.config}}},
    };
}

AGDocument document_from_json(const json& j) {
    try {
        require_keys(j, {"schema_version", "source", "target", "main_weight", "nodes", "edges", "metrics", "method"},
                     {"coordinates"}, "document");
        if (j.at("schema_version").get<int>() != kSchemaVersion)
            throw Error(ErrorCode::MalformedInput, "unsupported schema version " + j.at("schema_version").dump());
        AGDocument doc;
        doc.ag.source = read_node(j.at("source"));
        doc.ag.target = read_node(j.at("target"));
        doc.ag.main_weight = j.at("main_weight").get<std::string>();
        for (const auto& v : j.at("nodes")) doc.ag.nodes.push_back(read_node(v));
        for (const auto& e : j.at("edges")) {
            require_keys(e, {"from", "to", "weight", "path", "arcs", "steps"}, {}, "edge");
            AGEdge edge;
            edge.from = read_node(e.at("from"));
            edge.to = read_node(e.at("to"));
            edge.weight = e.at("weight").get<Weight>();
            for (const auto& v : e.at("path")) edge.underlying.nodes.push_back(read_node(v));
            for (const auto& a : e.at("arcs")) {
                const auto id = a.get<std::int64_t>();
                if (id < 1) throw Error(ErrorCode::IdOutOfRange, "arc id " + std::to_string(id));
                edge.underlying.edges.push_back(static_cast<EdgeId>(id - 1));
            }
            edge.underlying.steps = e.at("steps").get<std::vector<Weight>>();
            doc.ag.edges.push_back(std::move(edge));
        }
        if (j.contains("coordinates"))
            for (const auto& c : j.at("coordinates")) {
                require_keys(c, {"id", "x", "y"}, {}, "coordinate");
                doc.coordinates[read_node(c.at("id"))] = {c.at("x").get<double>(), c.at("y").get<double>()};
            }
        const auto& m = j.at("metrics");
        require_keys(m, {"base_distance", "total_distance", "average_distance", "decision_edges", "variance",
                         "cov_squared", "coefficient_of_variation", "simple_path_count"},
                     {}, "metrics");
        for (const char* key : {"total_distance", "average_distance", "variance", "cov_squared"})
            require_keys(m.at(key), {"exact", "value"}, {}, std::string("metrics.") + key);
        doc.metrics.base_distance = m.at("base_distance").get<Weight>();
        doc.metrics.total_distance = read_exact(m.at("total_distance"));
        doc.metrics.average_distance = read_exact(m.at("average_distance"));
        doc.metrics.decision_edges = m.at("decision_edges").get<std::int64_t>();
        doc.metrics.variance = read_exact(m.at("variance"));
        doc.metrics.cov_squared = read_exact(m.at("cov_squared"));
        doc.metrics.coefficient_of_variation = m.at("coefficient_of_variation").get<double>();
        doc.metrics.simple_path_count = m.at("simple_path_count").get<std::uint64_t>();
        const auto& method = j.at("method");
        require_keys(method, {"name", "config"}, {}, "method");
        doc.method = method.at("name").get<std::string>();
        doc.config = method.at("config");
        return doc;
    } catch (const json::exception& err) {
        throw Error(ErrorCode::MalformedInput, err.what());
    }
}

std::string to_json_string(const AGDocument& doc) { return to_json(doc).dump(2) + "\n"; }

AGDocument parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& err) {
        throw Error(ErrorCode::MalformedInput, err.what());
    }
    return document_from_json(j);
}

AGDocument load_document(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

std::string to_dot(const AGDocument& doc) {
    const auto reduced = reduce(doc.ag);
    const auto dist = ag_distances(reduced);
    auto position = [&](NodeId u) {
        const Weight a = dist.source_to(u), b = dist.to_target_from(u);
        if (a == kInfinity || b == kInfinity || a + b == 0) return Rational(0);
        return Rational(a, a + b);
    };
    std::ostringstream out;
    out << "digraph alternative_graph {\n  rankdir=LR;\n";
    for (NodeId v : reduced.nodes) {
        out << "  n" << v + 1 << " [label=\"" << v + 1 << "\"";
        if (v == reduced.source || v == reduced.target) out << ", shape=doublecircle";
        out << "];\n";
    }
    for (const auto& e : reduced.edges)
        out << "  n" << e.from + 1 << " -> n" << e.to + 1 << " [label=\"" << e.weight << " / "
            << fmt_pos(position(e.from)) << "-" << fmt_pos(position(e.to)) << "\"];\n";
    out << "}\n";
    return out.str();
}

std::string to_geojson(const AGDocument& doc) {
    const auto reduced = reduce(doc.ag);
    const auto dist = ag_distances(reduced);
    auto position = [&](NodeId u) {
        const Weight a = dist.source_to(u), b = dist.to_target_from(u);
        if (a == kInfinity || b == kInfinity || a + b == 0) return 0.0;
        return static_cast<double>(a) / static_cast<double>(a + b);
    };
    json features = json::array();
    for (const auto& e : reduced.edges) {
        json line = json::array();
        for (NodeId v : e.underlying.nodes) {
            auto it = doc.coordinates.find(v);
            if (it == doc.coordinates.end())
                throw Error(ErrorCode::MissingCoordinates, "no coordinate for node " + std::to_string(v + 1));
            line.push_back(json::array({it->second.x, it->second.y}));
        }
        features.push_back(json{
            {"type", "Feature"},
            {"geometry", json{{"type", "LineString"}, {"coordinates", line}}},
            {"properties", json{{"from", e.from + 1}, {"to", e.to + 1}, {"weight", e.weight},
                                {"pos_from", position(e.from)}, {"pos_to", position(e.to)}}},
        });
    }
    json fc{{"type", "FeatureCollection"}, {"features", features}, {"metrics", to_json(doc.metrics)},
            {"method", doc.method}};
    return fc.dump(2) + "\n";
}

ExportFormat export_format_from_string(const std::string& name) {
    if (name == "json") return ExportFormat::Json;
    if (name == "dot") return ExportFormat::Dot;
    if (name == "geojson") return ExportFormat::GeoJson;
    throw Error(ErrorCode::InvalidArgument, "unknown export format '" + name + "'");
}

std::string render(const AGDocument& doc, ExportFormat format) {
    switch (format) {
    case ExportFormat::Json: return to_json_string(doc);
    case ExportFormat::Dot: return to_dot(doc);
    case ExportFormat::GeoJson: return to_geojson(doc);
    }
    throw Error(ErrorCode::InvalidArgument, "export format");
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

void export_document(const AGDocument& doc, ExportFormat format, const std::filesystem::path& path) {
    write_text_file(path, render(doc, format));
}

} // namespace altroute
