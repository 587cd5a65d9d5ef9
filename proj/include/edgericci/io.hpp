#pragma once

#include "edgericci/error.hpp"
#include "edgericci/graph.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace edgericci {

/// Decimal rendering with a fixed number of significant digits. Machine
/// formats use 17 (round-trips binary64), text tables use 6.
inline std::string format_number(double x, int significant = 17)
{
    if (!std::isfinite(x))
        return "null";
    if (x == 0.0)
        return "0"; // folds -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant, x);
    return buf;
}

namespace detail {

inline std::string json_token(const nlohmann::json& j, const std::string& where)
{
    if (j.is_string())
        return j.get<std::string>();
    if (j.is_number_integer())
        return std::to_string(j.get<long long>());
    throw Error(ErrorCode::ParseError, where + ": vertex must be a string or integer");
}

inline double json_weight(const nlohmann::json& j, const std::string& where)
{
    if (!j.is_number())
        throw Error(ErrorCode::ParseError, where + ": weight must be a number");
    const double w = j.get<double>();
    WeightedGraph::check_positive(w, where);
    return w;
}

} // namespace detail

/// Parses {"edges": [[u, v, w], ...], "vertex_weights": {u: w, ...}}.
/// The third element of an edge entry and any vertex weight may be omitted;
/// missing weights are 1.0.
inline WeightedGraph parse_weighted(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
        throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + ex.what());
    }
    if (!doc.is_object())
        throw Error(ErrorCode::ParseError, "weighted document must be a JSON object");
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw Error(ErrorCode::ParseError, "weighted document needs an \"edges\" array");
    const auto& jedges = doc["edges"];
    if (jedges.empty())
        throw Error(ErrorCode::EmptyInput, "weighted document has no edges");

    std::vector<LabeledEdge> edges;
    std::vector<double> given_weight;
    for (std::size_t i = 0; i < jedges.size(); ++i) {
        const std::string where = "edges[" + std::to_string(i) + "]";
        const auto& entry = jedges[i];
        if (!entry.is_array() || entry.size() < 2 || entry.size() > 3)
            throw Error(ErrorCode::ParseError, where + ": expected [u, v] or [u, v, w]");
        edges.push_back({detail::json_token(entry[0], where), detail::json_token(entry[1], where), where});
        given_weight.push_back(entry.size() == 3 ? detail::json_weight(entry[2], where) : 1.0);
    }
    Graph g = Graph::from_edges(edges);

    std::vector<double> edge_weight(g.edge_count(), 1.0);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto e = *g.find_edge(g.vertex(edges[i].u), g.vertex(edges[i].v));
        edge_weight[e] = given_weight[i];
    }

    std::vector<double> vertex_weight(g.vertex_count(), 1.0);
    if (doc.contains("vertex_weights")) {
        const auto& jv = doc["vertex_weights"];
        if (!jv.is_object())
            throw Error(ErrorCode::ParseError, "\"vertex_weights\" must be an object");
        for (const auto& [label, w] : jv.items())
            vertex_weight[g.vertex(label)] = detail::json_weight(w, "vertex_weights[" + label + "]");
    }
    return WeightedGraph(std::move(g), std::move(vertex_weight), std::move(edge_weight));
}

inline std::string serialize_weighted(const WeightedGraph& wg)
{
    const Graph& g = wg.graph();
    std::string out = "{\"edges\": [";
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        const auto& ep = g.edge(e);
        if (e)
            out += ", ";
        out += "[" + nlohmann::json(g.label(ep.lo)).dump() + ", " + nlohmann::json(g.label(ep.hi)).dump() + ", " +
               format_number(wg.edge_weight(e)) + "]";
    }
    out += "], \"vertex_weights\": {";
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        if (v)
            out += ", ";
        out += nlohmann::json(g.label(v)).dump() + ": " + format_number(wg.vertex_weight(v));
    }
    out += "}}\n";
    return out;
}

} // namespace edgericci
