#pragma once

#include "edgericci/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace edgericci {

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

/// Unordered edge stored with lo < hi (dense vertex indices).
struct EdgeEndpoints {
    VertexIndex lo;
    VertexIndex hi;

    friend auto operator<=>(const EdgeEndpoints&, const EdgeEndpoints&) = default;

    bool touches(VertexIndex v) const noexcept { return lo == v || hi == v; }
    VertexIndex other(VertexIndex v) const noexcept { return v == lo ? hi : lo; }
};

/// A label-level edge as it appears in an input document, with a description
/// of where it came from for error messages ("line 3", "edges[2]").
struct LabeledEdge {
    std::string u;
    std::string v;
    std::string origin;
};

/// Simple, connected, finite, undirected graph with at least one edge.
///
/// Vertex labels are opaque tokens. Dense indices follow first appearance in
/// the edge sequence the graph was built from; edges are sorted by their
/// (lo, hi) index pair, and an EdgeIndex is an ordinal into that order.
/// Immutable after construction.
class Graph {
public:
    static Graph from_edges(std::span<const LabeledEdge> edges)
    {
        if (edges.empty())
            throw Error(ErrorCode::EmptyInput, "graph has no edges");
        Graph g;
        std::set<std::pair<VertexIndex, VertexIndex>> seen;
        std::map<std::pair<VertexIndex, VertexIndex>, std::string> origin_of;
        for (const auto& le : edges) {
            if (!valid_label(le.u) || !valid_label(le.v))
                throw Error(ErrorCode::ParseError, le.origin + ": vertex labels must be nonempty tokens without whitespace");
            if (le.u == le.v)
                throw Error(ErrorCode::SelfLoop, le.origin + ": self-loop at vertex '" + le.u + "'");
            const VertexIndex a = g.intern(le.u);
            const VertexIndex b = g.intern(le.v);
            const auto key = std::minmax(a, b);
            if (!seen.insert(key).second)
                throw Error(ErrorCode::DuplicateEdge, le.origin + ": duplicate edge '" + le.u + " " + le.v +
                                                          "' (first given at " + origin_of[key] + ")");
            origin_of[key] = le.origin;
        }
        g.edges_.reserve(seen.size());
        for (const auto& [a, b] : seen)
            g.edges_.push_back({a, b});
        g.finish();
        return g;
    }

    /// Convenience for generators and tests: labels are taken verbatim.
    static Graph from_label_pairs(std::span<const std::pair<std::string, std::string>> pairs)
    {
        std::vector<LabeledEdge> edges;
        edges.reserve(pairs.size());
        for (std::size_t i = 0; i < pairs.size(); ++i)
            edges.push_back({pairs[i].first, pairs[i].second, "edge " + std::to_string(i)});
        return from_edges(edges);
    }

    std::size_t vertex_count() const noexcept { return labels_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const std::string& label(VertexIndex v) const { return labels_.at(v); }
    std::span<const std::string> labels() const noexcept { return labels_; }

    std::optional<VertexIndex> find_vertex(std::string_view label) const
    {
        const auto it = index_.find(std::string(label));
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    VertexIndex vertex(std::string_view label) const
    {
        if (auto v = find_vertex(label))
            return *v;
        throw Error(ErrorCode::UnknownVertex, "no vertex labeled '" + std::string(label) + "'");
    }

    const EdgeEndpoints& edge(EdgeIndex e) const { return edges_.at(e); }
    std::span<const EdgeEndpoints> edges() const noexcept { return edges_; }

    std::optional<EdgeIndex> find_edge(VertexIndex u, VertexIndex v) const
    {
        const EdgeEndpoints key{std::min(u, v), std::max(u, v)};
        const auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
        if (it == edges_.end() || *it != key)
            return std::nullopt;
        return static_cast<EdgeIndex>(it - edges_.begin());
    }

    std::string edge_label(EdgeIndex e) const
    {
        const auto& ep = edge(e);
        return labels_[ep.lo] + "-" + labels_[ep.hi];
    }

    /// Sorted neighbor indices of v.
    std::span<const VertexIndex> neighbors(VertexIndex v) const { return adjacency_.at(v); }
    /// Sorted ordinals of the edges incident to v.
    std::span<const EdgeIndex> incident_edges(VertexIndex v) const { return incidence_.at(v); }

    std::size_t degree(VertexIndex v) const { return adjacency_.at(v).size(); }

    bool is_tree() const noexcept { return edges_.size() + 1 == labels_.size(); }

    /// Label-level equality: same vertex labels and same labeled edge set.
    /// Index assignment is not compared.
    friend bool operator==(const Graph& a, const Graph& b)
    {
        if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
            return false;
        for (const auto& ep : a.edges_) {
            const auto u = b.find_vertex(a.labels_[ep.lo]);
            const auto v = b.find_vertex(a.labels_[ep.hi]);
            if (!u || !v || !b.find_edge(*u, *v))
                return false;
        }
        return true;
    }

private:
    static bool valid_label(std::string_view s)
    {
        return !s.empty() &&
               std::none_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
    }

    VertexIndex intern(const std::string& label)
    {
        const auto [it, inserted] = index_.emplace(label, labels_.size());
        if (inserted)
            labels_.push_back(label);
        return it->second;
    }

    void finish()
    {
        adjacency_.assign(labels_.size(), {});
        incidence_.assign(labels_.size(), {});
        for (EdgeIndex e = 0; e < edges_.size(); ++e) {
            const auto [a, b] = edges_[e];
            adjacency_[a].push_back(b);
            adjacency_[b].push_back(a);
            incidence_[a].push_back(e);
            incidence_[b].push_back(e);
        }
        for (auto& row : adjacency_)
            std::sort(row.begin(), row.end());

        // Connectivity from vertex 0.
        std::vector<char> seen(labels_.size(), 0);
        std::vector<VertexIndex> stack{0};
        seen[0] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            const VertexIndex v = stack.back();
            stack.pop_back();
            for (VertexIndex w : adjacency_[v]) {
                if (!seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        if (reached != labels_.size()) {
            const auto missing = static_cast<VertexIndex>(std::find(seen.begin(), seen.end(), 0) - seen.begin());
            throw Error(ErrorCode::Disconnected,
                        "component containing '" + labels_[0] + "' has " + std::to_string(reached) + " of " +
                            std::to_string(labels_.size()) + " vertices; '" + labels_[missing] +
                            "' lies in another component");
        }
    }

    std::vector<std::string> labels_;
    std::unordered_map<std::string, VertexIndex> index_;
    std::vector<EdgeEndpoints> edges_;
    std::vector<std::vector<VertexIndex>> adjacency_;
    std::vector<std::vector<EdgeIndex>> incidence_;
};

/// Graph with strictly positive weights on vertices and edges (indexed like
/// the base graph). Missing weights in input documents default to 1.0.
class WeightedGraph {
public:
    explicit WeightedGraph(Graph base)
        : base_(std::move(base))
        , vertex_weight_(base_.vertex_count(), 1.0)
        , edge_weight_(base_.edge_count(), 1.0)
    {
    }

    WeightedGraph(Graph base, std::vector<double> vertex_weight, std::vector<double> edge_weight)
        : base_(std::move(base))
        , vertex_weight_(std::move(vertex_weight))
        , edge_weight_(std::move(edge_weight))
    {
        if (vertex_weight_.size() != base_.vertex_count() || edge_weight_.size() != base_.edge_count())
            throw Error(ErrorCode::InvalidParameter, "weight vector sizes do not match the graph");
        for (VertexIndex v = 0; v < vertex_weight_.size(); ++v)
            check_positive(vertex_weight_[v], "vertex '" + base_.label(v) + "'");
        for (EdgeIndex e = 0; e < edge_weight_.size(); ++e)
            check_positive(edge_weight_[e], "edge '" + base_.edge_label(e) + "'");
    }

    const Graph& graph() const noexcept { return base_; }
    double vertex_weight(VertexIndex v) const { return vertex_weight_.at(v); }
    double edge_weight(EdgeIndex e) const { return edge_weight_.at(e); }
    std::span<const double> vertex_weights() const noexcept { return vertex_weight_; }
    std::span<const double> edge_weights() const noexcept { return edge_weight_; }

    static void check_positive(double w, const std::string& what)
    {
        if (!(w > 0.0) || !std::isfinite(w))
            throw Error(ErrorCode::NonpositiveWeight, what + " has weight " + std::to_string(w) + "; weights must be > 0");
    }

private:
    Graph base_;
    std::vector<double> vertex_weight_;
    std::vector<double> edge_weight_;
};

inline std::size_t vertex_degree(const Graph& g, std::string_view label) { return g.degree(g.vertex(label)); }

/// Parses the "u v" per line edge-list format. '#' lines and blank lines are
/// skipped; '\r\n' endings are accepted.
inline Graph parse_edgelist(std::string_view text)
{
    std::vector<LabeledEdge> edges;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        std::istringstream in{std::string(line)};
        std::string u;
        if (!(in >> u) || u.front() == '#')
            continue;
        std::string v;
        std::string extra;
        if (!(in >> v) || (in >> extra))
            throw Error(ErrorCode::ParseError,
                        "line " + std::to_string(line_no) + ": expected exactly two vertex tokens, got '" +
                            std::string(line) + "'");
        edges.push_back({std::move(u), std::move(v), "line " + std::to_string(line_no)});
    }
    if (edges.empty())
        throw Error(ErrorCode::EmptyInput, "edge list contains no edges");
    return Graph::from_edges(edges);
}

/// One "u v" line per edge, in edge-ordinal order.
inline std::string serialize_edgelist(const Graph& g)
{
    std::string out;
    for (const auto& ep : g.edges())
        out += g.label(ep.lo) + " " + g.label(ep.hi) + "\n";
    return out;
}

} // namespace edgericci
