#pragma once

#include "edgericci/error.hpp"
#include "edgericci/graph.hpp"
#include "edgericci/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <queue>
#include <span>
#include <utility>
#include <vector>

namespace edgericci {

/// Probability measure on the edge set, stored sparsely on its support.
template <class Scalar>
struct EdgeMeasure {
    EdgeIndex owner = 0;
    std::vector<std::pair<EdgeIndex, Scalar>> support; // sorted by edge, masses > 0

    Scalar total() const
    {
        Scalar s{0};
        for (const auto& [e, mass] : support)
            s += mass;
        return s;
    }

    Scalar mass(EdgeIndex e) const
    {
        const auto it = std::lower_bound(support.begin(), support.end(), e,
                                         [](const auto& atom, EdgeIndex key) { return atom.first < key; });
        return it != support.end() && it->first == e ? it->second : Scalar{0};
    }
};

struct LineNeighbor {
    EdgeIndex edge;
    VertexIndex shared;
};

/// Rows of a distance table are filled at most once, on first use, under
/// std::call_once; filled rows are never written again, so concurrent
/// readers are safe.
template <class Distance>
class MemoizedRows {
public:
    explicit MemoizedRows(std::size_t n) : rows_(n), once_(std::make_unique<std::once_flag[]>(n)) {}

    template <class Fill>
    std::span<const Distance> get(std::size_t i, Fill&& fill) const
    {
        std::call_once(once_[i], [&] { rows_[i] = fill(i); });
        return rows_[i];
    }

private:
    mutable std::vector<std::vector<Distance>> rows_;
    std::unique_ptr<std::once_flag[]> once_;
};

/// The edge set of a graph viewed as a metric space: two distinct edges are
/// at distance 1 when they share a vertex, and distances are shortest-path
/// lengths in that line adjacency. Owns a copy of the graph.
class EdgeSpace {
public:
    static constexpr std::size_t full_table_limit = 4096;

    explicit EdgeSpace(Graph g)
        : graph_(std::move(g))
        , lines_(graph_.edge_count())
        , rows_(graph_.edge_count())
    {
        for (EdgeIndex e = 0; e < graph_.edge_count(); ++e) {
            const auto& ep = graph_.edge(e);
            for (VertexIndex v : {ep.lo, ep.hi})
                for (EdgeIndex f : graph_.incident_edges(v))
                    if (f != e)
                        lines_[e].push_back({f, v});
            std::sort(lines_[e].begin(), lines_[e].end(),
                      [](const LineNeighbor& a, const LineNeighbor& b) { return a.edge < b.edge; });
        }
    }

    const Graph& graph() const noexcept { return graph_; }
    std::size_t edge_count() const noexcept { return graph_.edge_count(); }

    std::span<const LineNeighbor> line_neighbors(EdgeIndex e) const { return lines_.at(e); }

    /// Γ(e): edges sharing a vertex with e, excluding e, sorted by ordinal.
    std::vector<EdgeIndex> neighborhood(EdgeIndex e) const
    {
        std::vector<EdgeIndex> out;
        for (const auto& ln : line_neighbors(e))
            out.push_back(ln.edge);
        return out;
    }

    std::size_t degree(EdgeIndex e) const { return lines_.at(e).size(); }

    std::optional<VertexIndex> shared_vertex(EdgeIndex e, EdgeIndex f) const
    {
        const auto& row = lines_.at(e);
        const auto it = std::lower_bound(row.begin(), row.end(), f,
                                         [](const LineNeighbor& a, EdgeIndex key) { return a.edge < key; });
        if (it == row.end() || it->edge != f)
            return std::nullopt;
        return it->shared;
    }

    bool connected(EdgeIndex e, EdgeIndex f) const { return shared_vertex(e, f).has_value(); }

    /// The common edge degree if every edge has the same |Γ(e)|.
    std::optional<std::size_t> regular_degree() const
    {
        const std::size_t d = degree(0);
        for (EdgeIndex e = 1; e < edge_count(); ++e)
            if (degree(e) != d)
                return std::nullopt;
        return d;
    }

    /// BFS distances from e to every edge, computed on first request.
    std::span<const std::size_t> distance_row(EdgeIndex e) const
    {
        if (e >= edge_count())
            throw Error(ErrorCode::InvalidParameter, "edge index out of range");
        return rows_.get(e, [this](std::size_t src) { return bfs(src); });
    }

    std::size_t distance(EdgeIndex e, EdgeIndex f) const { return distance_row(e)[f]; }

    /// Fills every row eagerly; refuses tables above full_table_limit edges.
    void precompute_all() const
    {
        if (edge_count() > full_table_limit)
            throw Error(ErrorCode::TooLarge, "full edge-distance table limited to " +
                                                 std::to_string(full_table_limit) + " edges");
        for (EdgeIndex e = 0; e < edge_count(); ++e)
            (void)distance_row(e);
    }

    /// m_e: mass 1/d_e on every edge of Γ(e), exact.
    EdgeMeasure<Rational> measure(EdgeIndex e) const
    {
        const std::size_t d = degree(e);
        if (d == 0)
            throw Error(ErrorCode::IsolatedEdge, "edge " + graph_.edge_label(e) + " has no neighbors");
        EdgeMeasure<Rational> m{e, {}};
        const Rational mass(1, static_cast<std::int64_t>(d));
        for (const auto& ln : lines_[e])
            m.support.emplace_back(ln.edge, mass);
        return m;
    }

private:
    std::vector<std::size_t> bfs(EdgeIndex src) const
    {
        constexpr auto unreached = std::numeric_limits<std::size_t>::max();
        std::vector<std::size_t> dist(edge_count(), unreached);
        std::deque<EdgeIndex> queue{src};
        dist[src] = 0;
        while (!queue.empty()) {
            const EdgeIndex e = queue.front();
            queue.pop_front();
            for (const auto& ln : lines_[e]) {
                if (dist[ln.edge] == unreached) {
                    dist[ln.edge] = dist[e] + 1;
                    queue.push_back(ln.edge);
                }
            }
        }
        return dist;
    }

    Graph graph_;
    std::vector<std::vector<LineNeighbor>> lines_;
    MemoizedRows<std::size_t> rows_;
};

/// Weighted edge space: hop e_{j-1} -> e_j costs the weight of the vertex
/// they share, degrees are sums of neighbor edge weights, and
/// m_e(f) = w(f) / d_e on Γ(e).
class WeightedEdgeSpace {
public:
    explicit WeightedEdgeSpace(WeightedGraph wg)
        : weighted_(std::move(wg))
        , base_(weighted_.graph())
        , rows_(base_.edge_count())
    {
    }

    const WeightedGraph& weighted_graph() const noexcept { return weighted_; }
    const Graph& graph() const noexcept { return base_.graph(); }
    const EdgeSpace& base() const noexcept { return base_; }
    std::size_t edge_count() const noexcept { return base_.edge_count(); }

    double edge_weight(EdgeIndex e) const { return weighted_.edge_weight(e); }
    double vertex_weight(VertexIndex v) const { return weighted_.vertex_weight(v); }

    double degree(EdgeIndex e) const
    {
        if (base_.degree(e) == 0)
            throw Error(ErrorCode::IsolatedEdge, "edge " + graph().edge_label(e) + " has no neighbors");
        double d = 0.0;
        for (const auto& ln : base_.line_neighbors(e))
            d += weighted_.edge_weight(ln.edge);
        return d;
    }

    /// Dijkstra over the line adjacency with hop cost w(shared vertex).
    std::span<const double> distance_row(EdgeIndex e) const
    {
        if (e >= edge_count())
            throw Error(ErrorCode::InvalidParameter, "edge index out of range");
        return rows_.get(e, [this](std::size_t src) { return dijkstra(src); });
    }

    double distance(EdgeIndex e, EdgeIndex f) const { return distance_row(e)[f]; }

    EdgeMeasure<double> measure(EdgeIndex e) const
    {
        const double d = degree(e);
        EdgeMeasure<double> m{e, {}};
        for (const auto& ln : base_.line_neighbors(e))
            m.support.emplace_back(ln.edge, weighted_.edge_weight(ln.edge) / d);
        return m;
    }

    bool constant_vertex_weights() const
    {
        const auto w = weighted_.vertex_weights();
        return std::all_of(w.begin(), w.end(), [&](double x) { return x == w[0]; });
    }

    bool constant_edge_weights() const
    {
        const auto w = weighted_.edge_weights();
        return std::all_of(w.begin(), w.end(), [&](double x) { return x == w[0]; });
    }

private:
    std::vector<double> dijkstra(EdgeIndex src) const
    {
        std::vector<double> dist(edge_count(), std::numeric_limits<double>::infinity());
        using Item = std::pair<double, EdgeIndex>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        dist[src] = 0.0;
        heap.emplace(0.0, src);
        while (!heap.empty()) {
            const auto [d, e] = heap.top();
            heap.pop();
            if (d > dist[e])
                continue;
            for (const auto& ln : base_.line_neighbors(e)) {
                const double nd = d + weighted_.vertex_weight(ln.shared);
                if (nd < dist[ln.edge]) {
                    dist[ln.edge] = nd;
                    heap.emplace(nd, ln.edge);
                }
            }
        }
        return dist;
    }

    WeightedGraph weighted_;
    EdgeSpace base_;
    MemoizedRows<double> rows_;
};

} // namespace edgericci
