#pragma once

#include "edgericci/edge_geometry.hpp"
#include "edgericci/error.hpp"
#include "edgericci/generators.hpp"
#include "edgericci/graph.hpp"
#include "edgericci/io.hpp"
#include "edgericci/matrix.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace edgericci {

/// [tail, head] with boundary [head] - [tail]: sgn(head) = +1, sgn(tail) = -1.
struct OrientedEdge {
    VertexIndex tail;
    VertexIndex head;

    friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

/// A choice of vertex order for every edge of a graph, indexed by edge ordinal.
class Orientation {
public:
    /// Each edge ordered by vertex ordinal: [lo, hi].
    static Orientation canonical(const Graph& g)
    {
        Orientation o;
        for (const auto& ep : g.edges())
            o.edges_.push_back({ep.lo, ep.hi});
        return o;
    }

    static Orientation from_list(const Graph& g, std::vector<OrientedEdge> edges)
    {
        if (edges.size() != g.edge_count())
            throw Error(ErrorCode::BadOrientation, "orientation lists " + std::to_string(edges.size()) +
                                                       " edges, graph has " + std::to_string(g.edge_count()));
        for (EdgeIndex e = 0; e < edges.size(); ++e) {
            const auto& ep = g.edge(e);
            const auto& oe = edges[e];
            const bool same = (oe.tail == ep.lo && oe.head == ep.hi) || (oe.tail == ep.hi && oe.head == ep.lo);
            if (!same)
                throw Error(ErrorCode::BadOrientation, "entry " + std::to_string(e) + " does not orient edge " +
                                                           g.edge_label(e));
        }
        Orientation o;
        o.edges_ = std::move(edges);
        return o;
    }

    static Orientation random(const Graph& g, Xoshiro256& rng)
    {
        Orientation o = canonical(g);
        for (auto& oe : o.edges_)
            if (rng.next() & 1U)
                std::swap(oe.tail, oe.head);
        return o;
    }

    Orientation flipped(EdgeIndex e) const
    {
        Orientation o = *this;
        std::swap(o.edges_.at(e).tail, o.edges_.at(e).head);
        return o;
    }

    std::span<const OrientedEdge> edges() const noexcept { return edges_; }
    std::size_t size() const noexcept { return edges_.size(); }

    /// sgn([v], ∂[e]); zero when v is not an endpoint of e.
    int sign(EdgeIndex e, VertexIndex v) const
    {
        const auto& oe = edges_.at(e);
        if (v == oe.head)
            return 1;
        if (v == oe.tail)
            return -1;
        return 0;
    }

    /// FNV-1a over the (tail, head) sequence.
    std::uint64_t hash() const noexcept
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        const auto mix = [&h](std::uint64_t x) {
            for (int b = 0; b < 8; ++b) {
                h ^= (x >> (8 * b)) & 0xffU;
                h *= 0x100000001b3ULL;
            }
        };
        for (const auto& oe : edges_) {
            mix(oe.tail);
            mix(oe.head);
        }
        return h;
    }

    friend bool operator==(const Orientation&, const Orientation&) = default;

private:
    std::vector<OrientedEdge> edges_;
};

/// D0, the matrix of δ0 : C^0 -> C^1. Row e = [x, y] holds -1 at x and +1 at y.
inline Matrix build_incidence(const Graph& g, const Orientation& o)
{
    if (o.size() != g.edge_count())
        throw Error(ErrorCode::BadOrientation, "orientation does not match the graph");
    Matrix d(g.edge_count(), g.vertex_count());
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        d(e, o.edges()[e].tail) = -1.0;
        d(e, o.edges()[e].head) = 1.0;
    }
    return d;
}

/// Diagonals of W0 (on vertices) and W1 (on edges).
struct WeightMatrices {
    std::vector<double> w0;
    std::vector<double> w1;

    static WeightMatrices unit(const Graph& g)
    {
        return {std::vector<double>(g.vertex_count(), 1.0), std::vector<double>(g.edge_count(), 1.0)};
    }

    /// W1 = I, w(v) = deg(v): the normalized Δ0 convention.
    static WeightMatrices normalized(const Graph& g)
    {
        WeightMatrices w = unit(g);
        for (VertexIndex v = 0; v < g.vertex_count(); ++v)
            w.w0[v] = static_cast<double>(g.degree(v));
        return w;
    }

    /// W0 = I, w(e) = 1/d_e: the convention of L'1.
    static WeightMatrices curvature_adapted(const EdgeSpace& space)
    {
        WeightMatrices w = unit(space.graph());
        for (EdgeIndex e = 0; e < space.edge_count(); ++e) {
            if (space.degree(e) == 0)
                throw Error(ErrorCode::SingularWeight,
                            "edge " + space.graph().edge_label(e) + " has degree 0, so w(e) = 1/d_e is undefined");
            w.w1[e] = 1.0 / static_cast<double>(space.degree(e));
        }
        return w;
    }

    static WeightMatrices from(const WeightedGraph& wg)
    {
        const auto v = wg.vertex_weights();
        const auto e = wg.edge_weights();
        return {std::vector<double>(v.begin(), v.end()), std::vector<double>(e.begin(), e.end())};
    }

    void validate(const Graph& g) const
    {
        if (w0.size() != g.vertex_count() || w1.size() != g.edge_count())
            throw Error(ErrorCode::SingularWeight, "weight diagonals do not match the graph");
        for (double x : w0)
            if (!(x > 0.0) || !std::isfinite(x))
                throw Error(ErrorCode::SingularWeight, "vertex weight diagonal has a nonpositive entry");
        for (double x : w1)
            if (!(x > 0.0) || !std::isfinite(x))
                throw Error(ErrorCode::SingularWeight, "edge weight diagonal has a nonpositive entry");
    }
};

enum class LaplacianKind { L0, L1, Delta0, Lprime1, WeightedDown };

constexpr std::string_view to_string(LaplacianKind k) noexcept
{
    switch (k) {
    case LaplacianKind::L0: return "L0";
    case LaplacianKind::L1: return "L1";
    case LaplacianKind::Delta0: return "Delta0";
    case LaplacianKind::Lprime1: return "Lprime1";
    case LaplacianKind::WeightedDown: return "weighted-down";
    }
    return "?";
}

inline LaplacianKind parse_laplacian_kind(std::string_view s)
{
    for (auto k : {LaplacianKind::L0, LaplacianKind::L1, LaplacianKind::Delta0, LaplacianKind::Lprime1,
                   LaplacianKind::WeightedDown})
        if (to_string(k) == s)
            return k;
    throw Error(ErrorCode::InvalidParameter, "unknown Laplacian kind '" + std::string(s) +
                                                 "' (expected L0, L1, Delta0, Lprime1 or weighted-down)");
}

/// Vertex operators act on C^0, edge operators on C^1.
constexpr bool is_edge_operator(LaplacianKind k) noexcept
{
    return k == LaplacianKind::L1 || k == LaplacianKind::Lprime1 || k == LaplacianKind::WeightedDown;
}

struct LaplacianMatrix {
    LaplacianKind kind = LaplacianKind::L0;
    Matrix data;
    WeightMatrices weights; // the weights actually used
    Orientation orientation;

    std::size_t dimension() const noexcept { return data.rows(); }

    /// Weights on the space the operator acts on.
    std::span<const double> domain_weights() const noexcept
    {
        return is_edge_operator(kind) ? std::span<const double>(weights.w1) : std::span<const double>(weights.w0);
    }
};

/// For a graph only two operators survive: L0 = W0^-1 D0^T W1 D0 on vertices
/// and L1 = D0 W0^-1 D0^T W1 on edges (the up part of L1 and down part of L0
/// vanish). Delta0 and Lprime1 impose their own weights and ignore `weights`;
/// L0, L1 and WeightedDown use `weights` as given.
inline LaplacianMatrix assemble(LaplacianKind kind, const Graph& g, const WeightMatrices& weights,
                                const Orientation& orientation)
{
    LaplacianMatrix L{kind, {}, weights, orientation};
    if (kind == LaplacianKind::Delta0)
        L.weights = WeightMatrices::normalized(g);
    else if (kind == LaplacianKind::Lprime1)
        L.weights = WeightMatrices::curvature_adapted(EdgeSpace(g));
    L.weights.validate(g);

    const Matrix d0 = build_incidence(g, orientation);
    std::vector<double> inv_w0(L.weights.w0.size());
    for (std::size_t v = 0; v < inv_w0.size(); ++v)
        inv_w0[v] = 1.0 / L.weights.w0[v];
    const Matrix w0_inv = Matrix::diagonal(inv_w0);
    const Matrix w1 = Matrix::diagonal(L.weights.w1);
    if (is_edge_operator(kind))
        L.data = d0 * w0_inv * d0.transpose() * w1;
    else
        L.data = w0_inv * d0.transpose() * w1 * d0;
    return L;
}

inline LaplacianMatrix assemble(LaplacianKind kind, const Graph& g, const WeightMatrices& weights)
{
    return assemble(kind, g, weights, Orientation::canonical(g));
}

inline LaplacianMatrix assemble(LaplacianKind kind, const Graph& g)
{
    return assemble(kind, g, WeightMatrices::unit(g), Orientation::canonical(g));
}

/// The down Laplacian D0 W0^-1 D0^T W1 with a weighted graph's own weights.
inline LaplacianMatrix assemble_weighted_down(const WeightedGraph& wg, const Orientation& orientation)
{
    return assemble(LaplacianKind::WeightedDown, wg.graph(), WeightMatrices::from(wg), orientation);
}

inline LaplacianMatrix assemble_weighted_down(const WeightedGraph& wg)
{
    return assemble_weighted_down(wg, Orientation::canonical(wg.graph()));
}

/// Same operator and weights under another orientation.
inline LaplacianMatrix reorient(const Graph& g, const LaplacianMatrix& L, const Orientation& orientation)
{
    if (orientation.size() != g.edge_count())
        throw Error(ErrorCode::BadOrientation, "orientation does not match the graph");
    return assemble(L.kind, g, L.weights, orientation);
}

/// Off-diagonal part of L'1 applied to f:
/// (L^down f)(e) = Σ_{e' : v = e ∩ e'} sgn([v], ∂e) sgn([v], ∂e') m_e(e') f(e') d_e / d_e'.
inline std::vector<double> apply_Ldown(const EdgeSpace& space, std::span<const double> f, const Orientation& o)
{
    if (f.size() != space.edge_count())
        throw Error(ErrorCode::InvalidParameter, "cochain has " + std::to_string(f.size()) + " entries, expected " +
                                                     std::to_string(space.edge_count()));
    std::vector<double> out(space.edge_count(), 0.0);
    for (EdgeIndex e = 0; e < space.edge_count(); ++e) {
        const double de = static_cast<double>(space.degree(e));
        for (const auto& ln : space.line_neighbors(e)) {
            const double m = 1.0 / de;
            const double ratio = de / static_cast<double>(space.degree(ln.edge));
            out[e] += o.sign(e, ln.shared) * o.sign(ln.edge, ln.shared) * m * f[ln.edge] * ratio;
        }
    }
    return out;
}

/// Text dump: "# kind rows cols orientation-hash" then one row per line with
/// 17 significant digits.
inline std::string dump_matrix(const LaplacianMatrix& L)
{
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(L.orientation.hash()));
    std::string out = "# " + std::string(to_string(L.kind)) + " " + std::to_string(L.data.rows()) + " " +
                      std::to_string(L.data.cols()) + " " + hash + "\n";
    for (std::size_t i = 0; i < L.data.rows(); ++i) {
        for (std::size_t j = 0; j < L.data.cols(); ++j) {
            if (j)
                out += ' ';
            out += format_number(L.data(i, j));
        }
        out += '\n';
    }
    return out;
}

} // namespace edgericci
