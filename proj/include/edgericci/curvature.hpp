#pragma once

#include "edgericci/edge_geometry.hpp"
#include "edgericci/error.hpp"
#include "edgericci/rational.hpp"
#include "edgericci/transport.hpp"

#include <algorithm>
#include <cstddef>
#include <exception>
#include <future>
#include <utility>
#include <vector>

namespace edgericci {

/// κ(e, e2) = 1 - W(m_e, m_e2) / d(e, e2), with the transport certificate
/// that produced W.
template <class Scalar>
struct CurvaturePair {
    EdgeIndex e = 0;
    EdgeIndex e2 = 0;
    Scalar distance{0};
    Scalar wasserstein{0};
    Scalar kappa{0};
    TransportResult<Scalar> transport;
    std::size_t mu_atoms = 0;
    std::size_t nu_atoms = 0;
};

template <class Space>
using ScalarOf = std::conditional_t<std::is_same_v<Space, WeightedEdgeSpace>, double, Rational>;

using EdgePair = std::pair<EdgeIndex, EdgeIndex>;

namespace detail {

inline void require_distinct(EdgeIndex e, EdgeIndex e2)
{
    if (e == e2)
        throw Error(ErrorCode::SamePair, "curvature needs two distinct edges, got " + std::to_string(e) + " twice");
}

inline void require_connected(const EdgeSpace& space, EdgeIndex e, EdgeIndex e2)
{
    if (!space.connected(e, e2))
        throw Error(ErrorCode::NotAdjacent, "edges " + space.graph().edge_label(e) + " and " +
                                                space.graph().edge_label(e2) + " do not share a vertex");
}

} // namespace detail

inline CurvaturePair<Rational> ricci(const EdgeSpace& space, EdgeIndex e, EdgeIndex e2)
{
    detail::require_distinct(e, e2);
    const auto mu = space.measure(e);
    const auto nu = space.measure(e2);
    CurvaturePair<Rational> out;
    out.e = e;
    out.e2 = e2;
    out.mu_atoms = mu.support.size();
    out.nu_atoms = nu.support.size();
    out.transport = solve_wasserstein(make_problem(space, mu, nu));
    out.distance = Rational(static_cast<std::int64_t>(space.distance(e, e2)));
    out.wasserstein = out.transport.distance;
    out.kappa = Rational(1) - out.wasserstein / out.distance;
    return out;
}

inline CurvaturePair<double> ricci(const WeightedEdgeSpace& space, EdgeIndex e, EdgeIndex e2)
{
    detail::require_distinct(e, e2);
    const auto mu = space.measure(e);
    const auto nu = space.measure(e2);
    CurvaturePair<double> out;
    out.e = e;
    out.e2 = e2;
    out.mu_atoms = mu.support.size();
    out.nu_atoms = nu.support.size();
    out.transport = solve_wasserstein(make_problem(space, mu, nu));
    out.distance = space.distance(e, e2);
    out.wasserstein = out.transport.distance;
    out.kappa = 1.0 - out.wasserstein / out.distance;
    return out;
}

/// Unordered connected pairs (e < e2), lexicographic.
inline std::vector<EdgePair> adjacent_pairs(const EdgeSpace& space)
{
    std::vector<EdgePair> out;
    for (EdgeIndex e = 0; e < space.edge_count(); ++e)
        for (const auto& ln : space.line_neighbors(e))
            if (ln.edge > e)
                out.emplace_back(e, ln.edge);
    return out;
}

/// Every unordered pair of distinct edges, lexicographic.
inline std::vector<EdgePair> all_pairs(std::size_t edge_count)
{
    std::vector<EdgePair> out;
    for (EdgeIndex e = 0; e < edge_count; ++e)
        for (EdgeIndex f = e + 1; f < edge_count; ++f)
            out.emplace_back(e, f);
    return out;
}

/// Curvature of each pair, in input order. With jobs > 1 the pairs are
/// striped across worker tasks; the result order does not depend on jobs.
template <class Space>
std::vector<CurvaturePair<ScalarOf<Space>>> ricci_pairs(const Space& space, const std::vector<EdgePair>& pairs,
                                                        std::size_t jobs = 1)
{
    std::vector<CurvaturePair<ScalarOf<Space>>> out(pairs.size());
    jobs = std::max<std::size_t>(1, std::min(jobs, pairs.size()));
    const auto work = [&](std::size_t first) {
        for (std::size_t i = first; i < pairs.size(); i += jobs)
            out[i] = ricci(space, pairs[i].first, pairs[i].second);
    };
    if (jobs == 1) {
        work(0);
        return out;
    }
    std::vector<std::future<void>> tasks;
    for (std::size_t t = 0; t < jobs; ++t)
        tasks.push_back(std::async(std::launch::async, work, t));
    for (auto& t : tasks)
        t.get();
    return out;
}

template <class Space>
std::vector<CurvaturePair<ScalarOf<Space>>> ricci_all_adjacent(const Space& space, std::size_t jobs = 1)
{
    if constexpr (std::is_same_v<Space, WeightedEdgeSpace>)
        return ricci_pairs(space, adjacent_pairs(space.base()), jobs);
    else
        return ricci_pairs(space, adjacent_pairs(space), jobs);
}

enum class PairMode { AdjacentOnly, AllPairsBruteForce };

/// Minimum curvature over adjacent pairs (default) or over every distinct
/// pair. Needs at least two edges.
template <class Space>
ScalarOf<Space> kappa_min(const Space& space, PairMode mode = PairMode::AdjacentOnly)
{
    if (space.edge_count() < 2)
        throw Error(ErrorCode::InvalidParameter, "kappa_min needs at least two edges");
    std::vector<EdgePair> pairs;
    if (mode == PairMode::AllPairsBruteForce) {
        pairs = all_pairs(space.edge_count());
    } else if constexpr (std::is_same_v<Space, WeightedEdgeSpace>) {
        pairs = adjacent_pairs(space.base());
    } else {
        pairs = adjacent_pairs(space);
    }
    const auto values = ricci_pairs(space, pairs);
    auto best = values.front().kappa;
    for (const auto& v : values)
        best = std::min(best, v.kappa);
    return best;
}

/// -2 (1 - 1/d_e - 1/d_e2)_+ for connected e, e2.
inline Rational lower_bound(const EdgeSpace& space, EdgeIndex e, EdgeIndex e2)
{
    detail::require_connected(space, e, e2);
    const Rational inner = Rational(1) - Rational(1, static_cast<std::int64_t>(space.degree(e))) -
                           Rational(1, static_cast<std::int64_t>(space.degree(e2)));
    return inner > Rational(0) ? Rational(-2) * inner : Rational(0);
}

/// -2 (1 - w(e2)/d_e - w(e)/d_e2)_+ with weighted degrees.
inline double lower_bound(const WeightedEdgeSpace& space, EdgeIndex e, EdgeIndex e2)
{
    detail::require_connected(space.base(), e, e2);
    const double inner = 1.0 - space.edge_weight(e2) / space.degree(e) - space.edge_weight(e) / space.degree(e2);
    return inner > 0.0 ? -2.0 * inner : 0.0;
}

enum class UpperBoundVariant { AsStated, IntersectionDiagnostic };

namespace detail {

inline std::pair<std::vector<EdgeIndex>, std::vector<EdgeIndex>> union_and_intersection(const EdgeSpace& space,
                                                                                       EdgeIndex e, EdgeIndex e2)
{
    const auto a = space.neighborhood(e);
    const auto b = space.neighborhood(e2);
    std::vector<EdgeIndex> uni;
    std::vector<EdgeIndex> inter;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(uni));
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
    return {uni, inter};
}

} // namespace detail

/// Unweighted upper bound for e2 ∈ Γ(e). AsStated: |Γ(e) ∪ Γ(e2)| / max{d_e, d_e2}.
/// IntersectionDiagnostic: |Γ(e) ∩ Γ(e2)| / max{d_e, d_e2}, reported only.
/// The neighborhoods are taken literally, so e2 ∈ Γ(e) and e ∈ Γ(e2) both
/// count toward the union.
inline Rational upper_bound(const EdgeSpace& space, EdgeIndex e, EdgeIndex e2, UpperBoundVariant variant)
{
    detail::require_connected(space, e, e2);
    const auto [uni, inter] = detail::union_and_intersection(space, e, e2);
    const auto top = static_cast<std::int64_t>(std::max(space.degree(e), space.degree(e2)));
    const auto count = static_cast<std::int64_t>(variant == UpperBoundVariant::AsStated ? uni.size() : inter.size());
    return Rational(count, top);
}

/// Weighted upper bound w_∩ / max{d_e, d_e2} with w_∩ the weight sum over
/// Γ(e) ∩ Γ(e2). Requires constant vertex weights. The weighted statement is
/// itself an intersection, so both variants evaluate the same quantity.
inline double upper_bound(const WeightedEdgeSpace& space, EdgeIndex e, EdgeIndex e2,
                          UpperBoundVariant /*variant*/ = UpperBoundVariant::AsStated)
{
    detail::require_connected(space.base(), e, e2);
    if (!space.constant_vertex_weights())
        throw Error(ErrorCode::NonconstantVertexWeights, "weighted upper bound assumes constant vertex weights");
    const auto [uni, inter] = detail::union_and_intersection(space.base(), e, e2);
    double w_cap = 0.0;
    for (EdgeIndex f : inter)
        w_cap += space.edge_weight(f);
    return w_cap / std::max(space.degree(e), space.degree(e2));
}

/// Closed-form tree curvature for adjacent e = (x, y), e2 = (y, z):
/// d_y / min{d_e, d_e2} + (2 d_y - 2) / max{d_e, d_e2} - 2.
/// Used as a test oracle; it is not a substitute for ricci().
inline Rational tree_oracle(const EdgeSpace& space, EdgeIndex e, EdgeIndex e2)
{
    if (!space.graph().is_tree())
        throw Error(ErrorCode::NotATree, "tree oracle needs an acyclic graph");
    detail::require_connected(space, e, e2);
    const VertexIndex y = *space.shared_vertex(e, e2);
    const auto dy = static_cast<std::int64_t>(space.graph().degree(y));
    const auto lo = static_cast<std::int64_t>(std::min(space.degree(e), space.degree(e2)));
    const auto hi = static_cast<std::int64_t>(std::max(space.degree(e), space.degree(e2)));
    return Rational(dy, lo) + Rational(2 * dy - 2, hi) - Rational(2);
}

} // namespace edgericci
