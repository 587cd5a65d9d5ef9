#pragma once

// Brute-force transport for tiny instances, independent of the flow solver.
// An optimal plan exists at a vertex of the transportation polytope, and
// every vertex is the unique flow supported on some spanning tree of the
// complete bipartite graph rows x cols. Enumerate all such trees, peel
// leaves to recover the flow, keep the cheapest nonnegative one.

#include "edgericci/error.hpp"
#include "edgericci/rational.hpp"
#include "edgericci/transport.hpp"

#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <type_traits>
#include <vector>

namespace edgericci::testing {

inline constexpr std::size_t oracle_atom_limit = 4;

namespace detail {

struct Cell {
    std::size_t row;
    std::size_t col;
};

inline bool spanning_tree(const std::vector<Cell>& cells, std::size_t r, std::size_t c)
{
    std::vector<std::size_t> parent(r + c);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& cell : cells) {
        const auto a = find(cell.row);
        const auto b = find(r + cell.col);
        if (a == b)
            return false;
        parent[a] = b;
    }
    return true; // r + c - 1 acyclic edges on r + c nodes
}

/// Flow on a spanning tree by repeatedly settling a leaf.
template <class Scalar>
std::optional<std::vector<Scalar>> tree_flow(const std::vector<Cell>& cells, std::vector<Scalar> supply,
                                             std::vector<Scalar> demand, const Scalar& slack)
{
    const std::size_t r = supply.size();
    std::vector<Scalar> flow(cells.size(), Scalar{0});
    std::vector<char> done(cells.size(), 0);
    for (std::size_t step = 0; step < cells.size(); ++step) {
        std::vector<std::size_t> degree(r + demand.size(), 0);
        for (std::size_t k = 0; k < cells.size(); ++k)
            if (!done[k]) {
                ++degree[cells[k].row];
                ++degree[r + cells[k].col];
            }
        std::size_t pick = cells.size();
        bool row_leaf = false;
        for (std::size_t k = 0; k < cells.size() && pick == cells.size(); ++k) {
            if (done[k])
                continue;
            if (degree[cells[k].row] == 1) {
                pick = k;
                row_leaf = true;
            } else if (degree[r + cells[k].col] == 1) {
                pick = k;
            }
        }
        const auto& cell = cells[pick];
        const Scalar amount = row_leaf ? supply[cell.row] : demand[cell.col];
        if (amount < Scalar{0} - slack)
            return std::nullopt;
        flow[pick] = amount;
        supply[cell.row] -= amount;
        demand[cell.col] -= amount;
        done[pick] = 1;
    }
    return flow;
}

} // namespace detail

/// Optimal transport cost by exhaustive basis enumeration. Only rows and
/// columns with positive mass take part; each side is limited to
/// oracle_atom_limit atoms.
template <class Scalar>
Scalar brute_force_transport(const TransportProblem<Scalar>& p)
{
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.mu[i] > Scalar{0})
            rows.push_back(i);
        if (p.nu[i] > Scalar{0})
            cols.push_back(i);
    }
    if (rows.size() > oracle_atom_limit || cols.size() > oracle_atom_limit)
        throw Error(ErrorCode::TooLarge, "brute-force transport is limited to 4 atoms per side");
    if (rows.empty() || cols.empty())
        throw Error(ErrorCode::InvalidParameter, "empty measure");

    std::vector<Scalar> supply;
    std::vector<Scalar> demand;
    for (auto i : rows)
        supply.push_back(p.mu[i]);
    for (auto j : cols)
        demand.push_back(p.nu[j]);
    Scalar slack{0};
    if constexpr (!std::is_same_v<Scalar, Rational>)
        slack = 1e-12;

    const std::size_t r = rows.size();
    const std::size_t c = cols.size();
    const std::size_t cells = r * c;
    const std::size_t basis = r + c - 1;
    std::optional<Scalar> best;
    for (std::uint32_t mask = 0; mask < (1U << cells); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != basis)
            continue;
        std::vector<detail::Cell> chosen;
        for (std::size_t k = 0; k < cells; ++k)
            if (mask & (1U << k))
                chosen.push_back({k / c, k % c});
        if (!detail::spanning_tree(chosen, r, c))
            continue;
        const auto flow = detail::tree_flow(chosen, supply, demand, slack);
        if (!flow)
            continue;
        Scalar cost{0};
        for (std::size_t k = 0; k < chosen.size(); ++k)
            cost += (*flow)[k] * p.cost_at(rows[chosen[k].row], cols[chosen[k].col]);
        if (!best || cost < *best)
            best = cost;
    }
    if (!best)
        throw Error(ErrorCode::MassImbalance, "no feasible basis; masses do not balance");
    return *best;
}

} // namespace edgericci::testing
