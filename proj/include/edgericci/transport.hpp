#pragma once

#include "edgericci/edge_geometry.hpp"
#include "edgericci/error.hpp"
#include "edgericci/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

namespace edgericci {

/// Transport between two measures on a finite set of atoms (edges). `mu` and
/// `nu` are given over the joint support, so either may be zero on an atom.
/// `cost` is the |atoms| x |atoms| distance table, row-major.
template <class Scalar>
struct TransportProblem {
    std::vector<EdgeIndex> atoms;
    std::vector<Scalar> mu;
    std::vector<Scalar> nu;
    std::vector<Scalar> cost;

    std::size_t size() const noexcept { return atoms.size(); }
    const Scalar& cost_at(std::size_t i, std::size_t j) const { return cost[i * atoms.size() + j]; }

    std::optional<std::size_t> position(EdgeIndex e) const
    {
        const auto it = std::lower_bound(atoms.begin(), atoms.end(), e);
        if (it == atoms.end() || *it != e)
            return std::nullopt;
        return static_cast<std::size_t>(it - atoms.begin());
    }
};

template <class Scalar>
struct CouplingEntry {
    EdgeIndex source;
    EdgeIndex target;
    Scalar mass;
};

template <class Scalar>
struct Coupling {
    std::vector<CouplingEntry<Scalar>> entries;

    Scalar cost(const TransportProblem<Scalar>& p) const
    {
        Scalar total{0};
        for (const auto& en : entries)
            total += en.mass * p.cost_at(*p.position(en.source), *p.position(en.target));
        return total;
    }
};

/// Kantorovich potential on the joint support.
template <class Scalar>
struct DualPotential {
    std::map<EdgeIndex, Scalar> values;
};

template <class Scalar>
struct TransportResult {
    Scalar distance{0};   // primal optimum, the 1-Wasserstein distance
    Coupling<Scalar> plan;
    DualPotential<Scalar> dual;
    Scalar dual_value{0}; // Σ f (mu - nu)
    Scalar gap{0};        // distance - dual_value
    bool dual_feasible = false;
    double slackness_violation = 0.0; // max complementary-slackness residual, real path only
};

/// Tolerances of the binary64 path.
struct RealTolerance {
    static constexpr double flow = 1e-12;
    static constexpr double mass_balance = 1e-9;
    static constexpr double slackness = 1e-10;
    static constexpr double marginal = 1e-12;
    static constexpr double gap = 1e-9;
};

template <class Scalar>
TransportProblem<Scalar> make_problem_from(const EdgeMeasure<Scalar>& mu, const EdgeMeasure<Scalar>& nu,
                                           auto&& distance)
{
    TransportProblem<Scalar> p;
    for (const auto& [e, m] : mu.support)
        p.atoms.push_back(e);
    for (const auto& [e, m] : nu.support)
        p.atoms.push_back(e);
    std::sort(p.atoms.begin(), p.atoms.end());
    p.atoms.erase(std::unique(p.atoms.begin(), p.atoms.end()), p.atoms.end());
    p.mu.reserve(p.atoms.size());
    p.nu.reserve(p.atoms.size());
    for (EdgeIndex a : p.atoms) {
        p.mu.push_back(mu.mass(a));
        p.nu.push_back(nu.mass(a));
    }
    p.cost.reserve(p.atoms.size() * p.atoms.size());
    for (EdgeIndex a : p.atoms)
        for (EdgeIndex b : p.atoms)
            p.cost.push_back(static_cast<Scalar>(distance(a, b)));
    return p;
}

inline TransportProblem<Rational> make_problem(const EdgeSpace& space, const EdgeMeasure<Rational>& mu,
                                               const EdgeMeasure<Rational>& nu)
{
    return make_problem_from<Rational>(mu, nu, [&](EdgeIndex a, EdgeIndex b) {
        return Rational(static_cast<std::int64_t>(space.distance(a, b)));
    });
}

inline TransportProblem<double> make_problem(const WeightedEdgeSpace& space, const EdgeMeasure<double>& mu,
                                             const EdgeMeasure<double>& nu)
{
    return make_problem_from<double>(mu, nu, [&](EdgeIndex a, EdgeIndex b) { return space.distance(a, b); });
}

namespace detail {

template <class Num>
struct FlowOutcome {
    std::vector<Num> flow; // rows x cols
    std::vector<Num> row_potential;
    std::vector<Num> col_potential;
};

/// Successive shortest augmenting paths on the bipartite transport network
/// source -> rows -> cols -> sink. Bellman-Ford handles the negative reverse
/// arcs; networks here have at most a few dozen nodes.
template <class Num>
FlowOutcome<Num> successive_shortest_paths(std::vector<Num> supply, std::vector<Num> demand,
                                           const std::vector<Num>& cost, Num eps)
{
    const std::size_t rows = supply.size();
    const std::size_t cols = demand.size();
    const std::size_t source = 0;
    const std::size_t sink = rows + cols + 1;
    const std::size_t nodes = rows + cols + 2;
    const auto row_node = [](std::size_t i) { return 1 + i; };
    const auto col_node = [rows](std::size_t j) { return 1 + rows + j; };

    FlowOutcome<Num> out;
    out.flow.assign(rows * cols, Num{0});

    Num remaining{0};
    for (const Num& s : supply)
        remaining += s;

    while (remaining > eps) {
        std::vector<Num> dist(nodes, Num{0});
        std::vector<char> reached(nodes, 0);
        std::vector<std::size_t> pred(nodes, nodes);
        reached[source] = 1;
        const auto relax = [&](std::size_t from, std::size_t to, const Num& w) {
            if (!reached[from])
                return false;
            const Num nd = dist[from] + w;
            if (!reached[to] || nd < dist[to] - eps) {
                reached[to] = 1;
                dist[to] = nd;
                pred[to] = from;
                return true;
            }
            return false;
        };
        for (std::size_t round = 0; round < nodes; ++round) {
            bool changed = false;
            for (std::size_t i = 0; i < rows; ++i)
                if (supply[i] > eps)
                    changed |= relax(source, row_node(i), Num{0});
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) {
                    changed |= relax(row_node(i), col_node(j), cost[i * cols + j]);
                    if (out.flow[i * cols + j] > eps)
                        changed |= relax(col_node(j), row_node(i), -cost[i * cols + j]);
                }
            for (std::size_t j = 0; j < cols; ++j)
                if (demand[j] > eps)
                    changed |= relax(col_node(j), sink, Num{0});
            if (!changed)
                break;
        }
        if (!reached[sink])
            throw Error(ErrorCode::MassImbalance, "supply cannot be routed to demand");

        // Walk the path backwards to find the bottleneck, then augment.
        std::vector<std::size_t> path{sink};
        while (path.back() != source)
            path.push_back(pred[path.back()]);
        std::reverse(path.begin(), path.end());
        Num push = supply[path[1] - 1];
        push = std::min(push, demand[path[path.size() - 2] - 1 - rows]);
        for (std::size_t k = 1; k + 2 < path.size(); ++k) {
            const std::size_t a = path[k];
            const std::size_t b = path[k + 1];
            if (a > rows) // col -> row: reverse arc
                push = std::min(push, out.flow[(b - 1) * cols + (a - 1 - rows)]);
        }
        supply[path[1] - 1] -= push;
        demand[path[path.size() - 2] - 1 - rows] -= push;
        for (std::size_t k = 1; k + 2 < path.size(); ++k) {
            const std::size_t a = path[k];
            const std::size_t b = path[k + 1];
            if (a <= rows)
                out.flow[(a - 1) * cols + (b - 1 - rows)] += push;
            else
                out.flow[(b - 1) * cols + (a - 1 - rows)] -= push;
        }
        remaining -= push;
    }

    // Node potentials: shortest distances in the final residual network from
    // a virtual root joined to every node at cost 0. No negative cycles exist
    // at optimality, so this converges within |nodes| rounds.
    std::vector<Num> pot(rows + cols, Num{0});
    for (std::size_t round = 0; round <= rows + cols; ++round) {
        bool changed = false;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                const Num& c = cost[i * cols + j];
                if (pot[i] + c < pot[rows + j] - eps) {
                    pot[rows + j] = pot[i] + c;
                    changed = true;
                }
                if (out.flow[i * cols + j] > eps && pot[rows + j] - c < pot[i] - eps) {
                    pot[i] = pot[rows + j] - c;
                    changed = true;
                }
            }
        if (!changed)
            break;
    }
    // phi_i - psi_j <= c_ij with equality on arcs carrying flow.
    for (std::size_t i = 0; i < rows; ++i)
        out.row_potential.push_back(-pot[i]);
    for (std::size_t j = 0; j < cols; ++j)
        out.col_potential.push_back(-pot[rows + j]);
    return out;
}

} // namespace detail

inline std::string to_text(const Rational& r) { return r.str(); }
inline std::string to_text(double x) { return std::to_string(x); }

template <class Scalar>
struct CouplingCheck {
    bool ok = false;
    std::string diagnostic;
    explicit operator bool() const noexcept { return ok; }
};

/// Checks nonnegativity and both marginal constraints (exact for rationals,
/// RealTolerance::marginal for reals). The diagnostic names the first
/// violated row or column.
template <class Scalar>
CouplingCheck<Scalar> verify_coupling(const TransportProblem<Scalar>& p, const Coupling<Scalar>& c)
{
    const auto differs = [](const Scalar& a, const Scalar& b) {
        if constexpr (std::is_same_v<Scalar, Rational>)
            return a != b;
        else
            return std::abs(a - b) > RealTolerance::marginal;
    };
    std::vector<Scalar> row(p.size(), Scalar{0});
    std::vector<Scalar> col(p.size(), Scalar{0});
    for (const auto& en : c.entries) {
        const auto i = p.position(en.source);
        const auto j = p.position(en.target);
        if (!i || !j)
            return {false, "entry (" + std::to_string(en.source) + ", " + std::to_string(en.target) +
                               ") lies outside the joint support"};
        if (en.mass < Scalar{0})
            return {false, "entry (" + std::to_string(en.source) + ", " + std::to_string(en.target) +
                               ") has negative mass"};
        row[*i] += en.mass;
        col[*j] += en.mass;
    }
    for (std::size_t i = 0; i < p.size(); ++i)
        if (differs(row[i], p.mu[i]))
            return {false, "row " + std::to_string(p.atoms[i]) + " sums to " + to_text(row[i]) + ", expected " +
                               to_text(p.mu[i])};
    for (std::size_t j = 0; j < p.size(); ++j)
        if (differs(col[j], p.nu[j]))
            return {false, "column " + std::to_string(p.atoms[j]) + " sums to " + to_text(col[j]) + ", expected " +
                               to_text(p.nu[j])};
    return {true, {}};
}

/// Σ f(a) (mu(a) - nu(a)) over the joint support.
template <class Scalar>
Scalar dual_objective(const TransportProblem<Scalar>& p, const DualPotential<Scalar>& f)
{
    Scalar total{0};
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto it = f.values.find(p.atoms[i]);
        if (it == f.values.end())
            throw Error(ErrorCode::MissingPotential, "no potential value at edge " + std::to_string(p.atoms[i]));
        total += it->second * (p.mu[i] - p.nu[i]);
    }
    return total;
}

/// |f(a) - f(b)| <= d(a, b) on every pair of the joint support.
template <class Scalar>
bool is_lipschitz(const TransportProblem<Scalar>& p, const DualPotential<Scalar>& f)
{
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) {
            const Scalar diff = f.values.at(p.atoms[i]) - f.values.at(p.atoms[j]);
            if constexpr (std::is_same_v<Scalar, Rational>) {
                if (diff > p.cost_at(i, j))
                    return false;
            } else {
                if (diff > p.cost_at(i, j) + RealTolerance::slackness)
                    return false;
            }
        }
    return true;
}

/// Exact optimal transport. Rational problems are scaled onto an integer
/// lattice (lcm of mass denominators, lcm of cost denominators) and solved in
/// int64, so distance, plan and certificate are exact with zero gap. Real
/// problems run the same algorithm in binary64.
///
/// The returned potential is f(x) = min_j (psi_j + d(x, t_j)) over the
/// target atoms t_j, which is 1-Lipschitz for a metric cost and attains the
/// primal value.
template <class Scalar>
TransportResult<Scalar> solve_wasserstein(const TransportProblem<Scalar>& p)
{
    const std::size_t n = p.size();
    if (n == 0)
        throw Error(ErrorCode::InvalidParameter, "empty transport problem");
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < n; ++i) {
        if (p.mu[i] > Scalar{0})
            rows.push_back(i);
        if (p.nu[i] > Scalar{0})
            cols.push_back(i);
    }
    if (rows.empty() || cols.empty())
        throw Error(ErrorCode::InvalidParameter, "transport measure has empty support");

    Scalar mu_total{0};
    Scalar nu_total{0};
    for (std::size_t i = 0; i < n; ++i) {
        mu_total += p.mu[i];
        nu_total += p.nu[i];
    }

    TransportResult<Scalar> result;

    if constexpr (std::is_same_v<Scalar, Rational>) {
        if (mu_total != nu_total)
            throw Error(ErrorCode::MassImbalance, "total masses " + mu_total.str() + " and " + nu_total.str() + " differ");
        std::int64_t mass_scale = 1;
        for (std::size_t i = 0; i < n; ++i)
            mass_scale = checked_lcm(checked_lcm(mass_scale, p.mu[i].den()), p.nu[i].den());
        std::int64_t cost_scale = 1;
        for (const auto& c : p.cost)
            cost_scale = checked_lcm(cost_scale, c.den());
        const auto lattice = [](const Rational& r, std::int64_t scale) {
            const Rational v = r * Rational(scale);
            return v.num();
        };
        std::vector<std::int64_t> supply;
        std::vector<std::int64_t> demand;
        std::vector<std::int64_t> cost;
        for (auto i : rows)
            supply.push_back(lattice(p.mu[i], mass_scale));
        for (auto j : cols)
            demand.push_back(lattice(p.nu[j], mass_scale));
        for (auto i : rows)
            for (auto j : cols)
                cost.push_back(lattice(p.cost_at(i, j), cost_scale));

        const auto flow = detail::successive_shortest_paths<std::int64_t>(supply, demand, cost, 0);

        Rational primal{0};
        for (std::size_t a = 0; a < rows.size(); ++a)
            for (std::size_t b = 0; b < cols.size(); ++b) {
                const std::int64_t units = flow.flow[a * cols.size() + b];
                if (units == 0)
                    continue;
                const Rational mass(units, mass_scale);
                result.plan.entries.push_back({p.atoms[rows[a]], p.atoms[cols[b]], mass});
                primal += mass * p.cost_at(rows[a], cols[b]);
            }
        for (std::size_t x = 0; x < n; ++x) {
            std::optional<std::int64_t> best;
            for (std::size_t b = 0; b < cols.size(); ++b) {
                const std::int64_t v = flow.col_potential[b] + lattice(p.cost_at(x, cols[b]), cost_scale);
                best = best ? std::min(*best, v) : v;
            }
            result.dual.values[p.atoms[x]] = Rational(*best, cost_scale);
        }
        result.distance = primal;
    } else {
        if (std::abs(mu_total - nu_total) > RealTolerance::mass_balance)
            throw Error(ErrorCode::MassImbalance,
                        "total masses " + std::to_string(mu_total) + " and " + std::to_string(nu_total) + " differ");
        std::vector<double> supply;
        std::vector<double> demand;
        std::vector<double> cost;
        for (auto i : rows)
            supply.push_back(p.mu[i]);
        for (auto j : cols)
            demand.push_back(p.nu[j]);
        // Balance the two sides exactly so the final augmentation cannot strand round-off.
        const double scale = mu_total / nu_total;
        for (auto& d : demand)
            d *= scale;
        for (auto i : rows)
            for (auto j : cols)
                cost.push_back(p.cost_at(i, j));

        const auto flow = detail::successive_shortest_paths<double>(supply, demand, cost, RealTolerance::flow);

        double primal = 0.0;
        double violation = 0.0;
        for (std::size_t a = 0; a < rows.size(); ++a)
            for (std::size_t b = 0; b < cols.size(); ++b) {
                const double c = p.cost_at(rows[a], cols[b]);
                const double reduced = flow.row_potential[a] - flow.col_potential[b] - c;
                violation = std::max(violation, reduced);
                const double mass = flow.flow[a * cols.size() + b];
                if (mass <= RealTolerance::flow)
                    continue;
                violation = std::max(violation, std::abs(reduced));
                result.plan.entries.push_back({p.atoms[rows[a]], p.atoms[cols[b]], mass});
                primal += mass * c;
            }
        for (std::size_t x = 0; x < n; ++x) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t b = 0; b < cols.size(); ++b)
                best = std::min(best, flow.col_potential[b] + p.cost_at(x, cols[b]));
            result.dual.values[p.atoms[x]] = best;
        }
        result.distance = primal;
        result.slackness_violation = violation;
    }

    result.dual_value = dual_objective(p, result.dual);
    result.gap = result.distance - result.dual_value;
    result.dual_feasible = is_lipschitz(p, result.dual);
    return result;
}

} // namespace edgericci
