#pragma once

#include "edgericci/curvature.hpp"
#include "edgericci/edge_geometry.hpp"
#include "edgericci/error.hpp"
#include "edgericci/generators.hpp"
#include "edgericci/graph.hpp"
#include "edgericci/io.hpp"
#include "edgericci/laplacian.hpp"
#include "edgericci/rational.hpp"
#include "edgericci/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace edgericci {

/// lhs >= rhs - tolerance, or |lhs - rhs| <= tolerance.
enum class Relation { AtLeast, Equal };

struct Witness {
    std::string subject;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string exact; // exact forms of lhs and rhs when known
};

struct TheoremCheck {
    std::string name;
    bool applicable = false;
    std::string reason; // why the check does not apply, or how it was read
    double lhs = std::numeric_limits<double>::quiet_NaN();
    double rhs = std::numeric_limits<double>::quiet_NaN();
    Relation relation = Relation::AtLeast;
    double tolerance = 0.0;
    std::optional<bool> holds; // empty when not applicable
    bool asserted = true;      // diagnostics are reported, never asserted
    bool equality = false;     // |lhs - rhs| <= tolerance
    std::vector<Witness> witnesses;

    bool failed() const { return asserted && applicable && holds == false; }
};

struct VerifyOptions {
    double zero_tolerance = default_zero_tolerance;
    double tolerance = 1e-9;
    std::size_t jobs = 1;
};

namespace detail {

inline void settle(TheoremCheck& c)
{
    const bool finite = std::isfinite(c.lhs) && std::isfinite(c.rhs);
    c.equality = finite && std::abs(c.lhs - c.rhs) <= c.tolerance;
    if (!c.applicable) {
        c.holds.reset();
        return;
    }
    if (!finite) {
        c.holds = false;
        return;
    }
    c.holds = c.relation == Relation::Equal ? c.equality : c.lhs >= c.rhs - c.tolerance;
}

inline TheoremCheck not_applicable(std::string name, std::string reason, bool asserted = true)
{
    TheoremCheck c;
    c.name = std::move(name);
    c.reason = std::move(reason);
    c.asserted = asserted;
    return c;
}

inline std::string pair_label(const Graph& g, EdgeIndex e, EdgeIndex e2)
{
    return g.edge_label(e) + "|" + g.edge_label(e2);
}

} // namespace detail

/// Everything the unweighted checks share: the edge space, every adjacent
/// pair curvature, κ_min and the spectrum of L'1.
struct Analysis {
    EdgeSpace space;
    std::vector<CurvaturePair<Rational>> curvature;
    std::optional<Rational> kappa_min;
    std::optional<std::size_t> kappa_argmin;
    std::optional<Spectrum> lprime1;
    std::string lprime1_error;
    VerifyOptions options;

    const Graph& graph() const noexcept { return space.graph(); }
};

inline Analysis analyze(const Graph& g, const VerifyOptions& options = {})
{
    Analysis a{EdgeSpace(g), {}, std::nullopt, std::nullopt, std::nullopt, {}, options};
    a.curvature = ricci_all_adjacent(a.space, options.jobs);
    for (std::size_t i = 0; i < a.curvature.size(); ++i)
        if (!a.kappa_min || a.curvature[i].kappa < *a.kappa_min) {
            a.kappa_min = a.curvature[i].kappa;
            a.kappa_argmin = i;
        }
    try {
        a.lprime1 = spectrum_of(assemble(LaplacianKind::Lprime1, g), options.zero_tolerance);
        (void)a.lprime1->lambda1();
    } catch (const Error& ex) {
        a.lprime1.reset();
        a.lprime1_error = ex.what();
    }
    return a;
}

/// λ1(L'1) >= κ + 2/d - 1 on an edge-regular graph with κ_min > 0. Both
/// sides are filled in whenever they can be computed, so the equality flag
/// is meaningful even when the hypotheses fail.
inline TheoremCheck check_main0(const Analysis& a)
{
    TheoremCheck c;
    c.name = "spectral_lower_bound";
    c.tolerance = a.options.tolerance;
    const auto d = a.space.regular_degree();
    if (a.lprime1)
        c.lhs = a.lprime1->lambda1();
    if (d && *d > 0 && a.kappa_min)
        c.rhs = a.kappa_min->to_double() + 2.0 / static_cast<double>(*d) - 1.0;
    if (a.kappa_argmin) {
        const auto& p = a.curvature[*a.kappa_argmin];
        c.witnesses.push_back({detail::pair_label(a.graph(), p.e, p.e2), p.kappa.to_double(), 0.0,
                               "kappa_min=" + p.kappa.str()});
    }
    if (!d)
        c.reason = "edge degrees differ";
    else if (!a.kappa_min)
        c.reason = "no adjacent edge pairs";
    else if (!a.lprime1)
        c.reason = a.lprime1_error;
    else if (!(*a.kappa_min > Rational(0)))
        c.reason = "kappa_min = " + a.kappa_min->str() + " is not positive";
    else
        c.applicable = true;
    detail::settle(c);
    return c;
}

/// Whether every adjacent pair (x,y),(y,z) closes a triangle x ~ z.
inline bool every_adjacent_pair_in_triangle(const EdgeSpace& space)
{
    const Graph& g = space.graph();
    for (const auto& [e, e2] : adjacent_pairs(space)) {
        const VertexIndex y = *space.shared_vertex(e, e2);
        const VertexIndex x = g.edge(e).other(y);
        const VertexIndex z = g.edge(e2).other(y);
        if (!g.find_edge(x, z))
            return false;
    }
    return true;
}

/// Diagnostic λ1 >= κ + 4/d - 1 on edge-regular graphs whose adjacent pairs
/// all lie in triangles. Reported only.
inline std::optional<TheoremCheck> check_main0_triangle_variant(const Analysis& a)
{
    const auto d = a.space.regular_degree();
    if (!d || *d == 0 || !a.kappa_min || !every_adjacent_pair_in_triangle(a.space))
        return std::nullopt;
    TheoremCheck c;
    c.name = "spectral_lower_bound_4_over_d";
    c.asserted = false;
    c.tolerance = a.options.tolerance;
    if (a.lprime1)
        c.lhs = a.lprime1->lambda1();
    c.rhs = a.kappa_min->to_double() + 4.0 / static_cast<double>(*d) - 1.0;
    if (!(*a.kappa_min > Rational(0)))
        c.reason = "kappa_min = " + a.kappa_min->str() + " is not positive";
    else if (!a.lprime1)
        c.reason = a.lprime1_error;
    else
        c.applicable = true;
    detail::settle(c);
    return c;
}

inline TheoremCheck check_main0(const Graph& g, const VerifyOptions& options = {})
{
    return check_main0(analyze(g, options));
}

/// λ1(D0 W0^-1 D0^T W1) >= (d(κ - 1) + 2) w1/w0 with constant vertex weight
/// w0, constant edge weight w1 and d the common count |Γ(e)|.
inline TheoremCheck check_weight3(const WeightedGraph& wg, const VerifyOptions& options = {})
{
    TheoremCheck c;
    c.name = "weighted_spectral_lower_bound";
    c.tolerance = options.tolerance;
    const WeightedEdgeSpace space(wg);
    const auto d = space.base().regular_degree();
    const double w0 = wg.vertex_weight(0);
    const double w1 = wg.edge_weight(0);

    std::optional<double> kmin;
    for (const auto& p : ricci_all_adjacent(space, options.jobs))
        if (!kmin || p.kappa < *kmin) {
            kmin = p.kappa;
            c.witnesses = {{detail::pair_label(wg.graph(), p.e, p.e2), p.kappa, 0.0, "kappa_min"}};
        }
    try {
        c.lhs = spectrum_of(assemble_weighted_down(wg), options.zero_tolerance).lambda1();
    } catch (const Error& ex) {
        c.reason = ex.what();
    }
    const bool constant = space.constant_vertex_weights() && space.constant_edge_weights();
    if (constant && d && kmin)
        c.rhs = (static_cast<double>(*d) * (*kmin - 1.0) + 2.0) * w1 / w0;

    if (!space.constant_edge_weights())
        c.reason = "edge weights are not constant";
    else if (!space.constant_vertex_weights())
        c.reason = "vertex weights are not constant";
    else if (!d)
        c.reason = "neighborhood counts |Gamma(e)| differ";
    else if (!kmin)
        c.reason = "no adjacent edge pairs";
    else if (!(*kmin > options.tolerance))
        c.reason = "kappa_min = " + format_number(*kmin) + " is not positive";
    else if (c.reason.empty())
        c.applicable = true;
    detail::settle(c);
    return c;
}

/// Per adjacent pair: κ >= lower bound, upper bound (as stated) >= κ, and
/// the intersection variant as an unasserted diagnostic.
inline std::vector<TheoremCheck> check_bounds(const Analysis& a)
{
    std::vector<TheoremCheck> out;
    const Graph& g = a.graph();
    for (const auto& p : a.curvature) {
        const std::string subject = detail::pair_label(g, p.e, p.e2);
        const Rational lo = lower_bound(a.space, p.e, p.e2);
        const Rational up = upper_bound(a.space, p.e, p.e2, UpperBoundVariant::AsStated);
        const Rational cap = upper_bound(a.space, p.e, p.e2, UpperBoundVariant::IntersectionDiagnostic);

        TheoremCheck l;
        l.name = "curvature_lower_bound";
        l.applicable = true;
        l.lhs = p.kappa.to_double();
        l.rhs = lo.to_double();
        l.witnesses.push_back({subject, l.lhs, l.rhs, "kappa=" + p.kappa.str() + " bound=" + lo.str()});
        detail::settle(l);
        l.holds = p.kappa >= lo;
        out.push_back(std::move(l));

        TheoremCheck u;
        u.name = "curvature_upper_bound";
        u.applicable = true;
        u.lhs = up.to_double();
        u.rhs = p.kappa.to_double();
        u.witnesses.push_back({subject, u.lhs, u.rhs, "bound=" + up.str() + " kappa=" + p.kappa.str()});
        detail::settle(u);
        u.holds = up >= p.kappa;
        out.push_back(std::move(u));

        TheoremCheck i;
        i.name = "curvature_upper_bound_intersection";
        i.applicable = true;
        i.asserted = false;
        i.lhs = cap.to_double();
        i.rhs = p.kappa.to_double();
        i.witnesses.push_back({subject, i.lhs, i.rhs, "bound=" + cap.str() + " kappa=" + p.kappa.str()});
        detail::settle(i);
        i.holds = cap >= p.kappa;
        i.equality = cap == p.kappa;
        out.push_back(std::move(i));
    }
    return out;
}

inline std::vector<TheoremCheck> check_bounds(const Graph& g, const VerifyOptions& options = {})
{
    return check_bounds(analyze(g, options));
}

/// Weighted lower and upper bounds per adjacent pair; the upper bound is
/// skipped unless vertex weights are constant.
inline std::vector<TheoremCheck> check_bounds(const WeightedGraph& wg, const VerifyOptions& options = {})
{
    std::vector<TheoremCheck> out;
    const WeightedEdgeSpace space(wg);
    const bool constant_v = space.constant_vertex_weights();
    for (const auto& p : ricci_all_adjacent(space, options.jobs)) {
        const std::string subject = detail::pair_label(wg.graph(), p.e, p.e2);

        TheoremCheck l;
        l.name = "weighted_curvature_lower_bound";
        l.applicable = true;
        l.tolerance = options.tolerance;
        l.lhs = p.kappa;
        l.rhs = lower_bound(space, p.e, p.e2);
        l.witnesses.push_back({subject, l.lhs, l.rhs, ""});
        detail::settle(l);
        out.push_back(std::move(l));

        if (!constant_v) {
            auto u = detail::not_applicable("weighted_curvature_upper_bound", "vertex weights are not constant");
            u.witnesses.push_back({subject, p.kappa, 0.0, ""});
            out.push_back(std::move(u));
            continue;
        }
        TheoremCheck u;
        u.name = "weighted_curvature_upper_bound";
        u.applicable = true;
        u.tolerance = options.tolerance;
        u.lhs = upper_bound(space, p.e, p.e2);
        u.rhs = p.kappa;
        u.witnesses.push_back({subject, u.lhs, u.rhs, ""});
        detail::settle(u);
        out.push_back(std::move(u));
    }
    return out;
}

/// min over all distinct pairs >= min over adjacent pairs, by brute force.
inline TheoremCheck check_pair_proposition(const Analysis& a)
{
    TheoremCheck c;
    c.name = "pair_minimum";
    if (a.space.edge_count() < 3) {
        c.reason = "needs at least three edges";
        return c;
    }
    const auto all = ricci_pairs(a.space, all_pairs(a.space.edge_count()), a.options.jobs);
    const auto* best = &all.front();
    for (const auto& p : all)
        if (p.kappa < best->kappa)
            best = &p;
    const auto& adj = a.curvature[*a.kappa_argmin];
    c.applicable = true;
    c.lhs = best->kappa.to_double();
    c.rhs = adj.kappa.to_double();
    c.witnesses.push_back({detail::pair_label(a.graph(), best->e, best->e2), c.lhs, 0.0, "all-pairs min " + best->kappa.str()});
    c.witnesses.push_back({detail::pair_label(a.graph(), adj.e, adj.e2), c.rhs, 0.0, "adjacent min " + adj.kappa.str()});
    detail::settle(c);
    c.holds = best->kappa >= adj.kappa;
    return c;
}

inline TheoremCheck check_pair_proposition(const Graph& g, const VerifyOptions& options = {})
{
    return check_pair_proposition(analyze(g, options));
}

namespace detail {

/// Compares each adjacent pair curvature with expected(e, e2); pairs for
/// which expected returns nullopt are skipped. lhs counts matches, rhs counts
/// compared pairs.
template <class Expected>
TheoremCheck closed_form_curvature(const Analysis& a, std::string name, Expected&& expected)
{
    TheoremCheck c;
    c.name = std::move(name);
    c.applicable = true;
    c.relation = Relation::Equal;
    std::size_t matched = 0;
    std::size_t compared = 0;
    for (const auto& p : a.curvature) {
        const auto want = expected(p.e, p.e2);
        if (!want)
            continue;
        ++compared;
        if (p.kappa == *want)
            ++matched;
        else
            c.witnesses.push_back({pair_label(a.graph(), p.e, p.e2), p.kappa.to_double(), want->to_double(),
                                   "kappa=" + p.kappa.str() + " expected=" + want->str()});
    }
    c.lhs = static_cast<double>(matched);
    c.rhs = static_cast<double>(compared);
    settle(c);
    return c;
}

inline TheoremCheck closed_form_value(std::string name, double actual, double expected, double tol,
                                      std::string exact = {})
{
    TheoremCheck c;
    c.name = std::move(name);
    c.applicable = true;
    c.relation = Relation::Equal;
    c.tolerance = tol;
    c.lhs = actual;
    c.rhs = expected;
    if (!exact.empty())
        c.witnesses.push_back({"", actual, expected, std::move(exact)});
    settle(c);
    return c;
}

inline double lambda1_or_nan(const Analysis& a)
{
    return a.lprime1 ? a.lprime1->lambda1() : std::numeric_limits<double>::quiet_NaN();
}

} // namespace detail

/// Closed forms for the example families: complete, cycle, star, complete
/// bipartite and trees (path, random tree). Other families have none and
/// yield an empty list.
inline std::vector<TheoremCheck> check_examples(const GraphFamily& family, const Analysis& a)
{
    std::vector<TheoremCheck> out;
    const Graph& g = a.graph();
    const double tol = a.options.tolerance;
    const auto n = static_cast<std::int64_t>(family.n);
    const auto m = static_cast<std::int64_t>(family.m);
    const auto constant = [](Rational r) { return [r](EdgeIndex, EdgeIndex) { return std::optional<Rational>(r); }; };

    switch (family.kind) {
    case FamilyKind::Complete:
        out.push_back(detail::closed_form_curvature(a, "closed_form_curvature", constant(Rational(1, 2))));
        if (n >= 3)
            out.push_back(detail::closed_form_value("closed_form_lambda1", detail::lambda1_or_nan(a),
                                                    static_cast<double>(n) / (2.0 * static_cast<double>(n - 2)), tol,
                                                    Rational(n, 2 * (n - 2)).str()));
        break;
    case FamilyKind::Cycle: {
        out.push_back(detail::closed_form_curvature(a, "closed_form_curvature", constant(Rational(0))));
        // L'1(C_n) = D0 D0^T / 2 has spectrum 1 - cos(2πk/n).
        std::vector<double> expected;
        for (std::int64_t k = 0; k < n; ++k)
            expected.push_back(1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n)));
        std::sort(expected.begin(), expected.end());
        double dev = std::numeric_limits<double>::quiet_NaN();
        if (a.lprime1 && a.lprime1->eigenvalues.size() == expected.size()) {
            dev = 0.0;
            for (std::size_t i = 0; i < expected.size(); ++i)
                dev = std::max(dev, std::abs(a.lprime1->eigenvalues[i] - expected[i]));
        }
        out.push_back(detail::closed_form_value("closed_form_spectrum", dev, 0.0, tol));
        break;
    }
    case FamilyKind::Star:
        out.push_back(detail::closed_form_curvature(a, "closed_form_curvature", constant(Rational(m - 2, m - 1))));
        out.push_back(detail::closed_form_value("closed_form_lambda1", detail::lambda1_or_nan(a),
                                                1.0 / static_cast<double>(m - 1), tol, Rational(1, m - 1).str()));
        break;
    case FamilyKind::CompleteBipartite:
        out.push_back(detail::closed_form_curvature(a, "closed_form_curvature", [&](EdgeIndex e, EdgeIndex e2) {
            const auto dy = static_cast<std::int64_t>(g.degree(*a.space.shared_vertex(e, e2)));
            return std::optional<Rational>(Rational(dy - 2, m + n - 2));
        }));
        break;
    case FamilyKind::Path:
    case FamilyKind::RandomTree: {
        out.push_back(detail::closed_form_curvature(a, "closed_form_tree_curvature", [&](EdgeIndex e, EdgeIndex e2) {
            const Rational t = tree_oracle(a.space, e, e2);
            return t <= Rational(1) ? std::optional<Rational>(t) : std::nullopt;
        }));
        auto beyond = detail::closed_form_curvature(a, "closed_form_tree_curvature_above_one",
                                                    [&](EdgeIndex e, EdgeIndex e2) {
                                                        const Rational t = tree_oracle(a.space, e, e2);
                                                        return t > Rational(1) ? std::optional<Rational>(t)
                                                                               : std::nullopt;
                                                    });
        beyond.asserted = false;
        beyond.reason = "formula exceeds 1 although curvature never does";
        out.push_back(std::move(beyond));
        break;
    }
    default: break;
    }
    return out;
}

/// Nonzero spectra of L0 and L1 under `weights` agree within 1e-8, and the
/// kernel of L1 has dimension |E| - |V| + 1.
inline std::vector<TheoremCheck> check_spectral_equivalence(const Graph& g, const WeightMatrices& weights,
                                                            const std::string& label,
                                                            double zero_tolerance = default_zero_tolerance)
{
    std::vector<TheoremCheck> out;
    const auto r = spectral_equivalence_check(g, weights, 1e-8, zero_tolerance);
    TheoremCheck c = detail::closed_form_value("spectral_equivalence", r.max_deviation, 0.0, 1e-8);
    c.reason = "weights: " + label;
    if (!r.diagnostic.empty()) {
        c.witnesses.push_back({"", r.max_deviation, 0.0, r.diagnostic});
        if (r.l0.nonzero().size() != r.l1.nonzero().size())
            c.holds = false;
    }
    out.push_back(std::move(c));

    TheoremCheck k = detail::closed_form_value(
        "edge_laplacian_kernel_dimension", static_cast<double>(r.l1.zero_multiplicity),
        static_cast<double>(g.edge_count()) - static_cast<double>(g.vertex_count()) + 1.0, 0.0);
    k.reason = "weights: " + label;
    out.push_back(std::move(k));
    return out;
}

struct CurvatureRow {
    EdgeIndex e = 0;
    EdgeIndex e2 = 0;
    std::string label;
    std::string label2;
    double distance = 0.0;
    double wasserstein = 0.0;
    double kappa = 0.0;
    std::string exact; // empty on the real path
};

inline CurvatureRow to_row(const Graph& g, const CurvaturePair<Rational>& p)
{
    return {p.e, p.e2, g.edge_label(p.e), g.edge_label(p.e2), p.distance.to_double(), p.wasserstein.to_double(),
            p.kappa.to_double(), p.kappa.str()};
}

inline CurvatureRow to_row(const Graph& g, const CurvaturePair<double>& p)
{
    return {p.e, p.e2, g.edge_label(p.e), g.edge_label(p.e2), p.distance, p.wasserstein, p.kappa, ""};
}

struct VerificationReport {
    std::string source;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::optional<std::size_t> edge_degree; // common |Γ(e)| on edge-regular graphs
    bool weighted = false;
    std::vector<std::string> notes;
    std::vector<TheoremCheck> checks;
    std::vector<CurvatureRow> curvature;
    std::vector<std::pair<std::string, std::vector<double>>> spectra;
    std::optional<double> elapsed_seconds;

    std::size_t failures() const
    {
        return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(),
                                                      [](const TheoremCheck& c) { return c.failed(); }));
    }
    bool passed() const { return failures() == 0; }
};

namespace detail {

inline void transport_certificates(VerificationReport& r, const auto& pairs, bool exact)
{
    TheoremCheck c;
    c.name = "transport_certificate";
    c.applicable = !pairs.empty();
    c.relation = Relation::Equal;
    std::size_t certified = 0;
    for (const auto& p : pairs) {
        bool ok = p.transport.dual_feasible;
        if constexpr (std::is_same_v<std::decay_t<decltype(p.transport.gap)>, Rational>)
            ok = ok && p.transport.gap.is_zero();
        else
            ok = ok && std::abs(p.transport.gap) <= RealTolerance::gap;
        certified += ok ? 1 : 0;
    }
    c.lhs = static_cast<double>(certified);
    c.rhs = static_cast<double>(pairs.size());
    c.reason = exact ? "zero duality gap, exact" : "duality gap within 1e-9";
    if (!c.applicable)
        c.reason = "no adjacent edge pairs";
    settle(c);
    r.checks.push_back(std::move(c));
}

} // namespace detail

/// Full report for an unweighted graph. `family` enables closed-form checks;
/// `all_pairs` also computes and tabulates the curvature of every pair.
inline VerificationReport verify_graph(const Graph& g, const VerifyOptions& options = {},
                                       const std::optional<GraphFamily>& family = std::nullopt,
                                       bool include_all_pairs = false)
{
    const Analysis a = analyze(g, options);
    VerificationReport r;
    r.source = family ? family->name() : std::string("input");
    r.vertices = g.vertex_count();
    r.edges = g.edge_count();
    r.edge_degree = a.space.regular_degree();

    detail::transport_certificates(r, a.curvature, true);
    r.checks.push_back(check_main0(a));
    if (auto diag = check_main0_triangle_variant(a))
        r.checks.push_back(std::move(*diag));
    for (auto& c : check_bounds(a))
        r.checks.push_back(std::move(c));
    if (a.kappa_argmin)
        r.checks.push_back(check_pair_proposition(a));
    if (family)
        for (auto& c : check_examples(*family, a))
            r.checks.push_back(std::move(c));
    for (auto& c : check_spectral_equivalence(g, WeightMatrices::unit(g), "unit", options.zero_tolerance))
        r.checks.push_back(std::move(c));
    for (auto& c : check_spectral_equivalence(g, WeightMatrices::normalized(g), "normalized", options.zero_tolerance))
        r.checks.push_back(std::move(c));
    if (a.lprime1)
        for (auto& c : check_spectral_equivalence(g, WeightMatrices::curvature_adapted(a.space), "curvature-adapted",
                                                  options.zero_tolerance))
            r.checks.push_back(std::move(c));

    if (include_all_pairs && g.edge_count() >= 2) {
        for (const auto& p : ricci_pairs(a.space, all_pairs(g.edge_count()), options.jobs))
            r.curvature.push_back(to_row(g, p));
    } else {
        for (const auto& p : a.curvature)
            r.curvature.push_back(to_row(g, p));
    }

    r.spectra.emplace_back("L0", spectrum_of(assemble(LaplacianKind::L0, g), options.zero_tolerance).eigenvalues);
    r.spectra.emplace_back("L1", spectrum_of(assemble(LaplacianKind::L1, g), options.zero_tolerance).eigenvalues);
    if (a.lprime1)
        r.spectra.emplace_back("Lprime1", a.lprime1->eigenvalues);
    return r;
}

/// Full report for a weighted graph: the weighted spectral bound, weighted
/// curvature bounds and spectral equivalence under the graph's own weights.
inline VerificationReport verify_weighted(const WeightedGraph& wg, const VerifyOptions& options = {},
                                          bool include_all_pairs = false)
{
    const Graph& g = wg.graph();
    const WeightedEdgeSpace space(wg);
    VerificationReport r;
    r.source = "input";
    r.weighted = true;
    r.vertices = g.vertex_count();
    r.edges = g.edge_count();
    r.edge_degree = space.base().regular_degree();
    r.notes.push_back("in weighted_spectral_lower_bound, d is the common neighborhood count |Gamma(e)|");

    const auto adjacent = ricci_all_adjacent(space, options.jobs);
    detail::transport_certificates(r, adjacent, false);
    r.checks.push_back(check_weight3(wg, options));
    for (auto& c : check_bounds(wg, options))
        r.checks.push_back(std::move(c));
    const auto weights = WeightMatrices::from(wg);
    for (auto& c : check_spectral_equivalence(g, weights, "input", options.zero_tolerance))
        r.checks.push_back(std::move(c));

    if (include_all_pairs && g.edge_count() >= 2) {
        for (const auto& p : ricci_pairs(space, all_pairs(g.edge_count()), options.jobs))
            r.curvature.push_back(to_row(g, p));
    } else {
        for (const auto& p : adjacent)
            r.curvature.push_back(to_row(g, p));
    }
    r.spectra.emplace_back("L0", spectrum_of(assemble(LaplacianKind::L0, g, weights), options.zero_tolerance).eigenvalues);
    r.spectra.emplace_back("L1", spectrum_of(assemble_weighted_down(wg), options.zero_tolerance).eigenvalues);
    return r;
}

namespace detail {

inline std::string json_string(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

inline std::string json_array(const std::vector<double>& xs)
{
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += (i ? ", " : "") + format_number(xs[i]);
    return out + "]";
}

inline std::string json_check(const TheoremCheck& c)
{
    std::string out = "{\"name\": " + json_string(c.name);
    out += ", \"applicable\": " + std::string(c.applicable ? "true" : "false");
    if (!c.reason.empty())
        out += ", \"reason\": " + json_string(c.reason);
    out += ", \"lhs\": " + format_number(c.lhs);
    out += ", \"rhs\": " + format_number(c.rhs);
    out += ", \"relation\": " + json_string(c.relation == Relation::Equal ? "==" : ">=");
    out += ", \"holds\": " + std::string(!c.holds ? "null" : *c.holds ? "true" : "false");
    out += ", \"tolerance\": " + format_number(c.tolerance);
    out += ", \"asserted\": " + std::string(c.asserted ? "true" : "false");
    out += ", \"equality\": " + std::string(c.equality ? "true" : "false");
    out += ", \"witnesses\": [";
    for (std::size_t i = 0; i < c.witnesses.size(); ++i) {
        const auto& w = c.witnesses[i];
        out += (i ? ", " : "") + std::string("{\"subject\": ") + json_string(w.subject) +
               ", \"lhs\": " + format_number(w.lhs) + ", \"rhs\": " + format_number(w.rhs);
        if (!w.exact.empty())
            out += ", \"exact\": " + json_string(w.exact);
        out += "}";
    }
    return out + "]}";
}

inline std::string pad(std::string s, std::size_t width)
{
    s.append(s.size() < width ? width - s.size() : 1, ' ');
    return s;
}

} // namespace detail

inline std::string render_json(const VerificationReport& r)
{
    std::string out = "{\n  \"graph\": {\"source\": " + detail::json_string(r.source) +
                      ", \"vertices\": " + std::to_string(r.vertices) + ", \"edges\": " + std::to_string(r.edges) +
                      ", \"edge_regular_degree\": " + (r.edge_degree ? std::to_string(*r.edge_degree) : "null") +
                      ", \"weighted\": " + (r.weighted ? "true" : "false") + "},\n";
    out += "  \"notes\": [";
    for (std::size_t i = 0; i < r.notes.size(); ++i)
        out += (i ? ", " : "") + detail::json_string(r.notes[i]);
    out += "],\n  \"checks\": [\n";
    for (std::size_t i = 0; i < r.checks.size(); ++i)
        out += "    " + detail::json_check(r.checks[i]) + (i + 1 < r.checks.size() ? ",\n" : "\n");
    out += "  ],\n  \"curvature\": [\n";
    for (std::size_t i = 0; i < r.curvature.size(); ++i) {
        const auto& row = r.curvature[i];
        out += "    [" + detail::json_string(row.label) + ", " + detail::json_string(row.label2) + ", " +
               format_number(row.kappa) + "]" + (i + 1 < r.curvature.size() ? ",\n" : "\n");
    }
    out += "  ],\n  \"spectra\": {";
    for (std::size_t i = 0; i < r.spectra.size(); ++i)
        out += (i ? ", " : "") + detail::json_string(r.spectra[i].first) + ": " + detail::json_array(r.spectra[i].second);
    out += "},\n  \"passed\": " + std::string(r.passed() ? "true" : "false");
    if (r.elapsed_seconds)
        out += ",\n  \"elapsed_seconds\": " + format_number(*r.elapsed_seconds);
    return out + "\n}\n";
}

inline std::string render_curvature_csv(const std::vector<CurvatureRow>& rows)
{
    std::string out = "e,e2,distance,wasserstein,kappa,kappa_exact\n";
    for (const auto& row : rows)
        out += row.label + "," + row.label2 + "," + format_number(row.distance) + "," + format_number(row.wasserstein) +
               "," + format_number(row.kappa) + "," + row.exact + "\n";
    return out;
}

inline std::string render_text(const VerificationReport& r)
{
    const auto num = [](double x) { return format_number(x, 6); };
    std::string out = "graph " + r.source + ": |V|=" + std::to_string(r.vertices) + " |E|=" + std::to_string(r.edges);
    out += r.edge_degree ? " edge-regular d=" + std::to_string(*r.edge_degree) : std::string(" not edge-regular");
    out += r.weighted ? " weighted\n" : "\n";
    for (const auto& n : r.notes)
        out += "note: " + n + "\n";
    out += "\n" + detail::pad("check", 46) + detail::pad("lhs", 14) + detail::pad("rhs", 14) + "result\n";
    for (const auto& c : r.checks) {
        std::string subject = c.witnesses.size() == 1 ? c.witnesses.front().subject : std::string();
        std::string result = !c.holds ? "n/a" : *c.holds ? "holds" : "FAILS";
        if (c.holds && c.equality && c.relation == Relation::AtLeast)
            result += " (equality)";
        if (!c.asserted)
            result += " [diagnostic]";
        if (!c.reason.empty())
            result += " - " + c.reason;
        const std::string name = subject.empty() ? c.name : c.name + " " + subject;
        out += detail::pad(name, 46) + detail::pad(num(c.lhs), 14) + detail::pad(num(c.rhs), 14) + result + "\n";
    }
    out += "\ncurvature\n";
    for (const auto& row : r.curvature)
        out += "  " + detail::pad(row.label + " " + row.label2, 20) + num(row.kappa) +
               (row.exact.empty() ? "" : "  (" + row.exact + ")") + "\n";
    out += "\nspectra\n";
    for (const auto& [name, values] : r.spectra) {
        out += "  " + detail::pad(name, 9);
        for (double x : values)
            out += " " + num(std::abs(x) < 1e-12 ? 0.0 : x);
        out += "\n";
    }
    out += "\n" + std::to_string(r.failures()) + " failed check(s)\n";
    if (r.elapsed_seconds)
        out += "elapsed " + num(*r.elapsed_seconds) + " s\n";
    return out;
}

} // namespace edgericci
