#pragma once

#include "edgericci/error.hpp"
#include "edgericci/graph.hpp"
#include "edgericci/laplacian.hpp"
#include "edgericci/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace edgericci {

struct JacobiOptions {
    double relative_offdiagonal = 1e-13;
    int max_sweeps = 100;
    double symmetry_tolerance = 1e-12;
};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi sweeps, ascending.
inline std::vector<double> eigenvalues_symmetric(const Matrix& m, const JacobiOptions& opt = {})
{
    if (!m.square())
        throw Error(ErrorCode::NotSymmetric, "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    const std::size_t n = m.rows();
    const double norm = m.frobenius();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(m(i, j) - m(j, i)) > opt.symmetry_tolerance * norm)
                throw Error(ErrorCode::NotSymmetric, "entries (" + std::to_string(i) + "," + std::to_string(j) +
                                                         ") and transpose differ");

    Matrix a = m;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            a(i, j) = a(j, i) = 0.5 * (m(i, j) + m(j, i));

    const auto off = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j)
                    s += a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    int sweep = 0;
    while (off() >= opt.relative_offdiagonal * norm && norm > 0.0) {
        if (sweep++ == opt.max_sweeps)
            throw Error(ErrorCode::NoConvergence, "Jacobi did not converge in " + std::to_string(opt.max_sweeps) +
                                                      " sweeps");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0)
                    continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = a(i, i);
    std::sort(out.begin(), out.end());
    return out;
}

struct Spectrum {
    std::vector<double> eigenvalues; // ascending
    double zero_threshold = 0.0;
    std::size_t zero_multiplicity = 0;
    std::optional<double> first_nonzero;

    /// Smallest eigenvalue above the zero threshold.
    double lambda1() const
    {
        if (!first_nonzero)
            throw Error(ErrorCode::NoNonzeroEigenvalue,
                        "every eigenvalue is within " + std::to_string(zero_threshold) + " of zero");
        return *first_nonzero;
    }

    std::vector<double> nonzero() const
    {
        std::vector<double> out;
        for (double x : eigenvalues)
            if (std::abs(x) > zero_threshold)
                out.push_back(x);
        return out;
    }
};

constexpr double default_zero_tolerance = 1e-8;

/// Classifies eigenvalues with threshold rel_zero_tol * max(1, λ_max).
inline Spectrum classify(std::vector<double> eigenvalues, double rel_zero_tol = default_zero_tolerance)
{
    if (!(rel_zero_tol > 0.0))
        throw Error(ErrorCode::InvalidParameter, "zero tolerance must be positive");
    std::sort(eigenvalues.begin(), eigenvalues.end());
    Spectrum s;
    s.eigenvalues = std::move(eigenvalues);
    const double top = s.eigenvalues.empty() ? 0.0 : s.eigenvalues.back();
    s.zero_threshold = rel_zero_tol * std::max(1.0, top);
    for (double x : s.eigenvalues) {
        if (std::abs(x) <= s.zero_threshold)
            ++s.zero_multiplicity;
        else if (x > s.zero_threshold && !s.first_nonzero)
            s.first_nonzero = x;
    }
    return s;
}

/// diag(√w) L diag(1/√w) with w the weights on the operator's domain. For
/// L1 this is W1^½ D0 W0^-1 D0^T W1^½; for L0 it is W0^-½ D0^T W1 D0 W0^-½.
inline Matrix symmetrized(const LaplacianMatrix& L)
{
    const auto w = L.domain_weights();
    Matrix s = L.data;
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j)
            s(i, j) *= std::sqrt(w[i]) / std::sqrt(w[j]);
    return s;
}

inline Spectrum spectrum_of(const LaplacianMatrix& L, double rel_zero_tol = default_zero_tolerance)
{
    return classify(eigenvalues_symmetric(symmetrized(L)), rel_zero_tol);
}

struct EquivalenceReport {
    bool equivalent = false;
    Spectrum l0;
    Spectrum l1;
    double max_deviation = 0.0;
    std::string diagnostic;
};

/// Nonzero spectra of L0 and L1 under the same weights, compared after
/// sorting with absolute tolerance.
inline EquivalenceReport spectral_equivalence_check(const Graph& g, const WeightMatrices& weights,
                                                    double tolerance = 1e-8,
                                                    double rel_zero_tol = default_zero_tolerance)
{
    EquivalenceReport r;
    r.l0 = spectrum_of(assemble(LaplacianKind::L0, g, weights), rel_zero_tol);
    r.l1 = spectrum_of(assemble(LaplacianKind::L1, g, weights), rel_zero_tol);
    const auto a = r.l0.nonzero();
    const auto b = r.l1.nonzero();
    if (a.size() != b.size()) {
        r.diagnostic = "nonzero counts differ: L0 has " + std::to_string(a.size()) + ", L1 has " +
                       std::to_string(b.size());
        return r;
    }
    for (std::size_t i = 0; i < a.size(); ++i)
        r.max_deviation = std::max(r.max_deviation, std::abs(a[i] - b[i]));
    r.equivalent = r.max_deviation <= tolerance;
    if (!r.equivalent)
        r.diagnostic = "largest deviation " + std::to_string(r.max_deviation);
    return r;
}

} // namespace edgericci
