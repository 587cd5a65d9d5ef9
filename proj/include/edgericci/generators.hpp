#pragma once

#include "edgericci/error.hpp"
#include "edgericci/graph.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

namespace edgericci {

/// xoshiro256** seeded through splitmix64. The standard <random>
/// distributions are implementation-defined, so integer and real draws are
/// derived here directly from the 64-bit stream; identical seeds give
/// identical graphs on every platform.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed)
    {
        std::uint64_t x = seed;
        for (auto& word : state_)
            word = splitmix64(x);
    }

    static std::uint64_t splitmix64(std::uint64_t& x)
    {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next()
    {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform integer in [0, bound) by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x = next();
        while (x >= limit)
            x = next();
        return x % bound;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4]{};
};

enum class FamilyKind { Complete, Cycle, CompleteBipartite, Star, Path, RandomTree, RandomConnected, Circulant, Petersen };

struct GraphFamily {
    FamilyKind kind = FamilyKind::Complete;
    std::size_t n = 0;
    std::size_t m = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::size_t> offsets;

    static GraphFamily make(FamilyKind kind, std::size_t n, std::size_t m = 0, double p = 0.0,
                            std::uint64_t seed = 0, std::vector<std::size_t> offsets = {})
    {
        GraphFamily f;
        f.kind = kind;
        f.n = n;
        f.m = m;
        f.p = p;
        f.seed = seed;
        f.offsets = std::move(offsets);
        return f;
    }

    static GraphFamily complete(std::size_t n) { return make(FamilyKind::Complete, n); }
    static GraphFamily cycle(std::size_t n) { return make(FamilyKind::Cycle, n); }
    static GraphFamily complete_bipartite(std::size_t n, std::size_t m)
    {
        return make(FamilyKind::CompleteBipartite, n, m);
    }
    static GraphFamily star(std::size_t m) { return make(FamilyKind::Star, 1, m); }
    static GraphFamily path(std::size_t n) { return make(FamilyKind::Path, n); }
    static GraphFamily random_tree(std::size_t n, std::uint64_t seed)
    {
        return make(FamilyKind::RandomTree, n, 0, 0.0, seed);
    }
    static GraphFamily random_connected(std::size_t n, double p, std::uint64_t seed)
    {
        return make(FamilyKind::RandomConnected, n, 0, p, seed);
    }
    static GraphFamily circulant(std::size_t n, std::vector<std::size_t> offsets)
    {
        return make(FamilyKind::Circulant, n, 0, 0.0, 0, std::move(offsets));
    }
    static GraphFamily petersen() { return make(FamilyKind::Petersen, 10); }

    std::string name() const
    {
        switch (kind) {
        case FamilyKind::Complete: return "complete:" + std::to_string(n);
        case FamilyKind::Cycle: return "cycle:" + std::to_string(n);
        case FamilyKind::CompleteBipartite: return "bipartite:" + std::to_string(n) + ":" + std::to_string(m);
        case FamilyKind::Star: return "star:" + std::to_string(m);
        case FamilyKind::Path: return "path:" + std::to_string(n);
        case FamilyKind::RandomTree: return "tree:" + std::to_string(n) + "@" + std::to_string(seed);
        case FamilyKind::RandomConnected:
            return "random:" + std::to_string(n) + ":" + std::to_string(p) + "@" + std::to_string(seed);
        case FamilyKind::Circulant: {
            std::string s = "circulant:" + std::to_string(n) + ":";
            for (std::size_t i = 0; i < offsets.size(); ++i)
                s += (i ? "," : "") + std::to_string(offsets[i]);
            return s;
        }
        case FamilyKind::Petersen: return "petersen";
        }
        return "?";
    }
};

namespace detail {

inline Graph graph_from_index_pairs(const std::vector<std::pair<std::size_t, std::size_t>>& pairs)
{
    std::vector<std::pair<std::string, std::string>> labeled;
    labeled.reserve(pairs.size());
    for (const auto& [a, b] : pairs)
        labeled.emplace_back(std::to_string(a), std::to_string(b));
    return Graph::from_label_pairs(labeled);
}

/// Decodes a uniformly random Prüfer sequence into tree edges on 0..n-1.
inline std::vector<std::pair<std::size_t, std::size_t>> random_tree_edges(std::size_t n, Xoshiro256& rng)
{
    if (n == 2)
        return {{0, 1}};
    std::vector<std::size_t> code(n - 2);
    for (auto& c : code)
        c = static_cast<std::size_t>(rng.below(n));
    std::vector<std::size_t> degree(n, 1);
    for (auto c : code)
        ++degree[c];
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> leaves;
    for (std::size_t v = 0; v < n; ++v)
        if (degree[v] == 1)
            leaves.push(v);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(n - 1);
    for (auto c : code) {
        const std::size_t leaf = leaves.top();
        leaves.pop();
        edges.emplace_back(std::min(leaf, c), std::max(leaf, c));
        if (--degree[c] == 1)
            leaves.push(c);
    }
    const std::size_t u = leaves.top();
    leaves.pop();
    const std::size_t v = leaves.top();
    edges.emplace_back(std::min(u, v), std::max(u, v));
    return edges;
}

inline void require(bool ok, const std::string& what)
{
    if (!ok)
        throw Error(ErrorCode::InvalidParameter, what);
}

} // namespace detail

inline Graph generate(const GraphFamily& f)
{
    using detail::require;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    switch (f.kind) {
    case FamilyKind::Complete:
        require(f.n >= 2, "complete(n) needs n >= 2");
        for (std::size_t i = 0; i < f.n; ++i)
            for (std::size_t j = i + 1; j < f.n; ++j)
                pairs.emplace_back(i, j);
        break;
    case FamilyKind::Cycle:
        require(f.n >= 3, "cycle(n) needs n >= 3");
        for (std::size_t i = 0; i + 1 < f.n; ++i)
            pairs.emplace_back(i, i + 1);
        pairs.emplace_back(f.n - 1, 0);
        break;
    case FamilyKind::CompleteBipartite:
    case FamilyKind::Star:
        require(f.n >= 1 && f.m >= 1, "complete_bipartite(n, m) needs n, m >= 1");
        for (std::size_t i = 0; i < f.n; ++i)
            for (std::size_t j = 0; j < f.m; ++j)
                pairs.emplace_back(i, f.n + j);
        break;
    case FamilyKind::Path:
        require(f.n >= 2, "path(n) needs n >= 2");
        for (std::size_t i = 0; i + 1 < f.n; ++i)
            pairs.emplace_back(i, i + 1);
        break;
    case FamilyKind::RandomTree: {
        require(f.n >= 2, "random_tree(n) needs n >= 2");
        Xoshiro256 rng(f.seed);
        pairs = detail::random_tree_edges(f.n, rng);
        break;
    }
    case FamilyKind::RandomConnected: {
        // Random spanning tree (Prüfer) plus every remaining pair independently with probability p.
        require(f.n >= 2, "random_connected(n, p) needs n >= 2");
        require(f.p > 0.0 && f.p <= 1.0, "random_connected(n, p) needs p in (0, 1]");
        Xoshiro256 rng(f.seed);
        pairs = detail::random_tree_edges(f.n, rng);
        std::vector<std::vector<char>> present(f.n, std::vector<char>(f.n, 0));
        for (const auto& [a, b] : pairs)
            present[a][b] = present[b][a] = 1;
        for (std::size_t i = 0; i < f.n; ++i)
            for (std::size_t j = i + 1; j < f.n; ++j)
                if (!present[i][j] && rng.uniform() < f.p)
                    pairs.emplace_back(i, j);
        break;
    }
    case FamilyKind::Circulant: {
        require(f.n >= 3, "circulant(n, offsets) needs n >= 3");
        require(!f.offsets.empty(), "circulant(n, offsets) needs at least one offset");
        std::vector<std::vector<char>> present(f.n, std::vector<char>(f.n, 0));
        for (std::size_t k : f.offsets) {
            require(k >= 1 && 2 * k <= f.n, "circulant offsets must lie in [1, n/2]");
            for (std::size_t i = 0; i < f.n; ++i) {
                const std::size_t j = (i + k) % f.n;
                if (!present[i][j]) {
                    present[i][j] = present[j][i] = 1;
                    pairs.emplace_back(i, j);
                }
            }
        }
        break;
    }
    case FamilyKind::Petersen:
        for (std::size_t i = 0; i < 5; ++i) {
            pairs.emplace_back(i, (i + 1) % 5);
            pairs.emplace_back(i, i + 5);
            pairs.emplace_back(5 + i, 5 + (i + 2) % 5);
        }
        break;
    }
    try {
        return detail::graph_from_index_pairs(pairs);
    } catch (const Error& ex) {
        throw Error(ErrorCode::InvalidParameter, f.name() + " does not produce a valid graph (" + ex.what() + ")");
    }
}

/// Parses `name[:p1[:p2]]`; random families take their seed from `seed`.
inline GraphFamily parse_family(std::string_view spec, std::uint64_t seed)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t colon = spec.find(':', start);
        parts.emplace_back(spec.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
        if (colon == std::string_view::npos)
            break;
        start = colon + 1;
    }
    const std::string spec_str(spec);
    const auto fail = [&](const std::string& why) -> void {
        throw Error(ErrorCode::InvalidParameter, "bad family spec '" + spec_str + "': " + why);
    };
    const auto to_count = [&](const std::string& token) -> std::size_t {
        std::size_t used = 0;
        unsigned long long v = 0;
        if (token.empty() || token[0] == '-')
            fail("parameter '" + token + "' is not a nonnegative integer");
        try {
            v = std::stoull(token, &used);
        } catch (const std::exception&) {
            fail("parameter '" + token + "' is not a nonnegative integer");
        }
        if (used != token.size())
            fail("parameter '" + token + "' is not a nonnegative integer");
        return static_cast<std::size_t>(v);
    };
    const auto count = [&](std::size_t i) -> std::size_t {
        if (i >= parts.size())
            fail("missing parameter " + std::to_string(i));
        return to_count(parts[i]);
    };
    const auto arity = [&](std::size_t lo, std::size_t hi) {
        if (parts.size() - 1 < lo || parts.size() - 1 > hi)
            fail("wrong number of parameters");
    };

    const std::string& name = parts[0];
    if (name == "complete") {
        arity(1, 1);
        return GraphFamily::complete(count(1));
    }
    if (name == "cycle") {
        arity(1, 1);
        return GraphFamily::cycle(count(1));
    }
    if (name == "bipartite") {
        arity(2, 2);
        return GraphFamily::complete_bipartite(count(1), count(2));
    }
    if (name == "star") {
        arity(1, 1);
        return GraphFamily::star(count(1));
    }
    if (name == "path") {
        arity(1, 1);
        return GraphFamily::path(count(1));
    }
    if (name == "tree") {
        arity(1, 1);
        return GraphFamily::random_tree(count(1), seed);
    }
    if (name == "random") {
        arity(2, 2);
        double p = 0.0;
        std::size_t used = 0;
        try {
            p = std::stod(parts[2], &used);
        } catch (const std::exception&) {
            fail("probability '" + parts[2] + "' is not a number");
        }
        if (used != parts[2].size())
            fail("probability '" + parts[2] + "' is not a number");
        return GraphFamily::random_connected(count(1), p, seed);
    }
    if (name == "circulant") {
        arity(2, 2);
        std::vector<std::size_t> offsets;
        std::size_t s = 0;
        const std::string& list = parts[2];
        while (true) {
            const std::size_t comma = list.find(',', s);
            offsets.push_back(to_count(list.substr(s, comma == std::string::npos ? std::string::npos : comma - s)));
            if (comma == std::string::npos)
                break;
            s = comma + 1;
        }
        return GraphFamily::circulant(count(1), std::move(offsets));
    }
    if (name == "petersen") {
        arity(0, 0);
        return GraphFamily::petersen();
    }
    fail("unknown family '" + name + "'");
    return {};
}

inline constexpr std::string_view family_grammar =
    "family spec: name[:p1[:p2]] with complete:N | cycle:N | bipartite:N:M | star:M | path:N | tree:N | "
    "random:N:P | circulant:N:K1,K2,... | petersen";

} // namespace edgericci
