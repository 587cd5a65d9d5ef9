// edgericci: curvature, spectra and verification reports for small graphs.
//
//   edgericci generate  --family star:5 --output g.txt
//   edgericci curvature --input g.txt --all-pairs --format csv
//   edgericci spectrum  --family cycle:5 --dump-matrix Lprime1
//   edgericci verify    --family complete:4 --format json
//   edgericci selftest  --seed 42
//
// Exit status: 0 success, 1 a verification check failed, 2 usage or input error.

#include "edgericci/curvature.hpp"
#include "edgericci/generators.hpp"
#include "edgericci/graph.hpp"
#include "edgericci/io.hpp"
#include "edgericci/laplacian.hpp"
#include "edgericci/spectra.hpp"
#include "edgericci/testing/acceptance.hpp"
#include "edgericci/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace edgericci;

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

struct Settings {
    std::string input;
    std::string family;
    std::string output;
    std::string format = "text";
    std::string dump_kind;
    bool weighted = false;
    bool all_pairs = false;
    bool timing = false;
    double zero_tol = default_zero_tolerance;
    std::uint64_t seed = 42;
    std::size_t jobs = 1;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path)
{
    if (path == "-")
        return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), {}};
}

void write_output(const Settings& s, const std::string& text)
{
    if (s.output.empty() || s.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(s.output, std::ios::binary);
    if (!out)
        throw UsageError("cannot write " + s.output);
    out << text;
}

/// The graph named by --input or --family, plus the family when given.
struct Source {
    std::optional<GraphFamily> family;
    std::optional<Graph> graph;
    std::optional<WeightedGraph> weighted;
};

Source load(const Settings& s)
{
    if (s.input.empty() == s.family.empty())
        throw UsageError("give exactly one of --input and --family");
    Source src;
    if (!s.family.empty()) {
        if (s.weighted)
            throw UsageError("--weighted needs a weighted JSON document via --input");
        src.family = parse_family(s.family, s.seed);
        src.graph = generate(*src.family);
        return src;
    }
    const std::string text = read_input(s.input);
    if (s.weighted)
        src.weighted = parse_weighted(text);
    else
        src.graph = parse_edgelist(text);
    return src;
}

VerifyOptions verify_options(const Settings& s) { return {s.zero_tol, 1e-9, s.jobs}; }

int run_generate(const Settings& s)
{
    if (s.family.empty())
        throw UsageError("generate needs --family");
    const Graph g = generate(parse_family(s.family, s.seed));
    write_output(s, s.weighted ? serialize_weighted(WeightedGraph(g)) : serialize_edgelist(g));
    return exit_ok;
}

int run_curvature(const Settings& s)
{
    const Source src = load(s);
    std::vector<CurvatureRow> rows;
    if (src.weighted) {
        const WeightedEdgeSpace space(*src.weighted);
        const auto pairs = s.all_pairs ? all_pairs(space.edge_count()) : adjacent_pairs(space.base());
        for (const auto& p : ricci_pairs(space, pairs, s.jobs))
            rows.push_back(to_row(space.graph(), p));
    } else {
        const EdgeSpace space(*src.graph);
        const auto pairs = s.all_pairs ? all_pairs(space.edge_count()) : adjacent_pairs(space);
        for (const auto& p : ricci_pairs(space, pairs, s.jobs))
            rows.push_back(to_row(space.graph(), p));
    }

    std::string out;
    if (s.format == "csv") {
        out = render_curvature_csv(rows);
    } else if (s.format == "json") {
        out = "{\"curvature\": [\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            out += "  {\"e\": " + detail::json_string(r.label) + ", \"e2\": " + detail::json_string(r.label2) +
                   ", \"distance\": " + format_number(r.distance) + ", \"wasserstein\": " + format_number(r.wasserstein) +
                   ", \"kappa\": " + format_number(r.kappa) +
                   (r.exact.empty() ? std::string() : ", \"exact\": " + detail::json_string(r.exact)) + "}" +
                   (i + 1 < rows.size() ? ",\n" : "\n");
        }
        out += "]}\n";
    } else {
        for (const auto& r : rows)
            out += detail::pad(r.label + " " + r.label2, 20) + format_number(r.kappa, 6) +
                   (r.exact.empty() ? "" : "  (" + r.exact + ")") + "\n";
    }
    write_output(s, out);
    return exit_ok;
}

int run_spectrum(const Settings& s)
{
    const Source src = load(s);
    const Graph& g = src.weighted ? src.weighted->graph() : *src.graph;
    std::vector<std::pair<std::string, LaplacianMatrix>> operators;
    if (src.weighted) {
        const auto w = WeightMatrices::from(*src.weighted);
        operators.emplace_back("L0", assemble(LaplacianKind::L0, g, w));
        operators.emplace_back("L1", assemble_weighted_down(*src.weighted));
    } else {
        operators.emplace_back("L0", assemble(LaplacianKind::L0, g));
        operators.emplace_back("L1", assemble(LaplacianKind::L1, g));
        operators.emplace_back("Delta0", assemble(LaplacianKind::Delta0, g));
        if (EdgeSpace(g).edge_count() > 1)
            operators.emplace_back("Lprime1", assemble(LaplacianKind::Lprime1, g));
    }

    if (!s.dump_kind.empty()) {
        const LaplacianKind kind = parse_laplacian_kind(s.dump_kind);
        if (kind == LaplacianKind::WeightedDown && !src.weighted)
            throw UsageError("weighted-down needs --weighted");
        const LaplacianMatrix L = src.weighted && kind == LaplacianKind::WeightedDown
                                      ? assemble_weighted_down(*src.weighted)
                                  : src.weighted ? assemble(kind, g, WeightMatrices::from(*src.weighted))
                                                 : assemble(kind, g);
        write_output(s, dump_matrix(L));
        return exit_ok;
    }

    std::string out = s.format == "json" ? "{\"spectra\": {\n" : "";
    for (std::size_t i = 0; i < operators.size(); ++i) {
        const auto& [name, L] = operators[i];
        const Spectrum sp = spectrum_of(L, s.zero_tol);
        if (s.format == "json") {
            out += "  " + detail::json_string(name) + ": {\"eigenvalues\": " + detail::json_array(sp.eigenvalues) +
                   ", \"zero_threshold\": " + format_number(sp.zero_threshold) +
                   ", \"zero_multiplicity\": " + std::to_string(sp.zero_multiplicity) +
                   ", \"lambda1\": " + (sp.first_nonzero ? format_number(*sp.first_nonzero) : "null") + "}" +
                   (i + 1 < operators.size() ? ",\n" : "\n");
        } else {
            out += detail::pad(name, 9) + "lambda1 " +
                   (sp.first_nonzero ? format_number(*sp.first_nonzero, 6) : std::string("none")) + "  zeros " +
                   std::to_string(sp.zero_multiplicity) + "\n         ";
            for (double x : sp.eigenvalues)
                out += " " + format_number(std::abs(x) <= sp.zero_threshold ? 0.0 : x, 6);
            out += "\n";
        }
    }
    if (s.format == "json")
        out += "}}\n";
    write_output(s, out);
    return exit_ok;
}

int run_verify(const Settings& s)
{
    const Source src = load(s);
    const auto start = std::chrono::steady_clock::now();
    VerificationReport report = src.weighted ? verify_weighted(*src.weighted, verify_options(s), s.all_pairs)
                                             : verify_graph(*src.graph, verify_options(s), src.family, s.all_pairs);
    if (!s.input.empty())
        report.source = s.input;
    if (s.timing)
        report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (s.format == "json")
        write_output(s, render_json(report));
    else if (s.format == "csv")
        write_output(s, render_curvature_csv(report.curvature));
    else
        write_output(s, render_text(report));
    return report.passed() ? exit_ok : exit_failed;
}

int run_selftest(const Settings& s)
{
    testing::AcceptanceOptions opt;
    opt.seed = s.seed;
    opt.jobs = s.jobs;
    std::ostringstream os;
    const bool ok = testing::report_acceptance(testing::run_acceptance(opt), os);
    write_output(s, os.str());
    return ok ? exit_ok : exit_failed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Coarse Ricci curvature on graph edges, edge Laplacians and their spectral bounds"};
    app.require_subcommand(1);
    Settings s;

    const auto input_options = [&s](CLI::App* sub) {
        sub->add_option("--input", s.input, "edge list file, or weighted JSON with --weighted ('-' for stdin)");
        sub->add_option("--family", s.family, std::string(family_grammar));
        sub->add_flag("--weighted", s.weighted, "read the weighted JSON document format");
        sub->add_option("--seed", s.seed, "seed for random families");
        sub->add_option("--jobs", s.jobs, "worker threads for pair computations")->check(CLI::PositiveNumber);
    };
    const auto output_options = [&s](CLI::App* sub, bool formats) {
        sub->add_option("--output", s.output, "write to this file instead of stdout");
        if (formats)
            sub->add_option("--format", s.format, "json, csv or text")
                ->check(CLI::IsMember({"json", "csv", "text"}));
    };

    auto* gen = app.add_subcommand("generate", "write the edge list of a graph family");
    gen->add_option("--family", s.family, std::string(family_grammar))->required();
    gen->add_option("--seed", s.seed, "seed for random families");
    gen->add_flag("--weighted", s.weighted, "emit the weighted JSON document with unit weights");
    output_options(gen, false);

    auto* curv = app.add_subcommand("curvature", "curvature of adjacent (or all) edge pairs");
    input_options(curv);
    output_options(curv, true);
    curv->add_flag("--all-pairs", s.all_pairs, "every distinct pair, not only adjacent ones");

    auto* spec = app.add_subcommand("spectrum", "spectra of L0, L1, Delta0 and L'1");
    input_options(spec);
    output_options(spec, true);
    spec->add_option("--zero-tol", s.zero_tol, "relative zero threshold for eigenvalues")
        ->check(CLI::PositiveNumber);
    spec->add_option("--dump-matrix", s.dump_kind, "print the matrix: L0, L1, Delta0, Lprime1 or weighted-down");

    auto* ver = app.add_subcommand("verify", "run every applicable check and print a report");
    input_options(ver);
    output_options(ver, true);
    ver->add_option("--zero-tol", s.zero_tol, "relative zero threshold for eigenvalues")
        ->check(CLI::PositiveNumber);
    ver->add_flag("--all-pairs", s.all_pairs, "tabulate every distinct pair");
    ver->add_flag("--timing", s.timing, "include elapsed time (output is then not reproducible)");

    auto* self = app.add_subcommand("selftest", "run the acceptance suite, one line per criterion");
    self->add_option("--seed", s.seed, "seed for the random corpora");
    self->add_option("--jobs", s.jobs, "worker threads for pair computations")->check(CLI::PositiveNumber);
    self->add_option("--output", s.output, "write to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (gen->parsed())
            return run_generate(s);
        if (curv->parsed())
            return run_curvature(s);
        if (spec->parsed())
            return run_spectrum(s);
        if (ver->parsed())
            return run_verify(s);
        return run_selftest(s);
    } catch (const UsageError& e) {
        std::cerr << "edgericci: " << e.what() << '\n';
        return exit_usage;
    } catch (const Error& e) {
        std::cerr << "edgericci: " << e.what() << '\n';
        if (!s.family.empty() && e.code() == ErrorCode::InvalidParameter)
            std::cerr << family_grammar << '\n';
        return exit_usage;
    }
}
