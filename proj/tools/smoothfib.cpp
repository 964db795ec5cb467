// Command line front end: analyze, hilbert, potential and diagram subcommands.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <smoothfib/analysis.hpp>

using namespace smoothfib;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::SchemaError, path + ": cannot open");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::RangeError, path + ": cannot write");
    out << text;
}

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::SchemaError:
        case ErrorKind::TargetMismatch:
        case ErrorKind::DimensionMismatch:
        case ErrorKind::EmptyInput:
        case ErrorKind::RangeError: return 2;
        case ErrorKind::NotAdmissible: return 3;
        default: return 4;
    }
}

// The decomposition with {0} summands removed, after the admissibility check.
MinkowskiDecomposition admissible(const AnalysisRequest& req) {
    AdmissibilityReport r = is_admissible(req.decomposition);
    if (!r.ok) throw Error(ErrorKind::NotAdmissible, r.violations.front());
    return drop_point_summands(req.decomposition);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Smoothings of toric cone singularities and their fibrations"};
    app.require_subcommand(1);

    std::string file, out_path, svg_path;
    AnalysisOptions opts;
    bool critical = false;

    auto* analyze = app.add_subcommand("analyze", "run the full pipeline and print the JSON report");
    analyze->add_option("file", file, "input JSON")->required()->check(CLI::ExistingFile);
    analyze->add_option("--out", out_path, "write the report here instead of stdout");
    analyze->add_option("--svg", svg_path, "also write the base diagram (n = 2 only)");
    analyze->add_option("--hilbert-box", opts.hilbert_box, "box half-width for the generation check")
        ->check(CLI::Range(1, 8));
    analyze->add_flag("--fast", opts.fast, "skip the generation check");

    auto* hilbert = app.add_subcommand("hilbert", "print the Hilbert basis of the dual of sigma-tilde");
    hilbert->add_option("file", file, "input JSON")->required()->check(CLI::ExistingFile);

    auto* potential = app.add_subcommand("potential", "print the potential");
    potential->add_option("file", file, "input JSON")->required()->check(CLI::ExistingFile);
    potential->add_flag("--critical", critical, "also report critical points");

    auto* diagram = app.add_subcommand("diagram", "write the base diagram as SVG");
    diagram->add_option("file", file, "input JSON")->required()->check(CLI::ExistingFile);
    diagram->add_option("--svg", svg_path, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (!svg_path.empty()) opts.svg_path = svg_path;
        AnalysisRequest req = parse_input(read_file(file), opts);

        if (*analyze || *diagram) {
            if (*diagram) req.options.fast = true;
            AnalysisReport rep = run_pipeline(req);
            for (const auto& f : rep.failures) std::cerr << f << "\n";
            if (*analyze) {
                if (out_path.empty()) std::cout << rep.str();
                else write_file(out_path, rep.str());
            }
            if (req.options.svg_path && rep.exit_code == 0) write_file(*req.options.svg_path, emit_svg(rep));
            return rep.exit_code;
        }
        if (*hilbert) {
            MinkowskiDecomposition d = admissible(req);
            for (const auto& h : hilbert_basis(dual(sigma_tilde(d)))) std::cout << to_string(h) << "\n";
            return 0;
        }
        if (*potential) {
            MinkowskiDecomposition d = admissible(req);
            std::cout << build_potential(d).str() << "\n";
            if (critical) std::cout << detail::critical_json(critical_exists(d)).dump(2) << "\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code_for(e);
    }
    return 0;
}
