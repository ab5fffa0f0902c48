#include "mirror/suites.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

struct Options {
    mirror::SuiteConfig cfg;
    std::string suite, action, mode = "auto", output, csv;
    double tol = 0, residual_tol = 0, dedup_radius = 0, degenerate_sv = 0;
    bool timings = false;
};

void add_common(CLI::App* app, Options& o) {
    app->add_option("--rank", o.cfg.rank, "Rank n of SL(n+1)");
    app->add_option("--fixed", o.cfg.fixed, "Simple indices in the Levi of P, comma separated")->delimiter(',');
    app->add_option("--q", o.cfg.q, "Quantum parameters per free index (rational or a+bi)")->delimiter(',');
    app->add_option("--lambda", o.cfg.lambda, "Equivariant parameters, n+1 entries summing to 0")->delimiter(',');
    app->add_option("--samples", o.cfg.samples, "Samples per check (0: suite default)");
    app->add_option("--seed", o.cfg.seed, "Seed (default 42 or MIRROR_SEED)");
    app->add_option("--tol", o.tol, "Check tolerance");
    app->add_option("--residual-tol", o.residual_tol, "Newton residual tolerance");
    app->add_option("--dedup-radius", o.dedup_radius, "Relative radius for merging solutions");
    app->add_option("--degenerate-sv", o.degenerate_sv, "Hessian singular value below which a point is degenerate");
    app->add_option("--starts", o.cfg.starts, "Newton starts (0: 200 per fiber dimension)");
    app->add_option("--threads", o.cfg.threads, "Worker threads");
    app->add_option("--method", o.cfg.method, "Solver: auto, quiver, chart");
    app->add_option("--mode", o.mode, "Arithmetic: auto, exact, float");
    app->add_option("--output", o.output, "Write the JSON report here instead of stdout");
    app->add_option("--csv", o.csv, "Write a CSV extract of critical records");
    app->add_flag("--timings", o.timings, "Include wall-clock timings (breaks byte stability)");
    app->add_option("--word", o.cfg.word, "Reduced word, comma separated")->delimiter(',');
    app->add_option("--v", o.cfg.v, "Word for v, comma separated")->delimiter(',');
    app->add_option("--primes", o.cfg.primes, "Primes for point counts")->delimiter(',');
    app->add_option("--max-codim", o.cfg.max_codim, "Largest l(w) - l(v) in point counts");
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    if (const char* env = std::getenv("MIRROR_SEED")) {
        try {
            std::size_t used = 0;
            const std::string text = env;
            o.cfg.seed = std::stoull(text, &used);
            if (used != text.size() || text.empty() || text[0] == '-') throw std::invalid_argument(text);
        } catch (const std::exception&) {
            std::cerr << "error: MIRROR_SEED must be a non-negative integer, got '" << env << "'\n";
            return 2;
        }
    }

    CLI::App app{"Mirror models of type A flag varieties: critical points and structural checks"};
    app.require_subcommand(1);
    app.allow_windows_style_options(false);
    CLI::App* solve = app.add_subcommand("solve", "Solve the fiberwise critical-point equations");
    CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", o.suite, "braid, compare, peterson")->required();
    CLI::App* deodhar = app.add_subcommand("deodhar", "Deodhar decomposition checks");
    deodhar->add_option("action", o.action, "enumerate, sample, count")->required();
    for (CLI::App* sub : {solve, verify, deodhar}) add_common(sub, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (solve->parsed()) {
            o.cfg.suite = mirror::SuiteConfig::Suite::Solve;
        } else if (verify->parsed()) {
            o.cfg.suite = mirror::parse_suite(o.suite);
            if (o.cfg.suite == mirror::SuiteConfig::Suite::Solve || o.cfg.suite == mirror::SuiteConfig::Suite::Deodhar)
                throw mirror::ConfigError("verify takes braid, compare or peterson");
        } else {
            o.cfg.suite = mirror::SuiteConfig::Suite::Deodhar;
            o.cfg.action = o.action;
        }
        o.cfg.mode = mirror::parse_mode(o.mode);
        CLI::App* sub = solve->parsed() ? solve : verify->parsed() ? verify : deodhar;
        if (sub->count("--tol")) o.cfg.tol = o.tol;
        if (sub->count("--residual-tol")) o.cfg.residual_tol = o.residual_tol;
        if (sub->count("--dedup-radius")) o.cfg.dedup_radius = o.dedup_radius;
        if (sub->count("--degenerate-sv")) o.cfg.degenerate_sv = o.degenerate_sv;

        const mirror::ReportDocument doc = mirror::run_suite(o.cfg);
        const std::string text = mirror::serialize(doc, o.timings);
        if (o.output.empty()) {
            std::cout << text;
        } else if (!write_file(o.output, text)) {
            std::cerr << "error: cannot write " << o.output << "\n";
            return 2;
        }
        if (!o.csv.empty() && !write_file(o.csv, mirror::records_csv(doc.critical))) {
            std::cerr << "error: cannot write " << o.csv << "\n";
            return 2;
        }
        std::cerr << doc.suite << ": " << doc.count(mirror::Status::Pass) << " pass, " << doc.count(mirror::Status::Fail) << " fail, "
                  << doc.count(mirror::Status::Degenerate) << " degenerate, " << doc.count(mirror::Status::Skipped) << " skipped\n";
        return mirror::exit_code_for(doc);
    } catch (const mirror::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mirror::InvariantViolation& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
