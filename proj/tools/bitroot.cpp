#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bitroot/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"certified real-root isolation for polynomials with bitstream coefficients"};
    app.require_subcommand(1);

    bitroot::CliOptions opt;
    std::string expression, suite, format = "json";
    bool stats_flag = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--initial-precision", opt.initial_precision,
                        "starting working precision in bits")
            ->capture_default_str();
        cmd->add_option("--max-precision", opt.max_precision,
                        "precision cap; exceeding it aborts with exit code 2")
            ->capture_default_str();
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "text"}))
            ->capture_default_str();
        cmd->add_option("--trace", opt.trace_file,
                        "write a per-node trace file (one JSON object per line); the "
                        "BITROOT_TRACE_DIR environment variable overrides its directory");
        cmd->add_flag("--stats", stats_flag, "include run statistics in text output");
        cmd->add_option("--seed", opt.seed, "seed for randomized suites")->capture_default_str();
    };

    CLI::App* isolate = app.add_subcommand(
        "isolate", "isolate all real roots of a polynomial expression in x");
    isolate
        ->add_option("expression", expression,
                     "polynomial over {integers, rationals, sqrt(rational), pi}, e.g. "
                     "\"16*sqrt(2)*x^2 - 8*x + pi/8\"")
        ->required();
    add_common(isolate);

    CLI::App* bench =
        app.add_subcommand("bench", "run a benchmark suite and emit one stats row per instance");
    bench
        ->add_option("suite", suite,
                     "suite spec: mignotte:LO..HI[:AEXP] (a = 2^AEXP) or random:COUNT[:N[:TAU]]")
        ->required();
    add_common(bench);

    CLI::App* verify = app.add_subcommand(
        "verify", "cross-check the engine against an exact Sturm oracle on random instances");
    verify->add_option("--count", opt.count, "number of random instances")->capture_default_str();
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    opt.json = format == "json";
    opt.show_stats = stats_flag;

    try {
        if (isolate->parsed())
            return bitroot::run_isolate(bitroot::parse_poly(expression), opt, std::cout,
                                        std::cerr);
        if (bench->parsed()) return bitroot::run_bench(suite, opt, std::cout, std::cerr);
        return bitroot::run_verify(opt, std::cout, std::cerr);
    } catch (const bitroot::parse_error& e) {
        std::cerr << "error: " << e.what() << " (at position " << e.position << ")\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
