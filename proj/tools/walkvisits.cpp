// walkvisits: exact and simulated statistics of a symmetric lattice walk and
// its visit count at a marked site.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "walkvisits/commands.hpp"

namespace {

using namespace walkvisits;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

unsigned worker_count() {
    unsigned n = std::max(1U, std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("WALKVISITS_THREADS")) {
        try {
            const long v = std::stol(cap);
            if (v >= 1) {
                n = std::min<unsigned>(n, static_cast<unsigned>(v));
            }
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring malformed WALKVISITS_THREADS='" << cap << "'\n";
        }
    }
    return n;
}

void emit(const io::OutputRecord& record, io::Format format, const std::string& out) {
    const std::string text = io::render(record, format);
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        io::write_atomically(out, text);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact law of a symmetric lattice walk and its visits to a marked site"};
    app.require_subcommand(1);

    io::Format format = io::Format::csv;
    std::string out;
    const std::map<std::string, io::Format> formats{{"csv", io::Format::csv},
                                                    {"json", io::Format::json}};
    const auto common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
        cmd->add_option("--out", out, "Output file (default: stdout)");
    };

    std::int64_t n = 0;
    std::int64_t z = 1;

    auto* joint = app.add_subcommand("joint", "Exact joint table P(X, K | Z)");
    joint->add_option("--n", n, "Step count N")->required();
    joint->add_option("--z", z, "Marked site Z >= 1")->required();
    common(joint);

    std::string which = "x";
    auto* marginal = app.add_subcommand("marginal", "Position or visit-count marginal");
    marginal->add_option("--which", which, "x or k")->check(CLI::IsMember({"x", "k"}));
    marginal->add_option("--n", n, "Step count N")->required();
    marginal->add_option("--z", z, "Marked site Z >= 1")->required();
    common(marginal);

    auto* moments = app.add_subcommand("moments", "E[X], E[X^2], E[K], E[K^2]");
    moments->add_option("--n", n, "Step count N")->required();
    moments->add_option("--z", z, "Marked site Z >= 1")->required();
    common(moments);

    double scaled_z = 1.0;
    std::string grid_spec = "-3:3:61,0:3:31";
    auto* limit = app.add_subcommand("limit", "Diffusion-limit density grid and ridge");
    limit->add_option("--z", scaled_z, "Scaled marked site z > 0")->required();
    limit->add_option("--grid", grid_spec, "xmin:xmax:steps,kmin:kmax:steps");
    common(limit);

    commands::SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo histogram with goodness of fit");
    simulate->add_option("--n", sim.n, "Step count N")->required();
    simulate->add_option("--z", sim.z, "Marked site Z >= 1")->required();
    simulate->add_option("--trials", sim.trials, "Number of simulated walks")->required();
    simulate->add_option("--seed", sim.seed, "64-bit seed");
    simulate->add_option("--tv-threshold", sim.tv_threshold, "TV distance reported as acceptable");
    common(simulate);

    std::string depth = "quick";
    auto* verify = app.add_subcommand("verify", "Cross-check closed forms against the oracles");
    verify->add_option("--depth", depth, "quick or full")->check(CLI::IsMember({"quick", "full"}));
    common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (joint->parsed()) {
            emit(commands::joint(n, z), format, out);
        } else if (marginal->parsed()) {
            emit(commands::marginal(n, z, which == "x" ? commands::Marginal::x : commands::Marginal::k),
                 format, out);
        } else if (moments->parsed()) {
            emit(commands::moments(n, z), format, out);
        } else if (limit->parsed()) {
            emit(commands::limit(scaled_z, commands::parse_grid(grid_spec)), format, out);
        } else if (simulate->parsed()) {
            sim.workers = worker_count();
            emit(commands::simulate(sim), format, out);
        } else if (verify->parsed()) {
            const auto report = verify::run(depth == "full" ? verify::Depth::full : verify::Depth::quick);
            emit(commands::verify_record(report, depth), format, out);
            for (const auto& c : report.checks) {
                std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.seconds << " s) "
                          << c.detail << '\n';
            }
            return report.passed() ? 0 : kExitVerifyFailed;
        }
    } catch (const walkvisits::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
