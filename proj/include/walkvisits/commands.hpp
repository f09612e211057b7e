#ifndef WALKVISITS_COMMANDS_HPP
#define WALKVISITS_COMMANDS_HPP

// Builders for the records the command-line tool emits. Each takes the
// already-parsed arguments and returns an OutputRecord; the tool only
// handles flags, formats and files.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "walkvisits/asymptotics.hpp"
#include "walkvisits/exactwalk.hpp"
#include "walkvisits/io.hpp"
#include "walkvisits/montecarlo.hpp"
#include "walkvisits/verify.hpp"

namespace walkvisits::commands {

struct GridAxis {
    double lo = 0.0;
    double hi = 0.0;
    int steps = 2;

    double at(int i) const { return steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1); }
};

struct Grid {
    GridAxis x{-3.0, 3.0, 61};
    GridAxis k{0.0, 3.0, 31};
};

/// Parses "xmin:xmax:steps,kmin:kmax:steps".
inline Grid parse_grid(std::string_view spec) {
    const auto axis = [](std::string_view text) {
        GridAxis a;
        const auto c1 = text.find(':');
        const auto c2 = text.find(':', c1 == std::string_view::npos ? c1 : c1 + 1);
        require(c1 != std::string_view::npos && c2 != std::string_view::npos,
                "grid axis must be lo:hi:steps, got '" + std::string(text) + "'");
        const auto number = [&text](std::string_view s, auto& out) {
            const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
            require(ec == std::errc{} && p == s.data() + s.size(),
                    "bad number in grid axis '" + std::string(text) + "'");
        };
        number(text.substr(0, c1), a.lo);
        number(text.substr(c1 + 1, c2 - c1 - 1), a.hi);
        number(text.substr(c2 + 1), a.steps);
        require(a.steps >= 2 && a.hi > a.lo, "grid axis needs lo < hi and steps >= 2");
        return a;
    };
    const auto comma = spec.find(',');
    require(comma != std::string_view::npos, "grid must be 'x-axis,k-axis'");
    Grid g{axis(spec.substr(0, comma)), axis(spec.substr(comma + 1))};
    require(g.k.lo >= 0.0, "k axis must start at >= 0");
    return g;
}

inline std::vector<io::Cell> prob_cells(const Dyadic& p) { return {p.str(), p.to_double()}; }

inline io::OutputRecord joint(Steps n, Site z) {
    const JointTable table = joint_table(n, z);
    io::OutputRecord r;
    r.command = "joint";
    r.parameters = {{"n", std::to_string(n)}, {"z", std::to_string(z)}};
    r.columns = {"X", "K", "prob_exact", "prob_float"};
    for (const auto& [cell, p] : table.entries) {
        std::vector<io::Cell> row{cell.first, cell.second};
        for (auto& c : prob_cells(p)) {
            row.push_back(std::move(c));
        }
        r.rows.push_back(std::move(row));
    }
    r.footer = {{"sum_exact", table.total().str()}, {"cells", std::to_string(table.entries.size())}};
    return r;
}

enum class Marginal { x, k };

inline io::OutputRecord marginal(Steps n, Site z, Marginal which) {
    io::OutputRecord r;
    r.command = "marginal";
    r.parameters = {{"which", which == Marginal::x ? "x" : "k"},
                    {"n", std::to_string(n)},
                    {"z", std::to_string(z)}};
    r.columns = {which == Marginal::x ? "X" : "K", "prob_exact", "prob_float"};
    Dyadic total;
    const auto emit = [&](std::int64_t key, const Dyadic& p) {
        total += p;
        r.rows.push_back({key, p.str(), p.to_double()});
    };
    const JointTable table = joint_table(n, z);
    if (which == Marginal::x) {
        const SiteDist d = marginal_x(n, z);
        bool matches = true;
        for (const auto& [x, p] : d.values) {
            emit(x, p);
            matches = matches && p == p_step(n, x);
        }
        r.footer = {{"sum_exact", total.str()},
                    {"matches_p_step", matches ? "true" : "false"},
                    {"joint_row_sums_match", row_sums(table).values == d.values ? "true" : "false"}};
    } else {
        const VisitDist d = marginal_k(n, z);
        for (const auto& [k, p] : d.values) {
            emit(k, p);
        }
        r.footer = {
            {"sum_exact", total.str()},
            {"joint_column_sums_match", column_sums(table).values == d.values ? "true" : "false"}};
    }
    return r;
}

inline io::OutputRecord moments(Steps n, Site z) {
    io::OutputRecord r;
    r.command = "moments";
    r.parameters = {{"n", std::to_string(n)}, {"z", std::to_string(z)}};
    r.columns = {"moment", "exact", "float"};
    const XMoments xm = moments_x(n, z);
    const auto row = [&r](std::string name, const BigRational& v) {
        r.rows.push_back({std::move(name), v.str(), v.convert_to<double>()});
    };
    row("E[X]", xm.mean);
    row("E[X^2]", xm.second);
    row("E[K]", moments_k(n, z, 1));
    row("E[K^2]", moments_k(n, z, 2));
    return r;
}

inline io::OutputRecord limit(double z, const Grid& grid) {
    const ScaledJointDensity density(z);
    io::OutputRecord r;
    r.command = "limit";
    r.parameters = {{"z", io::format_double(z)},
                    {"grid", io::format_double(grid.x.lo) + ":" + io::format_double(grid.x.hi) + ":" +
                                 std::to_string(grid.x.steps) + "," + io::format_double(grid.k.lo) +
                                 ":" + io::format_double(grid.k.hi) + ":" +
                                 std::to_string(grid.k.steps)},
                    {"C", io::format_double(normalization_constant(z))},
                    {"C_erf", io::format_double(normalization_constant_erf(z))}};
    r.columns = {"x", "k", "atom", "continuous", "ridge_k", "ridge_density"};
    for (int i = 0; i < grid.x.steps; ++i) {
        const double x = grid.x.at(i);
        const double ridge = ridge_k(x, z);
        const double ridge_density = density.continuous(x, ridge);
        for (int j = 0; j < grid.k.steps; ++j) {
            const double k = grid.k.at(j);
            r.rows.push_back({x, k, density.atom(x), density.continuous(x, k), ridge, ridge_density});
        }
    }
    return r;
}

struct SimulateOptions {
    Steps n = 0;
    Site z = 1;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double tv_threshold = 0.01;
    unsigned workers = 1;
};

inline io::OutputRecord simulate(const SimulateOptions& opt) {
    require(opt.trials >= 1, "trials must be >= 1");
    const Histogram2D h = walkvisits::simulate(opt.n, opt.z, opt.trials, opt.seed, opt.workers);
    const JointTable exact = joint_table(opt.n, opt.z);
    const GofResult gof = gof_compare(h, exact);

    io::OutputRecord r;
    r.command = "simulate";
    r.parameters = {{"n", std::to_string(opt.n)},
                    {"z", std::to_string(opt.z)},
                    {"trials", std::to_string(opt.trials)},
                    {"seed", std::to_string(opt.seed)}};
    r.columns = {"X", "K", "count", "empirical", "exact_prob_exact", "exact_prob_float"};
    const double trials = static_cast<double>(opt.trials);
    for (const auto& [cell, p] : exact.entries) {
        const auto it = h.counts.find(cell);
        const std::uint64_t count = it == h.counts.end() ? 0 : it->second;
        r.rows.push_back({cell.first, cell.second, static_cast<std::int64_t>(count),
                          static_cast<double>(count) / trials, p.str(), p.to_double()});
    }
    r.footer = {{"tv", io::format_double(gof.tv)},
                {"chi_square", io::format_double(gof.chi_square)},
                {"dof", std::to_string(gof.dof)},
                {"p_value", io::format_double(gof.p_value)},
                {"tv_threshold", io::format_double(opt.tv_threshold)},
                {"tv_within_threshold", gof.tv <= opt.tv_threshold ? "true" : "false"}};
    return r;
}

inline io::OutputRecord verify_record(const verify::Report& report, std::string_view depth) {
    io::OutputRecord r;
    r.command = "verify";
    r.parameters = {{"depth", std::string(depth)}};
    r.columns = {"check", "passed", "seconds", "detail"};
    for (const auto& c : report.checks) {
        std::string name = c.name;
        std::string detail = c.detail;
        std::replace(name.begin(), name.end(), ',', ';');
        std::replace(detail.begin(), detail.end(), ',', ';');
        r.rows.push_back({name, c.passed ? "true" : "false", c.seconds, detail});
    }
    r.footer = {{"all_passed", report.passed() ? "true" : "false"}};
    return r;
}

}  // namespace walkvisits::commands

#endif  // WALKVISITS_COMMANDS_HPP
