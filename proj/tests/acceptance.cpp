// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances and thresholds are fixed here.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "walkvisits/asymptotics.hpp"
#include "walkvisits/exactwalk.hpp"
#include "walkvisits/montecarlo.hpp"
#include "walkvisits/oracle.hpp"
#include "walkvisits/verify.hpp"

namespace {

using namespace walkvisits;

constexpr double kTriple_MaxSeconds = 60.0;
constexpr double kScaled_MaxSeconds = 120.0;
constexpr double kTvBoundAt4096 = 0.05;
constexpr double kErfTolerance = 1e-10;
constexpr double kLatticeCTolerance = 0.02;
constexpr double kMonteCarloTvBound = 0.01;
constexpr double kChiSquareSignificance = 0.001;

struct Line {
    std::string id;
    bool passed;
    std::string text;
};

std::vector<Line> lines;

bool report(std::string id, bool passed, const std::string& text)
{
    std::printf("[%s] %-4s %s\n", passed ? "PASS" : "FAIL", id.c_str(), text.c_str());
    std::fflush(stdout);
    lines.push_back({std::move(id), passed, text});
    return passed;
}

bool report(const std::string& id, const verify::CheckResult& r, double max_seconds = 0.0)
{
    const bool in_time = max_seconds <= 0.0 || r.seconds <= max_seconds;
    char timing[64];
    if (max_seconds > 0.0) {
        std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", r.seconds, max_seconds);
    } else {
        std::snprintf(timing, sizeof timing, "%.2f s", r.seconds);
    }
    return report(id, r.passed && in_time, r.name + ": " + r.detail + " (" + timing + ")");
}

// Column sums at K = 0 against the printed F_N(Z - 1), taken literally.
bool literal_no_visit_is_cumulant(Steps max_steps, Site max_site, std::string& first_failure)
{
    for (Site z = 1; z <= max_site; ++z) {
        for (Steps n = 0; n <= max_steps; ++n) {
            const auto columns = column_sums(joint_table(n, z)).values;
            const auto it = columns.find(0);
            const Dyadic k0 = it == columns.end() ? Dyadic{} : it->second;
            if (k0 != cumulant_F(n, z - 1)) {
                first_failure = "N=" + std::to_string(n) + " Z=" + std::to_string(z) +
                                ": column K=0 is " + k0.str() + " but F_N(Z-1) is " +
                                cumulant_F(n, z - 1).str();
                return false;
            }
        }
    }
    return true;
}

}  // namespace

int main()
{
    // 1. Exact triple agreement.
    const auto c1 = verify::triple_agreement(16, 6);
    const bool ok1 = report("1", c1, kTriple_MaxSeconds);

    // 2. DP == closed form, unit mass, N <= 64, Z <= 8.
    const auto c2 = verify::dp_closed_agreement(64, 8);
    const bool ok2 = report("2", c2, kScaled_MaxSeconds);

    // 3. Marginal identities on the same tables.
    const auto c3 = verify::marginal_identities(64, 8);
    const bool ok3 = report("3", c3);
    std::string where;
    const bool literal3 = literal_no_visit_is_cumulant(64, 8, where);
    report("3-lit", literal3,
           "column K=0 equals printed F_N(Z-1) for N<=64 Z<=8" +
               (literal3 ? std::string() : ": " + where +
                    " (printed term omits the reflected paths; corrected term checked in 3)"));

    // 4. Moment identities.
    const bool ok4 = report("4", verify::moment_identities(64, 8));

    // 5. Generating-function coefficients, order 48.
    const bool ok5 = report("5", verify::generating_function_match(48, {1, 2, 4}));

    // 6. Diffusion limit at z = 1.
    const bool ok6 = report("6", verify::convergence_monotone(1.0, {256, 1024, 4096}, kTvBoundAt4096));

    // 7. Normalization constant C(z).
    const std::vector<double> erf_sites{0.1, 0.5, 1.0, 2.0, 4.0};
    const std::vector<double> lattice_sites{0.5, 1.0};
    const bool ok7 = report("7", verify::normalization_constant_check(erf_sites, lattice_sites, 4096,
                                                                     kErfTolerance, kLatticeCTolerance));
    {
        const ScaleMap scale(4096);
        bool literal = true;
        std::string text = "|C(z) - F_N(Z-1)| <= 0.02 at N=4096:";
        for (const double z : lattice_sites) {
            const double c = normalization_constant(z);
            const double f = cumulant_F(4096, scale.lattice_z(z) - 1).to_double();
            literal = literal && std::abs(c - f) <= kLatticeCTolerance;
            char buf[160];
            std::snprintf(buf, sizeof buf, " z=%.2g C=%.6f F=%.6f diff=%.4f;", z, c, f, std::abs(c - f));
            text += buf;
        }
        if (!literal) {
            text += " F_N(Z-1) tends to Phi(z) while C(z) = 2 Phi(z) - 1";
        }
        report("7-lit", literal, text);
    }

    // 8. Monte Carlo at (N=100, Z=5, 10^6 trials).
    {
        constexpr std::uint64_t trials = 1000000;
        constexpr std::uint64_t seed = 20261019;
        const Histogram2D h1 = simulate(100, 5, trials, seed, 1);
        const Histogram2D h2 = simulate(100, 5, trials, seed, 2);
        const Histogram2D h8 = simulate(100, 5, trials, seed, 8);
        const GofResult gof = gof_compare(h1, joint_table(100, 5));
        const bool identical = h1 == h2 && h1 == h8;
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "TV=%.5f (<= %.2f) chi2=%.1f dof=%lld p=%.4f (>= %.3f) workers 1/2/8 identical=%s",
                      gof.tv, kMonteCarloTvBound, gof.chi_square, static_cast<long long>(gof.dof),
                      gof.p_value, kChiSquareSignificance, identical ? "yes" : "no");
        report("8", gof.tv <= kMonteCarloTvBound && gof.p_value >= kChiSquareSignificance && identical, buf);
    }
    const bool ok8 = lines.back().passed;

    // 9. Oracle-equivalence and invariant suites plus desk-scale limit checks.
    report("9", ok1 && ok2 && ok3 && ok4 && ok5 && ok6 && ok7 && ok8,
           "criteria 1-8 oracle/invariant suites and desk-scale limit confirmation");

    int failed = 0;
    for (const auto& l : lines) {
        failed += l.passed ? 0 : 1;
    }
    std::printf("%zu checks, %d failed\n", lines.size(), failed);
    return failed == 0 ? 0 : 1;
}
