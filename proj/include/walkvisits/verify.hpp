#ifndef WALKVISITS_VERIFY_HPP
#define WALKVISITS_VERIFY_HPP

// Cross-module equivalence checks shared by `walkvisits verify` and the
// acceptance suite. The closed-form table builder is injectable so that a
// deliberately broken builder can be shown to fail.

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "walkvisits/asymptotics.hpp"
#include "walkvisits/exactwalk.hpp"
#include "walkvisits/montecarlo.hpp"
#include "walkvisits/oracle.hpp"
#include "walkvisits/powerseries.hpp"

namespace walkvisits::verify {

using TableBuilder = std::function<JointTable(Steps, Site)>;

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

namespace detail {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::string where(Steps n, Site z) {
    return "N=" + std::to_string(n) + " Z=" + std::to_string(z);
}

inline CheckResult finish(std::string name, const std::string& failure, const Stopwatch& watch,
                          std::string ok_detail = "ok") {
    return {std::move(name), failure.empty(), failure.empty() ? std::move(ok_detail) : failure,
            watch.seconds()};
}

}  // namespace detail

inline TableBuilder closed_form() { return [](Steps n, Site z) { return joint_table(n, z); }; }

/// enumerate_joint == dp_joint == closed form, every cell, N <= max_steps.
inline CheckResult triple_agreement(Steps max_steps, Site max_site,
                                    const TableBuilder& closed = closed_form()) {
    const detail::Stopwatch watch;
    std::string failure;
    for (Site z = 1; z <= max_site && failure.empty(); ++z) {
        const auto layers = oracle::dp_layers(max_steps, z);
        for (Steps n = 0; n <= max_steps; ++n) {
            const JointTable enumerated = oracle::enumerate_joint(n, z);
            if (enumerated != layers[n]) {
                failure = "enumeration != DP at " + detail::where(n, z);
                break;
            }
            if (closed(n, z) != layers[n]) {
                failure = "closed form != DP at " + detail::where(n, z);
                break;
            }
        }
    }
    return detail::finish("triple agreement N<=" + std::to_string(max_steps) + " Z<=" +
                              std::to_string(max_site),
                          failure, watch);
}

/// dp_joint == closed form and total mass exactly 1, N <= max_steps.
inline CheckResult dp_closed_agreement(Steps max_steps, Site max_site,
                                       const TableBuilder& closed = closed_form()) {
    const detail::Stopwatch watch;
    std::string failure;
    for (Site z = 1; z <= max_site && failure.empty(); ++z) {
        const auto layers = oracle::dp_layers(max_steps, z);
        for (Steps n = 0; n <= max_steps; ++n) {
            const JointTable table = closed(n, z);
            if (table != layers[n]) {
                failure = "closed form != DP at " + detail::where(n, z);
                break;
            }
            if (table.total() != Dyadic::one() || layers[n].total() != Dyadic::one()) {
                failure = "mass != 1 at " + detail::where(n, z);
                break;
            }
        }
    }
    return detail::finish("DP == closed form and unit mass N<=" + std::to_string(max_steps) +
                              " Z<=" + std::to_string(max_site),
                          failure, watch);
}

/// Row sums equal p_N(X); column sums equal the parity-split visit law.
inline CheckResult marginal_identities(Steps max_steps, Site max_site,
                                       const TableBuilder& closed = closed_form()) {
    const detail::Stopwatch watch;
    std::string failure;
    for (Site z = 1; z <= max_site && failure.empty(); ++z) {
        for (Steps n = 0; n <= max_steps; ++n) {
            const JointTable table = closed(n, z);
            const SiteDist rows = row_sums(table);
            if (rows.values != marginal_x(n, z).values) {
                failure = "row sums != p_N at " + detail::where(n, z);
                break;
            }
            for (const auto& [x, p] : rows.values) {
                if (p != p_step(n, x)) {
                    failure = "row sum != p_step at " + detail::where(n, z);
                }
            }
            if (column_sums(table).values != marginal_k(n, z).values) {
                failure = "column sums != visit law at " + detail::where(n, z);
                break;
            }
        }
    }
    return detail::finish("marginal identities N<=" + std::to_string(max_steps) + " Z<=" +
                              std::to_string(max_site),
                          failure, watch);
}

/// E(X) = 0, E(X^2) = N, and K-moments agree between joint and marginal.
inline CheckResult moment_identities(Steps max_steps, Site max_site,
                                     const TableBuilder& closed = closed_form()) {
    const detail::Stopwatch watch;
    std::string failure;
    for (Site z = 1; z <= max_site && failure.empty(); ++z) {
        for (Steps n = 0; n <= max_steps; ++n) {
            const JointTable table = closed(n, z);
            if (table_moment(table, 1, 0) != 0 || table_moment(table, 2, 0) != BigRational(n)) {
                failure = "X moments wrong at " + detail::where(n, z);
                break;
            }
            const XMoments xm = moments_x(n, z);
            if (xm.mean != 0 || xm.second != BigRational(n)) {
                failure = "marginal X moments wrong at " + detail::where(n, z);
                break;
            }
            if (table_moment(table, 0, 1) != moments_k(n, z, 1) ||
                table_moment(table, 0, 2) != moments_k(n, z, 2)) {
                failure = "K moments disagree at " + detail::where(n, z);
                break;
            }
        }
    }
    return detail::finish("moment identities N<=" + std::to_string(max_steps) + " Z<=" +
                              std::to_string(max_site),
                          failure, watch);
}

/// Every lambda^N V^K coefficient of the closed-form generating function
/// matches the DP, and V = 1 collapses to the free generating function.
inline CheckResult generating_function_match(int order, const std::vector<Site>& sites) {
    const detail::Stopwatch watch;
    std::string failure;
    for (const Site z : sites) {
        const auto layers = oracle::dp_layers(order, z);
        for (const Position x : {Position{-3}, Position{0}, Position{1}, z, z + 2}) {
            const BivariateSeries gf = joint_gf_coeffs(order, x, z);
            for (int n = 0; n <= order && failure.empty(); ++n) {
                const int top = std::max(gf.v_degree(n), n);
                for (int k = 0; k <= top; ++k) {
                    if (gf.coeff(n, k) != layers[n].at(x, k).to_rational()) {
                        failure = "coefficient lambda^" + std::to_string(n) + " V^" +
                                  std::to_string(k) + " at X=" + std::to_string(x) +
                                  " Z=" + std::to_string(z);
                        break;
                    }
                }
            }
            const RationalSeries free = free_gf_coeffs(order, x);
            if (failure.empty() && gf.at_v(1) != free) {
                failure = "V=1 collapse fails at X=" + std::to_string(x) + " Z=" + std::to_string(z);
            }
            for (int n = 0; n <= order && failure.empty(); ++n) {
                if (free[n] != p_step(n, x).to_rational()) {
                    failure = "free coefficient != p_N at N=" + std::to_string(n) +
                              " X=" + std::to_string(x);
                }
            }
            if (!failure.empty()) {
                break;
            }
        }
        if (!failure.empty()) {
            break;
        }
    }
    return detail::finish("generating function order " + std::to_string(order), failure, watch);
}

/// Lattice TV distance to the limit law shrinks along `steps` at scaled
/// site z and ends at or below `final_bound`.
inline CheckResult convergence_monotone(double z, const std::vector<Steps>& steps,
                                        double final_bound) {
    const detail::Stopwatch watch;
    std::string failure;
    std::ostringstream tvs;
    double previous = std::numeric_limits<double>::infinity();
    for (const Steps n : steps) {
        const ScaleMap scale(n);
        const ConvergenceReport r = convergence_report(n, scale.lattice_z(z));
        tvs << " TV(" << n << ")=" << r.tv;
        if (!(r.tv < previous) && failure.empty()) {
            failure = "TV not decreasing at N=" + std::to_string(n);
        }
        previous = r.tv;
    }
    if (failure.empty() && !(previous <= final_bound)) {
        failure = "final TV above bound";
    }
    if (!failure.empty()) {
        failure += ";" + tvs.str();
    }
    std::ostringstream name;
    name << "diffusion convergence z=" << z;
    return detail::finish(name.str(), failure, watch, "ok;" + tvs.str());
}

/// C(z) by quadrature against erf(z / sqrt 2) and against the exact
/// no-visit probability P_N(K = 0 | Z) at Z = round(z sqrt N).
inline CheckResult normalization_constant_check(const std::vector<double>& erf_sites,
                                                const std::vector<double>& lattice_sites,
                                                Steps n, double erf_tol, double lattice_tol) {
    const detail::Stopwatch watch;
    std::ostringstream failure;
    for (const double z : erf_sites) {
        const double diff = std::abs(normalization_constant(z) - normalization_constant_erf(z));
        if (!(diff <= erf_tol)) {
            failure << "quadrature vs erf at z=" << z << " off by " << diff << "; ";
        }
    }
    const ScaleMap scale(n);
    for (const double z : lattice_sites) {
        const Site site = scale.lattice_z(z);
        const double diff = std::abs(normalization_constant(z) - no_visit_probability(n, site).to_double());
        if (!(diff <= lattice_tol)) {
            failure << "C(z) vs P_N(K=0) at z=" << z << " off by " << diff << "; ";
        }
    }
    return detail::finish("normalization constant C(z)", failure.str(), watch);
}

struct Report {
    std::vector<CheckResult> checks;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
    }
};

enum class Depth { quick, full };

inline Report run(Depth depth, const TableBuilder& closed = closed_form()) {
    Report report;
    if (depth == Depth::quick) {
        report.checks.push_back(triple_agreement(16, 6, closed));
        report.checks.push_back(generating_function_match(24, {1, 2, 4}));
        return report;
    }
    report.checks.push_back(triple_agreement(16, 6, closed));
    report.checks.push_back(dp_closed_agreement(64, 8, closed));
    report.checks.push_back(marginal_identities(64, 8, closed));
    report.checks.push_back(moment_identities(64, 8, closed));
    report.checks.push_back(generating_function_match(48, {1, 2, 4}));
    report.checks.push_back(convergence_monotone(1.0, {256, 1024, 4096}, 0.05));
    return report;
}

}  // namespace walkvisits::verify

#endif  // WALKVISITS_VERIFY_HPP
