#ifndef WALKVISITS_ASYMPTOTICS_HPP
#define WALKVISITS_ASYMPTOTICS_HPP

// Diffusion-scaling limit of the (position, visit count) law.
//
// With X = sqrt(N) x, K = sqrt(N) k and Z = sqrt(N) z, the exact law
// converges to an atom on k = 0 with x-profile
//     atom(x) = phi(x) - phi(z + |x - z|)
// plus a continuous density on k > 0
//     cont(x, k) = (k + c) phi(k + c),   c = z + |x - z|,
// where phi is the standard normal density. Integrating out x gives the
// k-marginal sqrt(2/pi) exp(-(k+z)^2/2) with an atom C(z) = erf(z/sqrt 2).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "walkvisits/dyadic.hpp"
#include "walkvisits/error.hpp"
#include "walkvisits/exactwalk.hpp"

namespace walkvisits {

inline constexpr double kQuadratureTolerance = 1e-10;

inline double gaussian_x_density(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

namespace detail {

inline void require_scaled_site(double z) {
    require(z > 0.0 && std::isfinite(z), "scaled site z must be a positive finite number");
}

template <class F>
double integrate(F f, double lo, double hi) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 20,
                                                                         kQuadratureTolerance);
}

}  // namespace detail

struct ScaledJointValue {
    double atom = 0.0;        ///< density in x of the k = 0 component
    double continuous = 0.0;  ///< joint density in (x, k) for k > 0
};

/// The limit law for a fixed scaled site z.
class ScaledJointDensity {
public:
    explicit ScaledJointDensity(double z) : z_(z) { detail::require_scaled_site(z); }

    double site() const { return z_; }

    double reflected(double x) const { return z_ + std::abs(x - z_); }

    double atom(double x) const {
        // Exactly zero on x >= z where reflected(x) == x.
        if (x >= z_) {
            return 0.0;
        }
        return gaussian_x_density(x) - gaussian_x_density(reflected(x));
    }

    double continuous(double x, double k) const {
        if (k < 0.0) {
            return 0.0;
        }
        const double s = k + reflected(x);
        return s * gaussian_x_density(s);
    }

    ScaledJointValue operator()(double x, double k) const { return {atom(x), continuous(x, k)}; }

    /// Mass of the k = 0 atom, by quadrature over x.
    double atom_mass() const {
        const double inf = std::numeric_limits<double>::infinity();
        return detail::integrate([this](double x) { return atom(x); }, -inf, z_);
    }

    /// Mass of the continuous part, by nested quadrature over k then x.
    double continuous_mass() const {
        const double inf = std::numeric_limits<double>::infinity();
        const auto slice = [this, inf](double x) {
            return detail::integrate([this, x](double k) { return continuous(x, k); }, 0.0, inf);
        };
        return detail::integrate(slice, -inf, z_) + detail::integrate(slice, z_, inf);
    }

    /// Continuous part integrated over x at fixed k, by quadrature.
    double continuous_k_marginal(double k) const {
        const double inf = std::numeric_limits<double>::infinity();
        const auto f = [this, k](double x) { return continuous(x, k); };
        return detail::integrate(f, -inf, z_) + detail::integrate(f, z_, inf);
    }

private:
    double z_;
};

inline ScaledJointValue scaled_joint(double x, double k, double z) {
    require(k >= 0.0, "scaled visit count k must be >= 0");
    return ScaledJointDensity(z)(x, k);
}

struct ScaledKMarginal {
    double atom_weight = 0.0;  ///< C(z), the probability of no visit
    double density = 0.0;      ///< density at k > 0
};

inline double k_marginal_density(double k, double z) {
    detail::require_scaled_site(z);
    if (k < 0.0) {
        return 0.0;
    }
    return std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * (k + z) * (k + z));
}

/// C(z) = 1 - integral_0^inf sqrt(2/pi) exp(-(k+z)^2/2) dk, by quadrature.
inline double normalization_constant(double z) {
    detail::require_scaled_site(z);
    const double inf = std::numeric_limits<double>::infinity();
    return 1.0 - detail::integrate([z](double k) { return k_marginal_density(k, z); }, 0.0, inf);
}

/// Closed form of C(z) (reflection principle).
inline double normalization_constant_erf(double z) {
    detail::require_scaled_site(z);
    return std::erf(z / std::numbers::sqrt2);
}

inline ScaledKMarginal scaled_k_marginal(double k, double z) {
    require(k >= 0.0, "scaled visit count k must be >= 0");
    return {normalization_constant(z), k_marginal_density(k, z)};
}

/// Lattice <-> diffusion coordinates for a given step count. Positions live
/// on the parity grid X = N (mod 2), so a position cell is 2 / sqrt(N) wide
/// in x while a visit cell is 1 / sqrt(N) tall in k.
struct ScaleMap {
    Steps steps;

    explicit ScaleMap(Steps n) : steps(n) { require(n >= 1, "scale map needs N >= 1"); }

    double root() const { return std::sqrt(static_cast<double>(steps)); }
    double cell_dx() const { return 2.0 / root(); }
    double cell_dk() const { return 1.0 / root(); }

    double to_x(Position x) const { return static_cast<double>(x) / root(); }
    double to_k(Visits k) const { return static_cast<double>(k) / root(); }
    double to_z(Site z) const { return static_cast<double>(z) / root(); }

    /// Nearest lattice position with the parity of N.
    Position lattice_x(double x) const {
        const double target = x * root();
        const double parity = static_cast<double>(steps & 1);
        return static_cast<Position>(2.0 * std::round((target - parity) / 2.0) + parity);
    }

    Visits lattice_k(double k) const { return static_cast<Visits>(std::llround(k * root())); }
    Site lattice_z(double z) const { return static_cast<Site>(std::llround(z * root())); }
};

struct ConvergenceReport {
    Steps steps = 0;
    Site site = 1;
    double scaled_site = 0.0;
    double tv = 0.0;              ///< 1/2 sum |exact - limit| over lattice cells
    double max_cell_error = 0.0;  ///< max |exact - limit| over lattice cells
    double no_visit_exact = 0.0;  ///< sum_X exact(X, 0) = F_N(Z - 1)
    double no_visit_limit = 0.0;  ///< erf(z / sqrt 2)
    std::string rule;
};

inline constexpr const char* kLatticeAggregationRule =
    "cells X in {-N,-N+2,..,N}, K in {0..N}; x=X/sqrt(N), k=K/sqrt(N), z=Z/sqrt(N); "
    "limit mass: K=0 -> atom(x)*2/sqrt(N), K>=1 -> cont(x,k)*2/N";

/// Compares the exact joint law with the limit density aggregated onto the
/// lattice. Exact cells come from exact Pascal rows and are rendered to
/// double only after the subtraction.
inline ConvergenceReport convergence_report(Steps n, Site z) {
    require(n >= 16, "convergence report needs N >= 16");
    require_site(z);
    const ScaleMap scale(n);
    const ScaledJointDensity limit(scale.to_z(z));
    ConvergenceReport report{n, z, scale.to_z(z), 0.0, 0.0, 0.0, 0.0, kLatticeAggregationRule};

    double abs_sum = 0.0;
    const auto accumulate = [&](double exact, double approx) {
        const double err = std::abs(exact - approx);
        abs_sum += err;
        report.max_cell_error = std::max(report.max_cell_error, err);
    };

    std::vector<BigInt> row{BigInt(1)};
    std::vector<BigInt> next;
    for (Steps m = 0; m <= n; ++m) {
        if (m > 0) {
            next.assign(static_cast<std::size_t>(m + 1), BigInt(0));
            next.front() = 1;
            next.back() = 1;
            for (Steps j = 1; j < m; ++j) {
                next[j] = row[j - 1] + row[j];
            }
            row.swap(next);
        }
        const auto c = [&](Steps j) -> const BigInt& {
            static const BigInt zero = 0;
            return (j < 0 || j > m) ? zero : row[static_cast<std::size_t>(j)];
        };
        const Visits k = n - m;
        if (k >= 1) {
            // P(X, K) = (C(m, j - 1) - C(m, j)) / 2^(m+1), j = (m + |X-Z| + Z + K) / 2.
            for (Position x = -n; x <= n; x += 2) {
                const Position reflected = z + std::llabs(x - z) + k;
                const Steps j = (m + reflected) / 2;
                double exact = 0.0;
                if (j - 1 <= m) {
                    exact = Dyadic(c(j - 1) - c(j), m + 1).to_double();
                }
                const double approx =
                    limit.continuous(scale.to_x(x), scale.to_k(k)) * 2.0 / static_cast<double>(n);
                accumulate(exact, approx);
            }
        } else {
            Dyadic no_visit;
            for (Position x = -n; x <= n; x += 2) {
                const Position reflected = z + std::llabs(x - z);
                const Dyadic cell = Dyadic(c((n + x) / 2), n) -
                                    (reflected <= n ? Dyadic(c((n + reflected) / 2), n) : Dyadic{});
                no_visit += cell;
                accumulate(cell.to_double(), limit.atom(scale.to_x(x)) * scale.cell_dx());
            }
            report.no_visit_exact = no_visit.to_double();
        }
    }
    report.tv = 0.5 * abs_sum;
    report.no_visit_limit = normalization_constant_erf(report.scaled_site);
    return report;
}

struct RidgePoint {
    double x = 0.0;
    double k_star = 0.0;       ///< argmax over k >= 0 of the continuous part
    double max_density = 0.0;  ///< continuous part at k_star
    double atom = 0.0;         ///< k = 0 atom profile at x, for comparison
};

/// argmax_k (k + c) phi(k + c) over k >= 0 is k + c = 1, clipped at 0.
inline double ridge_k(double x, double z) {
    return std::max(0.0, 1.0 - z - std::abs(x - z));
}

inline std::vector<RidgePoint> density_maxima_grid(double z, double x_min, double x_max,
                                                   int resolution) {
    detail::require_scaled_site(z);
    require(resolution >= 2, "ridge grid needs resolution >= 2");
    require(x_max > x_min, "ridge grid needs x_max > x_min");
    const ScaledJointDensity limit(z);
    std::vector<RidgePoint> grid;
    grid.reserve(static_cast<std::size_t>(resolution));
    for (int i = 0; i < resolution; ++i) {
        const double x = x_min + (x_max - x_min) * i / (resolution - 1);
        const double k = ridge_k(x, z);
        grid.push_back({x, k, limit.continuous(x, k), limit.atom(x)});
    }
    return grid;
}

}  // namespace walkvisits

#endif  // WALKVISITS_ASYMPTOTICS_HPP
