#ifndef WALKVISITS_EXACTWALK_HPP
#define WALKVISITS_EXACTWALK_HPP

// Exact law of a symmetric +/-1 walk started at the origin, jointly with the
// number of arrivals K at a marked site Z >= 1 during steps 1..N.
//
// Every probability is a Dyadic. Off-parity or out-of-range arguments are
// legal and give exact zero.

#include <cstdint>
#include <cstdlib>
#include <map>
#include <utility>
#include <vector>

#include "walkvisits/dyadic.hpp"
#include "walkvisits/error.hpp"

namespace walkvisits {

using Steps = std::int64_t;
using Position = std::int64_t;
using Visits = std::int64_t;
using Site = std::int64_t;

struct WalkQuery {
    Steps steps = 0;
    Site site = 1;
    Position position = 0;
    Visits visits = 0;
};

/// Sparse exact joint law over (X, K), keyed lexicographically. Only cells
/// with nonzero probability are stored, so two tables are equal iff they
/// describe the same law.
struct JointTable {
    Steps steps = 0;
    Site site = 1;
    std::map<std::pair<Position, Visits>, Dyadic> entries;

    Dyadic total() const {
        Dyadic sum;
        for (const auto& [cell, p] : entries) {
            sum += p;
        }
        return sum;
    }

    Dyadic at(Position x, Visits k) const {
        const auto it = entries.find({x, k});
        return it == entries.end() ? Dyadic{} : it->second;
    }

    friend bool operator==(const JointTable&, const JointTable&) = default;
};

struct SiteDist {
    Steps steps = 0;
    std::map<Position, Dyadic> values;

    friend bool operator==(const SiteDist&, const SiteDist&) = default;
};

struct VisitDist {
    Steps steps = 0;
    Site site = 1;
    std::map<Visits, Dyadic> values;

    friend bool operator==(const VisitDist&, const VisitDist&) = default;
};

struct XMoments {
    BigRational mean;
    BigRational second;
};

inline BigInt binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) {
        return BigInt(0);
    }
    k = std::min(k, n - k);
    BigInt c = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        c *= n - i;
        c /= i + 1;
    }
    return c;
}

/// Row n of Pascal's triangle, built by the multiplicative recurrence.
inline std::vector<BigInt> binomial_row(std::int64_t n) {
    std::vector<BigInt> row(static_cast<std::size_t>(n + 1));
    row[0] = 1;
    for (std::int64_t j = 0; j < n; ++j) {
        row[j + 1] = row[j] * (n - j) / (j + 1);
    }
    return row;
}

/// p_N(X): probability of standing at X after N steps. Zero when |X| > N,
/// when parities differ, or when N < 0 (convenient for shifted rows).
inline Dyadic p_step(Steps n, Position x) {
    if (n < 0 || std::llabs(x) > n || ((n + x) & 1) != 0) {
        return Dyadic{};
    }
    return Dyadic(binomial(n, (n + x) / 2), n);
}

/// F_N(X) = sum_{Y <= X} p_N(Y).
inline Dyadic cumulant_F(Steps n, Position x) {
    require_steps(n);
    if (x >= n) {
        return Dyadic::one();
    }
    if (x < -n) {
        return Dyadic{};
    }
    // Y = 2j - N for j = 0..N; include every j with 2j - N <= x.
    const std::int64_t last = (x + n) >= 0 ? (x + n) / 2 : -1;
    BigInt sum = 0;
    BigInt c = 1;
    for (std::int64_t j = 0; j <= last; ++j) {
        sum += c;
        c = c * (n - j) / (j + 1);
    }
    return Dyadic(std::move(sum), n);
}

/// P(K = 0): the walk never reaches Z. By reflection this is
///   F_N(Z - 1) - P(X > Z) = F_N(Z - 1) + F_N(Z) - 1.
/// (F_N(Z - 1) alone over-counts the paths that cross Z and come back.)
inline Dyadic no_visit_probability(Steps n, Site z) {
    require_steps(n);
    require_site(z);
    const Dyadic below = cumulant_F(n, z - 1);
    return below + below + p_step(n, z) - Dyadic::one();
}

namespace detail {

// Joint probability given any exact evaluator of p_m(Y); shared by the
// point evaluator and the cached table builder.
template <class FreeLaw>
Dyadic joint_value(const FreeLaw& p, Steps n, Site z, Position x, Visits k) {
    const Position reflected = z + std::llabs(x - z);
    if (k == 0) {
        return p(n, x) - p(n, reflected);
    }
    if (k < 0) {
        return Dyadic{};
    }
    const Steps rest = n - k;
    return (p(rest, reflected + k - 2) - p(rest, reflected + k)).half();
}

// Free-walk probabilities backed by cached Pascal rows 0..max_steps.
class FreeWalkRows {
public:
    explicit FreeWalkRows(Steps max_steps) {
        rows_.reserve(static_cast<std::size_t>(max_steps + 1));
        for (Steps m = 0; m <= max_steps; ++m) {
            std::vector<BigInt> row(static_cast<std::size_t>(m + 1));
            row.front() = 1;
            row.back() = 1;
            for (Steps j = 1; j < m; ++j) {
                row[j] = rows_[m - 1][j - 1] + rows_[m - 1][j];
            }
            rows_.push_back(std::move(row));
        }
    }

    Dyadic operator()(Steps m, Position y) const {
        if (m < 0 || m >= static_cast<Steps>(rows_.size()) || std::llabs(y) > m ||
            ((m + y) & 1) != 0) {
            return Dyadic{};
        }
        return Dyadic(rows_[m][(m + y) / 2], m);
    }

private:
    std::vector<std::vector<BigInt>> rows_;
};

}  // namespace detail

/// P_N(X, K | Z) in closed form:
///   K = 0:  p_N(X) - p_N(Z + |X - Z|)
///   K >= 1: (p_{N-K}(|X-Z| + Z + K - 2) - p_{N-K}(|X-Z| + Z + K)) / 2
inline Dyadic joint_point(const WalkQuery& q) {
    require_steps(q.steps);
    require_site(q.site);
    return detail::joint_value([](Steps m, Position y) { return p_step(m, y); }, q.steps,
                               q.site, q.position, q.visits);
}

inline JointTable joint_table(Steps n, Site z) {
    require_steps(n);
    require_site(z);
    const detail::FreeWalkRows p(n);
    JointTable table{n, z, {}};
    for (Position x = -n; x <= n; x += 2) {
        for (Visits k = 0; k <= n; ++k) {
            Dyadic v = detail::joint_value(p, n, z, x, k);
            if (!v.is_zero()) {
                table.entries.emplace(std::pair{x, k}, std::move(v));
            }
        }
    }
    return table;
}

/// Position marginal. Conditioning on Z carries no information about X, so
/// this is the free law p_N.
inline SiteDist marginal_x(Steps n, Site z) {
    require_steps(n);
    require_site(z);
    SiteDist dist{n, {}};
    const auto row = binomial_row(n);
    for (Steps j = 0; j <= n; ++j) {
        dist.values.emplace(2 * j - n, Dyadic(row[j], n));
    }
    return dist;
}

/// P(K = k). k = 0 is the no-visit probability; k >= 1 uses the
/// parity-split closed form:
///   N - Z odd:  C(N-K, (N+Z-1)/2) / 2^(N-K)
///   N - Z even: C(N+1-K, (N+Z)/2) / 2^(N+1-K)
inline Dyadic visit_probability(Steps n, Site z, Visits k) {
    require_steps(n);
    require_site(z);
    if (k == 0) {
        return no_visit_probability(n, z);
    }
    if (k < 0 || k > n) {
        return Dyadic{};
    }
    if (((n - z) & 1) != 0) {
        return Dyadic(binomial(n - k, (n + z - 1) / 2), n - k);
    }
    return Dyadic(binomial(n + 1 - k, (n + z) / 2), n + 1 - k);
}

/// P(K = k) for k >= 1 via the unsimplified three-term sum over X:
///   (p_{N-K}(Z+K-2) + 2 p_{N-K}(Z+K-1) + p_{N-K}(Z+K)) / 2
inline Dyadic visit_probability_three_term(Steps n, Site z, Visits k) {
    require_steps(n);
    require_site(z);
    require(k >= 1, "three-term visit form needs K >= 1");
    const Steps m = n - k;
    return (p_step(m, z + k - 2) + p_step(m, z + k - 1).scaled_pow2(-1) + p_step(m, z + k))
        .half();
}

inline VisitDist marginal_k(Steps n, Site z) {
    require_steps(n);
    require_site(z);
    VisitDist dist{n, z, {}};
    for (Visits k = 0; k <= n; ++k) {
        Dyadic v = visit_probability(n, z, k);
        if (!v.is_zero()) {
            dist.values.emplace(k, std::move(v));
        }
    }
    return dist;
}

inline XMoments moments_x(Steps n, Site z) {
    XMoments m;
    for (const auto& [x, p] : marginal_x(n, z).values) {
        const BigRational w = p.to_rational();
        m.mean += w * x;
        m.second += w * x * x;
    }
    return m;
}

/// E[K^order] by exact summation over the visit marginal.
inline BigRational moments_k(Steps n, Site z, int order) {
    require(order == 1 || order == 2, "moment order must be 1 or 2");
    BigRational sum;
    for (const auto& [k, p] : marginal_k(n, z).values) {
        const BigRational w = p.to_rational();
        sum += order == 1 ? w * k : w * k * k;
    }
    return sum;
}

// Row and column sums of a joint table.

inline SiteDist row_sums(const JointTable& t) {
    SiteDist d{t.steps, {}};
    for (const auto& [cell, p] : t.entries) {
        d.values[cell.first] += p;
    }
    return d;
}

inline VisitDist column_sums(const JointTable& t) {
    VisitDist d{t.steps, t.site, {}};
    for (const auto& [cell, p] : t.entries) {
        d.values[cell.second] += p;
    }
    return d;
}

/// E[X^x_order * K^k_order] over a joint table.
inline BigRational table_moment(const JointTable& t, int x_order, int k_order) {
    BigRational sum;
    for (const auto& [cell, p] : t.entries) {
        BigRational w = p.to_rational();
        for (int i = 0; i < x_order; ++i) {
            w *= cell.first;
        }
        for (int i = 0; i < k_order; ++i) {
            w *= cell.second;
        }
        sum += w;
    }
    return sum;
}

}  // namespace walkvisits

#endif  // WALKVISITS_EXACTWALK_HPP
