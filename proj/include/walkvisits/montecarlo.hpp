#ifndef WALKVISITS_MONTECARLO_HPP
#define WALKVISITS_MONTECARLO_HPP

// Direct simulation of the walk with visit counting, and goodness-of-fit
// against the exact joint law.
//
// Trials are cut into fixed-size chunks and chunk i draws from its own
// mt19937_64 stream seeded by (seed, i). Workers only decide who runs which
// chunk, so the merged histogram does not depend on the worker count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <random>
#include <thread>
#include <utility>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "walkvisits/error.hpp"
#include "walkvisits/exactwalk.hpp"

namespace walkvisits {

inline constexpr std::uint64_t kTrialsPerChunk = 1U << 14;

struct Histogram2D {
    Steps steps = 0;
    Site site = 1;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::map<std::pair<Position, Visits>, std::uint64_t> counts;

    std::uint64_t total() const {
        std::uint64_t sum = 0;
        for (const auto& [cell, c] : counts) {
            sum += c;
        }
        return sum;
    }

    /// Adds another histogram of the same (N, Z, seed) run.
    Histogram2D& merge(const Histogram2D& other) {
        require(other.steps == steps && other.site == site, "cannot merge histograms of different (N, Z)");
        trials += other.trials;
        for (const auto& [cell, c] : other.counts) {
            counts[cell] += c;
        }
        return *this;
    }

    friend bool operator==(const Histogram2D&, const Histogram2D&) = default;
};

namespace detail {

inline std::mt19937_64 chunk_engine(std::uint64_t seed, std::uint64_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    return std::mt19937_64(seq);
}

inline std::uint64_t chunk_count(std::uint64_t trials) {
    return (trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
}

}  // namespace detail

/// Runs trials [chunk * kTrialsPerChunk, ...) of a simulation.
inline Histogram2D simulate_chunk(Steps n, Site z, std::uint64_t trials, std::uint64_t seed,
                                  std::uint64_t chunk) {
    require_steps(n);
    require_site(z);
    const std::uint64_t first = chunk * kTrialsPerChunk;
    require(first < trials, "chunk index past the end of the run");
    const std::uint64_t count = std::min(kTrialsPerChunk, trials - first);

    Histogram2D h{n, z, count, seed, {}};
    auto engine = detail::chunk_engine(seed, chunk);
    for (std::uint64_t t = 0; t < count; ++t) {
        Position x = 0;
        Visits k = 0;
        std::uint64_t bits = 0;
        int left = 0;
        for (Steps i = 0; i < n; ++i) {
            if (left == 0) {
                bits = engine();
                left = 64;
            }
            x += (bits & 1U) != 0 ? 1 : -1;
            bits >>= 1;
            --left;
            if (x == z) {
                ++k;
            }
        }
        ++h.counts[{x, k}];
    }
    return h;
}

inline Histogram2D simulate(Steps n, Site z, std::uint64_t trials, std::uint64_t seed,
                            unsigned workers = 1) {
    require_steps(n);
    require_site(z);
    require(trials >= 1, "trials must be >= 1");
    workers = std::max(1U, workers);

    const std::uint64_t chunks = detail::chunk_count(trials);
    Histogram2D result{n, z, 0, seed, {}};
    std::mutex merge_mutex;
    std::atomic<std::uint64_t> next_chunk{0};

    const auto work = [&] {
        Histogram2D local{n, z, 0, seed, {}};
        for (std::uint64_t c = next_chunk++; c < chunks; c = next_chunk++) {
            local.merge(simulate_chunk(n, z, trials, seed, c));
        }
        const std::lock_guard lock(merge_mutex);
        result.merge(local);
    };

    const unsigned spawned = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
    if (spawned <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(spawned);
        for (unsigned w = 0; w < spawned; ++w) {
            pool.emplace_back(work);
        }
    }
    return result;
}

struct GofResult {
    double tv = 0.0;
    double chi_square = 0.0;
    std::int64_t dof = 0;
    double p_value = 1.0;
};

/// Total variation and a pooled Pearson chi-square test of h against the
/// exact law. Cells with expected count < 5 are merged into one bin.
inline GofResult gof_compare(const Histogram2D& h, const JointTable& exact) {
    require(h.steps == exact.steps && h.site == exact.site,
            "histogram and exact table disagree on (N, Z)");
    require(h.trials >= 1 && h.total() == h.trials, "histogram counts must sum to trials >= 1");
    for (const auto& [cell, c] : h.counts) {
        require(exact.entries.contains(cell),
                "histogram cell (" + std::to_string(cell.first) + ", " +
                    std::to_string(cell.second) + ") is outside the exact support");
    }

    const double trials = static_cast<double>(h.trials);
    const auto observed = [&](const std::pair<Position, Visits>& cell) {
        const auto it = h.counts.find(cell);
        return it == h.counts.end() ? 0.0 : static_cast<double>(it->second);
    };

    GofResult r;
    double abs_sum = 0.0;
    double pooled_observed = 0.0;
    double pooled_expected = 0.0;
    std::int64_t bins = 0;
    for (const auto& [cell, p] : exact.entries) {
        const double prob = p.to_double();
        const double obs = observed(cell);
        abs_sum += std::abs(obs / trials - prob);
        const double expected = prob * trials;
        if (expected >= 5.0) {
            r.chi_square += (obs - expected) * (obs - expected) / expected;
            ++bins;
        } else {
            pooled_observed += obs;
            pooled_expected += expected;
        }
    }
    if (pooled_expected > 0.0) {
        r.chi_square += (pooled_observed - pooled_expected) * (pooled_observed - pooled_expected) /
                        pooled_expected;
        ++bins;
    }
    r.tv = 0.5 * abs_sum;
    r.dof = std::max<std::int64_t>(bins - 1, 0);
    if (r.dof > 0) {
        const boost::math::chi_squared dist(static_cast<double>(r.dof));
        r.p_value = boost::math::cdf(boost::math::complement(dist, r.chi_square));
    }
    return r;
}

}  // namespace walkvisits

#endif  // WALKVISITS_MONTECARLO_HPP
