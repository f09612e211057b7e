#ifndef WALKVISITS_ORACLE_HPP
#define WALKVISITS_ORACLE_HPP

// Ground truth for the joint law that shares no code path with the closed
// form: a forward dynamic program over (X, K) and brute-force enumeration of
// all 2^N step sequences.

#include <cstdint>
#include <vector>

#include "walkvisits/dyadic.hpp"
#include "walkvisits/error.hpp"
#include "walkvisits/exactwalk.hpp"

namespace walkvisits::oracle {

inline constexpr Steps kMaxEnumerationSteps = 20;

namespace detail {

// Path counts for one step index; the layer probability is count / 2^step.
class CountLayer {
public:
    CountLayer(Steps max_steps, Steps step)
        : span_(max_steps), step_(step),
          counts_(static_cast<std::size_t>((2 * max_steps + 1) * (max_steps + 1))) {}

    BigInt& at(Position x, Visits k) { return counts_[index(x, k)]; }
    const BigInt& at(Position x, Visits k) const { return counts_[index(x, k)]; }
    Steps step() const { return step_; }

    JointTable to_table(Site z) const {
        JointTable t{step_, z, {}};
        for (Position x = -step_; x <= step_; x += 2) {
            for (Visits k = 0; k <= step_; ++k) {
                const BigInt& c = at(x, k);
                if (!c.is_zero()) {
                    t.entries.emplace(std::pair{x, k}, Dyadic(c, step_));
                }
            }
        }
        return t;
    }

private:
    std::size_t index(Position x, Visits k) const {
        return static_cast<std::size_t>((x + span_) * (span_ + 1) + k);
    }

    Steps span_;
    Steps step_;
    std::vector<BigInt> counts_;
};

}  // namespace detail

/// Every DP layer n = 0..N as a joint table. A step that lands on Z
/// increments K; the start is never counted.
inline std::vector<JointTable> dp_layers(Steps n, Site z) {
    require_steps(n);
    require_site(z);
    std::vector<JointTable> layers;
    layers.reserve(static_cast<std::size_t>(n + 1));

    detail::CountLayer current(n, 0);
    current.at(0, 0) = 1;
    layers.push_back(current.to_table(z));
    for (Steps step = 1; step <= n; ++step) {
        detail::CountLayer next(n, step);
        const Steps prev = step - 1;
        for (Position x = -prev; x <= prev; x += 2) {
            for (Visits k = 0; k <= prev; ++k) {
                const BigInt& c = current.at(x, k);
                if (c.is_zero()) {
                    continue;
                }
                for (const Position to : {x - 1, x + 1}) {
                    next.at(to, to == z ? k + 1 : k) += c;
                }
            }
        }
        current = std::move(next);
        layers.push_back(current.to_table(z));
    }
    return layers;
}

inline JointTable dp_joint(Steps n, Site z) { return std::move(dp_layers(n, z).back()); }

/// Brute force over all 2^N equiprobable step sequences (N <= 20).
inline JointTable enumerate_joint(Steps n, Site z) {
    require_steps(n);
    require_site(z);
    require(n <= kMaxEnumerationSteps,
            "enumeration is capped at N = " + std::to_string(kMaxEnumerationSteps));
    std::map<std::pair<Position, Visits>, std::uint64_t> counts;
    const std::uint64_t paths = std::uint64_t{1} << n;
    for (std::uint64_t path = 0; path < paths; ++path) {
        Position x = 0;
        Visits k = 0;
        for (Steps i = 0; i < n; ++i) {
            x += ((path >> i) & 1U) != 0 ? 1 : -1;
            if (x == z) {
                ++k;
            }
        }
        ++counts[{x, k}];
    }
    JointTable t{n, z, {}};
    for (const auto& [cell, c] : counts) {
        t.entries.emplace(cell, Dyadic(BigInt(c), n));
    }
    return t;
}

}  // namespace walkvisits::oracle

#endif  // WALKVISITS_ORACLE_HPP
