// Prints the exact joint law for a small walk next to its Monte Carlo
// estimate and the diffusion-limit prediction for the no-visit probability.

#include <cmath>
#include <iomanip>
#include <iostream>

#include "walkvisits/asymptotics.hpp"
#include "walkvisits/exactwalk.hpp"
#include "walkvisits/montecarlo.hpp"

int main() {
    using namespace walkvisits;
    constexpr Steps n = 8;
    constexpr Site z = 2;

    const JointTable table = joint_table(n, z);
    const Histogram2D h = simulate(n, z, 200000, 42, 4);

    std::cout << "  X  K  exact        float     simulated\n";
    for (const auto& [cell, p] : table.entries) {
        const auto it = h.counts.find(cell);
        const double freq = it == h.counts.end() ? 0.0 : static_cast<double>(it->second) / h.trials;
        std::cout << std::setw(3) << cell.first << std::setw(3) << cell.second << "  "
                  << std::setw(10) << p.str() << "  " << std::fixed << std::setprecision(5)
                  << p.to_double() << "   " << freq << '\n';
    }

    const double scaled = static_cast<double>(z) / std::sqrt(static_cast<double>(n));
    std::cout << "P(K=0) exact " << no_visit_probability(n, z).to_double() << ", limit "
              << normalization_constant_erf(scaled) << '\n';
}
