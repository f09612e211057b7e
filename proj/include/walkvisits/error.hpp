#ifndef WALKVISITS_ERROR_HPP
#define WALKVISITS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace walkvisits {

/// Raised when an argument lies outside an operation's domain (Z <= 0,
/// N beyond an enumeration cap, mismatched tables, ...).
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw domain_error(message);
    }
}

inline void require_site(long long z) {
    require(z >= 1, "marked site Z must be >= 1 (got " + std::to_string(z) +
                        "); reflect (X, Z) -> (-X, -Z) for negative sites");
}

inline void require_steps(long long n) {
    require(n >= 0, "step count N must be >= 0 (got " + std::to_string(n) + ")");
}

}  // namespace walkvisits

#endif  // WALKVISITS_ERROR_HPP
