#ifndef WALKVISITS_POWERSERIES_HPP
#define WALKVISITS_POWERSERIES_HPP

// Truncated formal power series in the step variable lambda over exact
// rationals, plus series whose lambda-coefficients are polynomials in the
// visit variable V. Used to expand the closed-form generating functions of
// the free and visit-weighted walks coefficient by coefficient.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <vector>

#include "walkvisits/dyadic.hpp"
#include "walkvisits/error.hpp"

namespace walkvisits {

inline constexpr int kDefaultSeriesOrder = 64;

namespace detail {

inline std::size_t checked_size(int order) {
    require(order >= 0, "series order must be >= 0");
    return static_cast<std::size_t>(order) + 1;
}

}  // namespace detail

/// c_0 + c_1 lambda + ... + c_M lambda^M  (mod lambda^{M+1}).
class RationalSeries {
public:
    explicit RationalSeries(int order) : coeffs_(detail::checked_size(order)) {}

    static RationalSeries constant(int order, BigRational c) {
        RationalSeries s(order);
        s.coeffs_[0] = std::move(c);
        return s;
    }

    /// lambda^power (zero if power > order).
    static RationalSeries monomial(int order, int power, BigRational c = 1) {
        RationalSeries s(order);
        if (power <= order) {
            s.coeffs_[static_cast<std::size_t>(power)] = std::move(c);
        }
        return s;
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }

    const BigRational& operator[](int n) const { return coeffs_[static_cast<std::size_t>(n)]; }
    BigRational& operator[](int n) { return coeffs_[static_cast<std::size_t>(n)]; }

    /// Coefficient of lambda^n, zero beyond the truncation order.
    BigRational coeff(int n) const { return n >= 0 && n <= order() ? (*this)[n] : BigRational(0); }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigRational& c) { return c == 0; });
    }

    RationalSeries truncated(int order) const {
        RationalSeries s(order);
        for (int n = 0; n <= std::min(order, this->order()); ++n) {
            s[n] = (*this)[n];
        }
        return s;
    }

    RationalSeries& operator+=(const RationalSeries& rhs) {
        shrink_to(rhs.order());
        for (int n = 0; n <= order(); ++n) {
            (*this)[n] += rhs[n];
        }
        return *this;
    }

    RationalSeries& operator-=(const RationalSeries& rhs) {
        shrink_to(rhs.order());
        for (int n = 0; n <= order(); ++n) {
            (*this)[n] -= rhs[n];
        }
        return *this;
    }

    RationalSeries& operator*=(const BigRational& c) {
        for (auto& x : coeffs_) {
            x *= c;
        }
        return *this;
    }

    friend RationalSeries operator+(RationalSeries a, const RationalSeries& b) { return a += b; }
    friend RationalSeries operator-(RationalSeries a, const RationalSeries& b) { return a -= b; }
    friend RationalSeries operator*(RationalSeries a, const BigRational& c) { return a *= c; }

    friend RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
        const int m = std::min(a.order(), b.order());
        RationalSeries out(m);
        for (int i = 0; i <= m; ++i) {
            if (a[i] == 0) {
                continue;
            }
            for (int j = 0; i + j <= m; ++j) {
                if (b[j] != 0) {
                    out[i + j] += a[i] * b[j];
                }
            }
        }
        return out;
    }

    RationalSeries pow(int exponent) const {
        require(exponent >= 0, "series power must be >= 0");
        RationalSeries result = constant(order(), 1);
        RationalSeries base = *this;
        while (exponent > 0) {
            if ((exponent & 1) != 0) {
                result = result * base;
            }
            exponent >>= 1;
            if (exponent > 0) {
                base = base * base;
            }
        }
        return result;
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    RationalSeries inverse() const {
        require((*this)[0] != 0, "series inverse needs a nonzero constant term");
        RationalSeries g(order());
        const BigRational inv0 = 1 / (*this)[0];
        g[0] = inv0;
        for (int n = 1; n <= order(); ++n) {
            BigRational acc;
            for (int i = 1; i <= n; ++i) {
                acc += (*this)[i] * g[n - i];
            }
            g[n] = -acc * inv0;
        }
        return g;
    }

    friend RationalSeries operator/(const RationalSeries& a, const RationalSeries& b) {
        return a * b.inverse();
    }

    /// Square root with constant term 1; input must have constant term 1.
    RationalSeries sqrt() const {
        require((*this)[0] == 1, "series square root needs constant term 1");
        RationalSeries g(order());
        g[0] = 1;
        for (int n = 1; n <= order(); ++n) {
            BigRational acc = (*this)[n];
            for (int i = 1; i < n; ++i) {
                acc -= g[i] * g[n - i];
            }
            g[n] = acc / 2;
        }
        return g;
    }

    /// Divides by lambda; needs a zero constant term. Order drops by one.
    RationalSeries divided_by_lambda() const {
        require((*this)[0] == 0, "division by lambda needs a zero constant term");
        require(order() >= 1, "division by lambda needs order >= 1");
        RationalSeries s(order() - 1);
        for (int n = 0; n <= s.order(); ++n) {
            s[n] = (*this)[n + 1];
        }
        return s;
    }

    friend bool operator==(const RationalSeries&, const RationalSeries&) = default;

private:
    void shrink_to(int order) {
        if (order < this->order()) {
            coeffs_.resize(static_cast<std::size_t>(order + 1));
        }
    }

    std::vector<BigRational> coeffs_;
};

/// Series in lambda whose lambda^n coefficient is a polynomial in V.
/// coeff(n, k) is the coefficient of lambda^n V^k.
class BivariateSeries {
public:
    explicit BivariateSeries(int order) : rows_(detail::checked_size(order)) {}

    /// Embeds a lambda series as the V^0 part.
    static BivariateSeries from_series(const RationalSeries& s) {
        BivariateSeries b(s.order());
        for (int n = 0; n <= s.order(); ++n) {
            if (s[n] != 0) {
                b.add_to(n, 0, s[n]);
            }
        }
        return b;
    }

    /// sum_j r^j V^j, truncated in lambda. Needs r(0) = 0 so that V-degree
    /// stays bounded by the lambda-order.
    static BivariateSeries geometric_in_v(const RationalSeries& ratio) {
        require(ratio[0] == 0, "geometric series in V needs a ratio without constant term");
        BivariateSeries b(ratio.order());
        RationalSeries power = RationalSeries::constant(ratio.order(), 1);
        for (int j = 0; !power.is_zero(); ++j) {
            for (int n = 0; n <= power.order(); ++n) {
                if (power[n] != 0) {
                    b.add_to(n, j, power[n]);
                }
            }
            power = power * ratio;
        }
        return b;
    }

    int order() const { return static_cast<int>(rows_.size()) - 1; }

    BigRational coeff(int n, int k) const {
        if (n < 0 || n > order() || k < 0) {
            return 0;
        }
        const auto& row = rows_[static_cast<std::size_t>(n)];
        return k < static_cast<int>(row.size()) ? row[static_cast<std::size_t>(k)] : BigRational(0);
    }

    /// Highest V-degree stored at lambda^n (trailing zeros included).
    int v_degree(int n) const { return static_cast<int>(rows_[static_cast<std::size_t>(n)].size()) - 1; }

    /// Substitutes V = value.
    RationalSeries at_v(const BigRational& value) const {
        RationalSeries s(order());
        for (int n = 0; n <= order(); ++n) {
            BigRational acc;
            BigRational vk = 1;
            for (const auto& c : rows_[static_cast<std::size_t>(n)]) {
                acc += c * vk;
                vk *= value;
            }
            s[n] = acc;
        }
        return s;
    }

    BivariateSeries times_v() const {
        BivariateSeries b(order());
        for (int n = 0; n <= order(); ++n) {
            auto& row = b.rows_[static_cast<std::size_t>(n)];
            const auto& src = rows_[static_cast<std::size_t>(n)];
            if (!src.empty()) {
                row.assign(src.size() + 1, BigRational(0));
                std::copy(src.begin(), src.end(), row.begin() + 1);
            }
        }
        return b;
    }

    bool is_zero() const {
        return std::all_of(rows_.begin(), rows_.end(), [](const auto& row) {
            return std::all_of(row.begin(), row.end(), [](const BigRational& c) { return c == 0; });
        });
    }

    BivariateSeries& operator+=(const BivariateSeries& rhs) { return accumulate(rhs, 1); }
    BivariateSeries& operator-=(const BivariateSeries& rhs) { return accumulate(rhs, -1); }

    friend BivariateSeries operator+(BivariateSeries a, const BivariateSeries& b) { return a += b; }
    friend BivariateSeries operator-(BivariateSeries a, const BivariateSeries& b) { return a -= b; }

    friend BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
        const int m = std::min(a.order(), b.order());
        BivariateSeries out(m);
        for (int i = 0; i <= m; ++i) {
            const auto& ra = a.rows_[static_cast<std::size_t>(i)];
            for (int j = 0; i + j <= m; ++j) {
                const auto& rb = b.rows_[static_cast<std::size_t>(j)];
                for (std::size_t p = 0; p < ra.size(); ++p) {
                    if (ra[p] == 0) {
                        continue;
                    }
                    for (std::size_t q = 0; q < rb.size(); ++q) {
                        if (rb[q] != 0) {
                            out.add_to(i + j, static_cast<int>(p + q), ra[p] * rb[q]);
                        }
                    }
                }
            }
        }
        return out;
    }

    friend BivariateSeries operator*(const BivariateSeries& a, const RationalSeries& s) {
        return a * from_series(s);
    }

private:
    void add_to(int n, int k, const BigRational& c) {
        auto& row = rows_[static_cast<std::size_t>(n)];
        if (static_cast<int>(row.size()) <= k) {
            row.resize(static_cast<std::size_t>(k + 1));
        }
        row[static_cast<std::size_t>(k)] += c;
    }

    BivariateSeries& accumulate(const BivariateSeries& rhs, int sign) {
        if (rhs.order() < order()) {
            rows_.resize(static_cast<std::size_t>(rhs.order() + 1));
        }
        for (int n = 0; n <= order(); ++n) {
            const auto& src = rhs.rows_[static_cast<std::size_t>(n)];
            for (std::size_t k = 0; k < src.size(); ++k) {
                if (src[k] != 0) {
                    add_to(n, static_cast<int>(k), sign > 0 ? src[k] : BigRational(-src[k]));
                }
            }
        }
        return *this;
    }

    std::vector<std::vector<BigRational>> rows_;
};

/// alpha(lambda) = (1 - sqrt(1 - lambda^2)) / lambda, the small root of
/// lambda = 2 alpha / (1 + alpha^2).
inline RationalSeries alpha_series(int order) {
    require(order >= 1, "alpha series needs order >= 1");
    RationalSeries radicand = RationalSeries::constant(order + 1, 1);
    radicand[2] = -1;
    const RationalSeries numerator = RationalSeries::constant(order + 1, 1) - radicand.sqrt();
    return numerator.divided_by_lambda();
}

/// (1 + alpha^2) / (1 - alpha^2), the free-walk return factor.
inline RationalSeries return_factor(const RationalSeries& alpha) {
    const RationalSeries one = RationalSeries::constant(alpha.order(), 1);
    const RationalSeries a2 = alpha * alpha;
    return (one + a2) / (one - a2);
}

/// sum_N lambda^N p_N(X) = ((1 + alpha^2) / (1 - alpha^2)) alpha^|X|.
inline RationalSeries free_gf_coeffs(int order, std::int64_t x) {
    require(order >= std::llabs(x), "free generating function needs order >= |X|");
    require(order >= 1, "free generating function needs order >= 1");
    const RationalSeries alpha = alpha_series(order);
    return return_factor(alpha) * alpha.pow(static_cast<int>(std::llabs(x)));
}

/// Closed-form generating function of the visit-weighted walk at X:
///   R (alpha^|X| - alpha^Z alpha^|X-Z|) + V alpha^Z alpha^|X-Z| / (1 - r V)
/// with R = (1+alpha^2)/(1-alpha^2) and r = 2 alpha^2 / (1 + alpha^2).
inline BivariateSeries joint_gf_coeffs(int order, std::int64_t x, std::int64_t z) {
    require(order >= 1, "joint generating function needs order >= 1");
    require_site(z);
    const RationalSeries alpha = alpha_series(order);
    const RationalSeries one = RationalSeries::constant(order, 1);
    const RationalSeries a2 = alpha * alpha;
    const RationalSeries factor = return_factor(alpha);
    const int reflected = static_cast<int>(z + std::llabs(x - z));

    const RationalSeries a_reflected = alpha.pow(reflected);
    const RationalSeries unvisited =
        factor * (alpha.pow(static_cast<int>(std::llabs(x))) - a_reflected);
    const RationalSeries ratio = (a2 * BigRational(2)) / (one + a2);

    return BivariateSeries::from_series(unvisited) +
           (BivariateSeries::geometric_in_v(ratio) * a_reflected).times_v();
}

/// Region amplitudes of the three-region solution: the walk's generating
/// function is A alpha^{-X} left of the origin, B alpha^X + C alpha^{-X}
/// between 0 and Z, and D alpha^X right of Z.
struct RegionAmplitudes {
    BivariateSeries a;
    BivariateSeries b;
    BivariateSeries c;
    BivariateSeries d;
};

inline RegionAmplitudes region_amplitudes(int order, std::int64_t z) {
    require(order >= 1, "amplitudes need order >= 1");
    require_site(z);
    const RationalSeries alpha = alpha_series(order);
    const RationalSeries one = RationalSeries::constant(order, 1);
    const RationalSeries a2 = alpha * alpha;
    const RationalSeries factor = return_factor(alpha);
    const RationalSeries a2z = alpha.pow(static_cast<int>(2 * z));
    // (1 + a^2) / (1 + a^2 - 2 a^2 V) V
    const BivariateSeries visited =
        BivariateSeries::geometric_in_v((a2 * BigRational(2)) / (one + a2)).times_v();

    RegionAmplitudes r{BivariateSeries(order), BivariateSeries(order), BivariateSeries(order),
                       BivariateSeries(order)};
    r.b = BivariateSeries::from_series(factor);
    r.c = visited * a2z - BivariateSeries::from_series(factor * a2z);
    r.a = BivariateSeries::from_series(factor * (one - a2z)) + visited * a2z;
    r.d = visited;
    return r;
}

/// Residuals of the four matching conditions at X = 0 and X = Z, each
/// multiplied through by a power of alpha so no negative powers appear.
/// All four are identically zero when the amplitudes are right.
inline std::vector<BivariateSeries> region_matching_residuals(int order, std::int64_t z) {
    const RegionAmplitudes r = region_amplitudes(order, z);
    const RationalSeries alpha = alpha_series(order);
    const RationalSeries half_lambda = RationalSeries::monomial(order, 1, BigRational(1, 2));
    const RationalSeries a2 = alpha * alpha;
    const int zi = static_cast<int>(z);
    const RationalSeries a2z = alpha.pow(2 * zi);

    std::vector<BivariateSeries> out;
    // A = B + C
    out.push_back(r.a - r.b - r.c);
    // D a^Z = B a^Z + C a^-Z, times a^Z
    out.push_back(r.d * a2z - r.b * a2z - r.c);
    // A = 1 + (lambda/2)(B a + C a^-1 + A a), times a
    out.push_back(r.a * alpha - BivariateSeries::from_series(alpha) -
                  (r.b * a2 + r.c + r.a * a2) * half_lambda);
    // D a^Z = (lambda V / 2)(B a^{Z-1} + C a^{1-Z} + D a^{Z+1}), times a^Z
    out.push_back(r.d * a2z - ((r.b * alpha.pow(2 * zi - 1) + r.c * alpha +
                                r.d * alpha.pow(2 * zi + 1)) * half_lambda).times_v());
    return out;
}

}  // namespace walkvisits

#endif  // WALKVISITS_POWERSERIES_HPP
