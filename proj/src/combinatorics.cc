// Copyright 2026 The definetti Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "definetti/combinatorics.h"

#include <array>
#include <cmath>
#include <limits>
#include <cstdint>
#include <cstring>
#include <numbers>
#include <string>

#include "definetti/errors.h"

namespace definetti {

namespace {

// B_{2j} / (2j (2j - 1)) for j = 1..8.
constexpr std::array<double, 8> kStirlingCoefficients = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
};

constexpr double kStirlingThreshold = 15.0;

// Below this, log C(a, b) is summed directly.
constexpr std::uint64_t kDirectSumLimit = 64;

// sum_j B_{2j} / (2j (2j-1) x^{2j-1}): log Gamma(x+1) minus its leading
// Stirling terms (x+1/2) log x - x + log sqrt(2 pi).
double stirling_correction(double x) {
    double inv = 1.0 / x;
    double inv_sq = inv * inv;
    double series = 0.0;
    double power = inv;
    for (double c : kStirlingCoefficients) {
        series += c * power;
        power *= inv_sq;
    }
    return series;
}

double stirling_log_gamma(double x) {
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + stirling_correction(x);
}

}  // namespace

double lower_double(const Rational &r) {
    double d = r.get_d();
    if (Rational(d) > r) {
        d = std::nextafter(d, -std::numeric_limits<double>::infinity());
    }
    return d;
}

double upper_double(const Rational &r) {
    double d = r.get_d();
    if (Rational(d) < r) {
        d = std::nextafter(d, std::numeric_limits<double>::infinity());
    }
    return d;
}

double to_double(const Rational &r) {
    double lo = lower_double(r);
    double hi = upper_double(r);
    if (lo == hi) {
        return lo;
    }
    Rational mid = (Rational(lo) + Rational(hi)) / 2;
    int cmp = ::cmp(r, mid);
    if (cmp != 0) {
        return cmp < 0 ? lo : hi;
    }
    std::uint64_t bits = 0;
    std::memcpy(&bits, &lo, sizeof bits);
    return (bits & 1) == 0 ? lo : hi;
}

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("log_gamma: argument must be positive and finite");
    }
    if (x >= kStirlingThreshold) {
        return stirling_log_gamma(x);
    }
    double shift = 1.0;
    double y = x;
    while (y < kStirlingThreshold) {
        shift *= y;
        y += 1.0;
    }
    return stirling_log_gamma(y) - std::log(shift);
}

double log_factorial(std::uint64_t a) {
    if (a < 2) {
        return 0.0;
    }
    return log_gamma(static_cast<double>(a) + 1.0);
}

BigInt binomial(std::uint64_t a, std::uint64_t b) {
    BigInt result;
    if (b > a) {
        return result;
    }
    mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    return result;
}

double log_binomial(std::uint64_t a, std::uint64_t b) {
    if (b > a) {
        throw DomainError("log_binomial: b must not exceed a (got a=" + std::to_string(a) +
                          ", b=" + std::to_string(b) + ")");
    }
    std::uint64_t small = std::min(b, a - b);
    if (small == 0) {
        return 0.0;
    }
    if (small <= kDirectSumLimit) {
        // Each ratio is at least 2, so every log term is well conditioned.
        std::uint64_t rest = a - small;
        double sum = 0.0;
        for (std::uint64_t i = 1; i <= small; i++) {
            sum += std::log(static_cast<double>(rest + i) / static_cast<double>(i));
        }
        return sum;
    }
    // Entropy form: every term below is nonnegative or tiny, so there is no
    // cancellation between large log-gamma values.
    double ad = static_cast<double>(a);
    double bd = static_cast<double>(small);
    double rd = static_cast<double>(a - small);
    return bd * std::log(ad / bd) - rd * std::log1p(-bd / ad) +
           0.5 * std::log(ad / (2.0 * std::numbers::pi * bd * rd)) + stirling_correction(ad) -
           stirling_correction(bd) - stirling_correction(rd);
}

BigInt multiset_count_exact(std::uint64_t n, std::uint64_t p) {
    if (n == 0) {
        throw DomainError("multiset_count: mode count n must be at least 1");
    }
    return binomial(n + p - 1, n - 1);
}

double log_multiset_count(std::uint64_t n, std::uint64_t p) {
    if (n == 0) {
        throw DomainError("multiset_count: mode count n must be at least 1");
    }
    return log_binomial(n + p - 1, n - 1);
}

MultisetCount multiset_count(std::uint64_t n, std::uint64_t p) {
    MultisetCount result;
    result.n = n;
    result.p = p;
    result.exact = multiset_count_exact(n, p);
    result.log_value = log_multiset_count(n, p);
    return result;
}

double log_of(const BigInt &value) {
    if (value <= 0) {
        return value == 0 ? -std::numeric_limits<double>::infinity()
                          : std::numeric_limits<double>::quiet_NaN();
    }
    long exponent = 0;
    double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
    return std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
}

}  // namespace definetti
