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

#include "definetti/distributions.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "definetti/combinatorics.h"
#include "definetti/errors.h"

namespace definetti {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::uint64_t kMaxThermalCutoff = 100'000'000;

void check_reduction_args(std::uint64_t n, std::uint64_t k) {
    if (k == 0 || k >= n) {
        throw DomainError(
            "retained mode count k must satisfy 1 <= k <= n-1 (got n=" + std::to_string(n) +
            ", k=" + std::to_string(k) + ")");
    }
}

bool use_exact(Arithmetic arithmetic, std::uint64_t size_hint) {
    switch (arithmetic) {
        case Arithmetic::kExact:
            return true;
        case Arithmetic::kFloat:
            return false;
        case Arithmetic::kAuto:
            break;
    }
    return size_hint <= kExactPathLimit;
}

Rational rational_power(const Rational &base, std::uint64_t exponent) {
    BigInt num;
    BigInt den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
    Rational r(num, den);
    r.canonicalize();
    return r;
}

double magnitude(double v) {
    return std::abs(v);
}

Rational magnitude(const Rational &v) {
    return abs(v);
}

template <typename T>
struct Enclosure {
    T lo;
    T hi;
};

// The longer distribution has `stored` mass past the shorter one's support
// and its own tail beyond that; the shorter one's tail may sit anywhere
// past its support, including on top of the stored excess.
template <typename T>
Enclosure<T> finish_enclosure(const T &common, const T &stored, const T &own_tail, const T &other_tail) {
    T hi = common + stored + own_tail + other_tail;
    auto clamp = [&](const T &v) -> T {
        if (v < T(0)) {
            return T(0);
        }
        if (v > other_tail) {
            return other_tail;
        }
        return v;
    };
    T candidates[] = {T(0), other_tail, clamp(stored), clamp(other_tail - own_tail)};
    bool first = true;
    T best = 0;
    for (const T &beta : candidates) {
        T residual = T(own_tail - other_tail + beta);
        T value = magnitude(T(stored - beta)) + magnitude(residual);
        if (first || value < best) {
            best = value;
            first = false;
        }
    }
    return {common + best, hi};
}

template <typename T>
Enclosure<T> enclose(std::span<const T> a, const T &ta, std::span<const T> b, const T &tb) {
    std::size_t m = std::min(a.size(), b.size());
    T common = 0;
    for (std::size_t l = 0; l < m; l++) {
        common += magnitude(T(a[l] - b[l]));
    }
    T excess = 0;
    if (a.size() >= b.size()) {
        for (std::size_t l = m; l < a.size(); l++) {
            excess += a[l];
        }
        return finish_enclosure<T>(common, excess, ta, tb);
    }
    for (std::size_t l = m; l < b.size(); l++) {
        excess += b[l];
    }
    return finish_enclosure<T>(common, excess, tb, ta);
}

double log_thermal_weight(std::uint64_t k, std::uint64_t l, double log_q, double log_one_minus_q) {
    double value = log_multiset_count(k, l) + static_cast<double>(k) * log_one_minus_q;
    if (l > 0) {
        value += static_cast<double>(l) * log_q;
    }
    return value;
}

}  // namespace

double PhotonNumberDistribution::total_mass() const {
    double total = tail_mass;
    for (double w : weights) {
        total += w;
    }
    return total;
}

Rational PhotonNumberDistribution::exact_total_mass() const {
    if (!exact) {
        throw DomainError("exact_total_mass: distribution is not exact");
    }
    Rational total = exact_tail_mass;
    for (const auto &w : exact_weights) {
        total += w;
    }
    return total;
}

ThermalParams ThermalParams::with_float(std::uint64_t k, double x) {
    if (k == 0) {
        throw DomainError("thermal state needs at least one mode");
    }
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw DomainError("mean photon number x must be finite and nonnegative");
    }
    return ThermalParams{k, x, std::nullopt};
}

ThermalParams ThermalParams::with_rational(std::uint64_t k, const Rational &x) {
    if (k == 0) {
        throw DomainError("thermal state needs at least one mode");
    }
    if (x < 0) {
        throw DomainError("mean photon number x must be nonnegative");
    }
    return ThermalParams{k, to_double(x), x};
}

PhotonNumberDistribution reduced_number_distribution(
    std::uint64_t n, std::uint64_t k, std::uint64_t p, Arithmetic arithmetic) {
    check_reduction_args(n, k);
    PhotonNumberDistribution result;
    result.weights.resize(p + 1);
    if (use_exact(arithmetic, n + p)) {
        result.exact = true;
        result.exact_weights.resize(p + 1);
        BigInt total = multiset_count_exact(n, p);
        for (std::uint64_t l = 0; l <= p; l++) {
            Rational w(multiset_count_exact(k, l) * multiset_count_exact(n - k, p - l), total);
            w.canonicalize();
            result.weights[l] = to_double(w);
            result.exact_weights[l] = std::move(w);
        }
        result.relative_error = kEps;
        return result;
    }
    // w(l+1) / w(l) = (l+k)(p-l) / ((l+1)(p-l+n-k-1)) decreases in l. Anchor
    // w = 1 at the mode, recur outward, and normalise: nothing overflows and
    // each step costs at most four roundings.
    double kd = static_cast<double>(k);
    double pd = static_cast<double>(p);
    double tail_modes = static_cast<double>(n - k - 1);
    auto ratio = [&](std::uint64_t l) {
        double ld = static_cast<double>(l);
        return ((ld + kd) * (pd - ld)) / ((ld + 1.0) * (pd - ld + tail_modes));
    };
    std::uint64_t mode = 0;
    while (mode < p && ratio(mode) >= 1.0) {
        mode++;
    }
    result.weights[mode] = 1.0;
    for (std::uint64_t l = mode; l < p; l++) {
        result.weights[l + 1] = result.weights[l] * ratio(l);
    }
    for (std::uint64_t l = mode; l > 0; l--) {
        result.weights[l - 1] = result.weights[l] / ratio(l - 1);
    }
    double sum = 0.0;
    for (double w : result.weights) {
        sum += w;
    }
    for (double &w : result.weights) {
        w /= sum;
    }
    // 4 roundings per recurrence step, p for the sum, 1 for the division.
    result.relative_error = (5.0 * pd + 4.0) * kEps;
    return result;
}

std::uint64_t thermal_cutoff(std::uint64_t k, double x, double tail_eps) {
    if (!(tail_eps > 0.0 && tail_eps < 1.0)) {
        throw DomainError("tail_eps must lie in (0, 1)");
    }
    if (x == 0.0) {
        return 0;
    }
    double q = x / (1.0 + x);
    double log_q = std::log(x) - std::log1p(x);
    double log_one_minus_q = -std::log1p(x);
    double log_eps = std::log(tail_eps);
    double kd = static_cast<double>(k);
    for (std::uint64_t cutoff = 0; cutoff < kMaxThermalCutoff; cutoff++) {
        double cd = static_cast<double>(cutoff);
        // g(l+1)/g(l) = q (l+k)/(l+1) is decreasing in l, so everything past
        // cutoff+1 is dominated by a geometric series with this ratio.
        double ratio = q * (cd + 1.0 + kd) / (cd + 2.0);
        if (ratio >= 1.0) {
            continue;
        }
        double log_bound = log_thermal_weight(k, cutoff + 1, log_q, log_one_minus_q) - std::log1p(-ratio);
        if (log_bound <= log_eps) {
            return cutoff;
        }
    }
    throw ResourceError("thermal_number_distribution: cutoff exceeds the supported range");
}

PhotonNumberDistribution thermal_number_distribution(
    const ThermalParams &params, double tail_eps, std::size_t min_support, Arithmetic arithmetic) {
    if (params.k == 0) {
        throw DomainError("thermal state needs at least one mode");
    }
    if (!(params.x >= 0.0) || !std::isfinite(params.x)) {
        throw DomainError("mean photon number x must be finite and nonnegative");
    }
    std::uint64_t cutoff = thermal_cutoff(params.k, params.x, tail_eps);
    std::size_t support = std::max<std::size_t>(cutoff + 1, min_support);
    std::uint64_t k = params.k;

    PhotonNumberDistribution result;
    result.weights.resize(support);
    bool exact = arithmetic == Arithmetic::kExact ||
                 (arithmetic == Arithmetic::kAuto && params.exact_x.has_value());
    if (exact) {
        Rational x = params.exact_x.value_or(from_double(params.x));
        result.exact = true;
        result.exact_weights.resize(support);
        Rational one_plus = 1 + x;
        Rational q = x / one_plus;
        Rational g = 1 / rational_power(one_plus, k);
        Rational sum = 0;
        for (std::size_t l = 0; l < support; l++) {
            if (l > 0) {
                g *= q;
                g *= Rational(static_cast<unsigned long>(l - 1 + k), static_cast<unsigned long>(l));
                g.canonicalize();
            }
            sum += g;
            result.weights[l] = to_double(g);
            result.exact_weights[l] = g;
        }
        result.exact_tail_mass = 1 - sum;
        result.tail_mass = to_double(result.exact_tail_mass);
        result.relative_error = kEps;
        return result;
    }

    double x = params.x;
    if (x == 0.0) {
        result.weights.assign(support, 0.0);
        result.weights[0] = 1.0;
        return result;
    }
    // Same scheme as for f: unnormalised weights anchored at the mode, the
    // tail summed until its geometric remainder is negligible, and the whole
    // law normalised by its total.
    double q = x / (1.0 + x);
    double kd = static_cast<double>(k);
    auto ratio = [&](std::uint64_t l) {
        double ld = static_cast<double>(l);
        return q * (ld + kd) / (ld + 1.0);
    };
    std::uint64_t mode = 0;
    while (ratio(mode) >= 1.0) {
        if (++mode > kMaxThermalCutoff) {
            throw ResourceError("thermal_number_distribution: mode exceeds the supported range");
        }
    }
    std::uint64_t top = std::max<std::uint64_t>(support - 1, mode);
    std::vector<double> w(top + 1);
    w[mode] = 1.0;
    for (std::uint64_t l = mode; l < top; l++) {
        w[l + 1] = w[l] * ratio(l);
    }
    for (std::uint64_t l = mode; l > 0; l--) {
        w[l - 1] = w[l] / ratio(l - 1);
    }
    double head = 0.0;
    for (std::size_t l = 0; l < support; l++) {
        head += w[l];
    }
    double tail = 0.0;
    for (std::uint64_t l = support; l <= top; l++) {
        tail += w[l];
    }
    std::uint64_t last = top;
    double term = w[top];
    for (;;) {
        double r = ratio(last);
        term *= r;
        last++;
        double remainder = term / (1.0 - r);
        if (remainder <= kEps * kEps * (head + tail)) {
            tail += remainder;
            break;
        }
        tail += term;
        if (last - top > kMaxThermalCutoff) {
            throw ResourceError("thermal_number_distribution: tail summation did not converge");
        }
    }
    double total = head + tail;
    for (std::size_t l = 0; l < support; l++) {
        result.weights[l] = w[l] / total;
    }
    result.tail_mass = tail / total;
    // 5 roundings per step away from the mode (two inside q), one per
    // summed term, one for the division.
    double steps = static_cast<double>(std::max(mode, last - mode));
    result.relative_error = (5.0 * steps + static_cast<double>(last + 1) + 4.0) * kEps;
    return result;
}

double log_likelihood_ratio(std::uint64_t n, std::uint64_t k, std::uint64_t p, std::uint64_t l) {
    check_reduction_args(n, k);
    if (p == 0) {
        throw DomainError("likelihood_ratio: p = 0 makes the thermal reference degenerate");
    }
    if (l > p) {
        throw DomainError("likelihood_ratio: l must not exceed p");
    }
    double nd = static_cast<double>(n);
    double pd = static_cast<double>(p);
    double value = log_multiset_count(n - k, p - l) - log_multiset_count(n, p) +
                   static_cast<double>(l + k) * std::log1p(pd / nd);
    if (l > 0) {
        value -= static_cast<double>(l) * std::log(pd / nd);
    }
    return value;
}

double likelihood_ratio(std::uint64_t n, std::uint64_t k, std::uint64_t p, std::uint64_t l) {
    return std::exp(log_likelihood_ratio(n, k, p, l));
}

double likelihood_ratio_product_form(std::uint64_t n, std::uint64_t k, std::uint64_t p, std::uint64_t l) {
    check_reduction_args(n, k);
    if (p == 0 || l > p) {
        throw DomainError("likelihood_ratio_product_form: need p >= 1 and l <= p");
    }
    double nd = static_cast<double>(n);
    double pd = static_cast<double>(p);
    // Mantissa and binary exponent kept apart so long products never
    // underflow before the final scaling.
    double mantissa = 1.0;
    long exponent = 0;
    auto renormalise = [&] {
        int e = 0;
        mantissa = std::frexp(mantissa, &e);
        exponent += e;
    };
    for (std::uint64_t t = 1; t <= k; t++) {
        mantissa *= 1.0 - static_cast<double>(t) / nd;
        renormalise();
    }
    for (std::uint64_t t = 1; t + 1 <= l; t++) {
        mantissa *= 1.0 - static_cast<double>(t) / pd;
        renormalise();
    }
    for (std::uint64_t t = 1; t <= k + l; t++) {
        mantissa /= 1.0 - static_cast<double>(t) / (nd + pd);
        renormalise();
    }
    return std::ldexp(mantissa, static_cast<int>(std::clamp<long>(exponent, -100000, 100000)));
}

Rational likelihood_ratio_product_form_exact(
    std::uint64_t n, std::uint64_t k, std::uint64_t p, std::uint64_t l) {
    check_reduction_args(n, k);
    if (p == 0 || l > p) {
        throw DomainError("likelihood_ratio_product_form_exact: need p >= 1 and l <= p");
    }
    auto frac = [](std::uint64_t num, std::uint64_t den) {
        return Rational(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
    };
    Rational value = 1;
    for (std::uint64_t t = 1; t <= k; t++) {
        value *= frac(n - t, n);
    }
    for (std::uint64_t t = 1; t + 1 <= l; t++) {
        value *= frac(p - t, p);
    }
    for (std::uint64_t t = 1; t <= k + l; t++) {
        value /= frac(n + p - t, n + p);
    }
    value.canonicalize();
    return value;
}

double sup_likelihood_ratio(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::uint64_t l = 0; l <= p; l++) {
        best = std::max(best, log_likelihood_ratio(n, k, p, l));
    }
    return std::exp(best);
}

DistanceInterval l1_distance(const PhotonNumberDistribution &a, const PhotonNumberDistribution &b) {
    DistanceInterval result;
    if (a.exact && b.exact) {
        auto enc = enclose<Rational>(a.exact_weights, a.exact_tail_mass, b.exact_weights, b.exact_tail_mass);
        result.lo = lower_double(enc.lo);
        result.hi = upper_double(enc.hi);
        if (enc.lo == enc.hi) {
            result.exact = enc.lo;
        }
        return result;
    }
    auto enc = enclose<double>(a.weights, a.tail_mass, b.weights, b.tail_mass);
    double terms = static_cast<double>(a.weights.size() + b.weights.size() + 4);
    double allowance = a.relative_error + b.relative_error + 4.0 * terms * kEps;
    result.lo = std::max(0.0, enc.lo - allowance);
    result.hi = enc.hi + allowance;
    return result;
}

BoundValue theorem_bound(std::uint64_t n, std::uint64_t k) {
    if (k == 0) {
        throw DomainError("theorem_bound: k must be at least 1");
    }
    if (k + 3 > n) {
        throw RegimeError(
            "theorem_bound: requires 1 <= k <= n-3 so that (n-k-1)(n-k-2) > 0 (got n=" + std::to_string(n) +
            ", k=" + std::to_string(k) + ")");
    }
    BoundValue ratio = likelihood_ratio_bound(n, k);
    BoundValue result;
    result.exact = 2 * (ratio.exact - 1);
    result.exact.canonicalize();
    result.value = to_double(result.exact);
    return result;
}

BoundValue likelihood_ratio_bound(std::uint64_t n, std::uint64_t k) {
    if (k == 0 || k + 3 > n) {
        throw RegimeError("likelihood_ratio_bound: requires 1 <= k <= n-3");
    }
    BigInt nn(static_cast<unsigned long>(n));
    BigInt den = BigInt(static_cast<unsigned long>(n - k - 1)) * BigInt(static_cast<unsigned long>(n - k - 2));
    BoundValue result;
    result.exact = Rational(nn * nn, den);
    result.exact.canonicalize();
    result.value = to_double(result.exact);
    return result;
}

BoundValue classical_bound(std::uint64_t n, std::uint64_t k) {
    if (k == 0) {
        throw DomainError("classical_bound: k must be at least 1");
    }
    if (k + 4 > n) {
        throw RegimeError(
            "classical_bound: requires 1 <= k <= n-4 so that n-k-3 > 0 (got n=" + std::to_string(n) +
            ", k=" + std::to_string(k) + ")");
    }
    BoundValue result;
    result.exact = Rational(static_cast<unsigned long>(2 * (k + 3)), static_cast<unsigned long>(n - k - 3));
    result.exact.canonicalize();
    result.value = to_double(result.exact);
    return result;
}

TheoremCheck check_theorem(
    std::uint64_t n,
    std::uint64_t k,
    std::uint64_t p,
    double tail_eps,
    Arithmetic arithmetic,
    std::optional<Rational> x_override) {
    check_reduction_args(n, k);
    TheoremCheck check;
    check.n = n;
    check.k = k;
    check.p = p;
    check.bound = theorem_bound(n, k);
    check.h_bound = likelihood_ratio_bound(n, k);
    check.exact = use_exact(arithmetic, n + p);

    Rational x = x_override.value_or(
        Rational(static_cast<unsigned long>(p), static_cast<unsigned long>(n)));
    x.canonicalize();
    check.x = to_double(x);
    check.exact_x = x;

    Arithmetic mode = check.exact ? Arithmetic::kExact : Arithmetic::kFloat;
    auto f = reduced_number_distribution(n, k, p, mode);
    auto params = check.exact ? ThermalParams::with_rational(k, x) : ThermalParams::with_float(k, check.x);
    auto g = thermal_number_distribution(params, tail_eps, p + 1, mode);
    check.distance = l1_distance(f, g);

    check.slack = check.bound.value - check.distance.hi;
    if (check.distance.exact.has_value()) {
        check.exact_slack = check.bound.exact - *check.distance.exact;
        check.pass = *check.exact_slack >= 0;
    } else {
        check.pass = check.distance.hi <= check.bound.value;
    }

    if (p > 0 && !x_override.has_value()) {
        check.sup_h = sup_likelihood_ratio(n, k, p);
        check.h_ok = check.sup_h <= check.h_bound.value * (1.0 + 1e-12);
    }
    return check;
}

}  // namespace definetti
