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

#ifndef DEFINETTI_DISTRIBUTIONS_H
#define DEFINETTI_DISTRIBUTIONS_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "definetti/rational.h"

namespace definetti {

enum class Arithmetic {
    /// Exact rationals when n + p <= kExactPathLimit, floats beyond.
    kAuto,
    kExact,
    kFloat,
};

inline constexpr std::uint64_t kExactPathLimit = 64;

/// Probability weights over total photon number l = 0, 1, ..., with the
/// mass beyond the stored support carried separately in tail_mass.
///
/// `weights` is always populated. When `exact` is set, `exact_weights` and
/// `exact_tail_mass` hold the authoritative values and `weights` is their
/// rounding. For float distributions `relative_error` bounds the relative
/// error of every stored weight.
struct PhotonNumberDistribution {
    std::vector<double> weights;
    double tail_mass = 0.0;
    bool exact = false;
    std::vector<Rational> exact_weights;
    Rational exact_tail_mass = 0;
    double relative_error = 0.0;

    std::size_t support_size() const {
        return weights.size();
    }
    /// Sum of weights plus tail mass.
    double total_mass() const;
    /// Exact total mass; requires `exact`.
    Rational exact_total_mass() const;
};

/// k single-mode thermal states with x mean photons each.
struct ThermalParams {
    std::uint64_t k = 1;
    double x = 0.0;
    /// Set when x is known exactly, which enables the rational path.
    std::optional<Rational> exact_x;

    static ThermalParams with_float(std::uint64_t k, double x);
    static ThermalParams with_rational(std::uint64_t k, const Rational &x);
};

/// Photon-number distribution f of the first k modes of the uniform
/// p-photon state on n modes: f(l) = a_l^k a_{p-l}^{n-k} / a_p^n.
///
/// Requires 1 <= k <= n - 1; throws DomainError otherwise.
PhotonNumberDistribution reduced_number_distribution(
    std::uint64_t n, std::uint64_t k, std::uint64_t p, Arithmetic arithmetic = Arithmetic::kAuto);

/// Total photon-number distribution g of k i.i.d. thermal modes,
/// g(l) = a_l^k x^l / (1+x)^{l+k}, a negative binomial law.
///
/// The support is cut at the smallest L whose closed-form tail bound
/// g(L+1) / (1 - r), r = x (L+k+1) / ((1+x)(L+2)), is at most tail_eps,
/// and never shorter than min_support entries. tail_mass is the actual
/// remaining mass (exact when the rational path is taken).
PhotonNumberDistribution thermal_number_distribution(
    const ThermalParams &params,
    double tail_eps,
    std::size_t min_support = 0,
    Arithmetic arithmetic = Arithmetic::kAuto);

/// Smallest cutoff L (support 0..L) whose analytic tail bound is <= tail_eps.
std::uint64_t thermal_cutoff(std::uint64_t k, double x, double tail_eps);

/// h(l) = f(l) / g(l) at x = p/n, evaluated in the log domain.
/// Requires 1 <= k <= n-1, p >= 1, l <= p.
double likelihood_ratio(std::uint64_t n, std::uint64_t k, std::uint64_t p, std::uint64_t l);
double log_likelihood_ratio(std::uint64_t n, std::uint64_t k, std::uint64_t p, std::uint64_t l);

/// The same ratio from its telescoped product form
///   prod_{t=1}^k (1 - t/n) prod_{t=1}^{l-1} (1 - t/p) / prod_{t=1}^{k+l} (1 - t/(n+p)).
double likelihood_ratio_product_form(std::uint64_t n, std::uint64_t k, std::uint64_t p, std::uint64_t l);
Rational likelihood_ratio_product_form_exact(
    std::uint64_t n, std::uint64_t k, std::uint64_t p, std::uint64_t l);

/// max_l h(l) over 0..p.
double sup_likelihood_ratio(std::uint64_t n, std::uint64_t k, std::uint64_t p);

/// Enclosure of sum_l |a(l) - b(l)|.
struct DistanceInterval {
    double lo = 0.0;
    double hi = 0.0;
    /// Present when both inputs are exact and the tails do not leave any
    /// freedom, i.e. lo == hi in exact arithmetic.
    std::optional<Rational> exact;

    double width() const {
        return hi - lo;
    }
    bool contains(double value) const {
        return lo <= value && value <= hi;
    }
    double midpoint() const {
        return 0.5 * (lo + hi);
    }
};

/// L1 distance accounting for the unknown placement of tail masses. Float
/// inputs widen the interval by their rounding error bound; exact inputs
/// are rounded outward.
DistanceInterval l1_distance(const PhotonNumberDistribution &a, const PhotonNumberDistribution &b);

struct BoundValue {
    Rational exact;
    double value = 0.0;
};

/// 2 (n^2 / ((n-k-1)(n-k-2)) - 1). Requires 1 <= k <= n - 3.
BoundValue theorem_bound(std::uint64_t n, std::uint64_t k);

/// n^2 / ((n-k-1)(n-k-2)), the bound on sup_l h(l). Requires 1 <= k <= n - 3.
BoundValue likelihood_ratio_bound(std::uint64_t n, std::uint64_t k);

/// 2 (k+3) / (n-k-3). Requires 1 <= k <= n - 4.
BoundValue classical_bound(std::uint64_t n, std::uint64_t k);

/// One point of the theorem check: the distance between the reduced
/// uniform p-photon state and the k-mode thermal state at x against the
/// bound. x defaults to p/n.
struct TheoremCheck {
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::uint64_t p = 0;
    double x = 0.0;
    std::optional<Rational> exact_x;
    bool exact = false;
    DistanceInterval distance;
    BoundValue bound;
    /// bound - distance.hi
    double slack = 0.0;
    std::optional<Rational> exact_slack;
    /// sup_l h(l); zero when p == 0 (h undefined).
    double sup_h = 0.0;
    BoundValue h_bound;
    bool h_ok = true;
    bool pass = false;
};

TheoremCheck check_theorem(
    std::uint64_t n,
    std::uint64_t k,
    std::uint64_t p,
    double tail_eps = 1e-12,
    Arithmetic arithmetic = Arithmetic::kAuto,
    std::optional<Rational> x_override = std::nullopt);

}  // namespace definetti

#endif
