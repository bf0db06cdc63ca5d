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

#ifndef DEFINETTI_CLASSICAL_SPHERE_H
#define DEFINETTI_CLASSICAL_SPHERE_H

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace definetti {

/// Uniform distribution on the sphere of the given radius in R^n. The
/// comparison Gaussian has per-coordinate variance radius^2 / n, which is
/// the standard normal for the default radius sqrt(n).
struct SphereModel {
    std::uint64_t n = 2;
    double radius = 1.4142135623730951;

    static SphereModel standard(std::uint64_t n);
    double variance() const;
    /// Throws DomainError unless n >= 2 and radius > 0.
    void validate() const;
};

/// `count` points, each a Gaussian vector rescaled to the radius.
std::vector<std::vector<double>> sample_sphere(const SphereModel &model, std::size_t count, std::uint64_t seed);

/// One point on the sphere drawn with `rng`.
void draw_sphere_point(const SphereModel &model, std::mt19937_64 &rng, std::vector<double> &out);

/// log c_{n,k}, the normaliser of the density of the first k coordinates.
double log_marginal_normaliser(const SphereModel &model, std::uint64_t k);

/// Density of the first k coordinates at any point of norm r:
/// c_{n,k} (1 - r^2/R^2)^{(n-k-2)/2}, zero for r > R. Requires
/// 1 <= k <= n-1 and r >= 0.
double marginal_density(const SphereModel &model, std::uint64_t k, double r);

/// Product Gaussian density N(0, variance)^k at norm r.
double gaussian_density(const SphereModel &model, std::uint64_t k, double r);

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t pieces = 0;
};

/// Integral of marginal_density over the k-ball, by quadrature.
QuadratureResult marginal_mass(const SphereModel &model, std::uint64_t k);

/// int |marginal - Gaussian| over R^k: the radial integral over the ball
/// (split at the density crossings, adaptive Gauss-Kronrod on each piece,
/// with r = R sin(theta) removing the endpoint behaviour at r = R) plus the
/// Gaussian mass outside the ball. Requires 1 <= k <= n-4 (RegimeError).
QuadratureResult l1_distance_to_gaussian(const SphereModel &model, std::uint64_t k, double tolerance = 1e-12);

struct McEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::size_t count = 0;
};

/// Monte Carlo estimate of the same L1 distance: the mean of
/// |1 - gaussian/marginal| at the radius of sampled marginals, plus the
/// exact Gaussian mass outside the ball. Samples are drawn in fixed-size
/// batches with seeds derived from `seed`, so the result only depends on
/// (model, k, count, seed). Requires count >= 1000.
McEstimate mc_l1_estimate(const SphereModel &model, std::uint64_t k, std::size_t count, std::uint64_t seed);

/// Gaussian mass outside the k-ball of the model's radius.
double gaussian_mass_outside(const SphereModel &model, std::uint64_t k);

/// Seed for batch `index` derived from a base seed (SplitMix64 mixing).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace definetti

#endif
