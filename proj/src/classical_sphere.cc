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

#include "definetti/classical_sphere.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "definetti/combinatorics.h"
#include "definetti/errors.h"

namespace definetti {

namespace {

constexpr std::size_t kCrossingScan = 512;
constexpr std::size_t kBatchSize = 1 << 16;
constexpr unsigned kMaxDepth = 20;

void check_marginal_k(const SphereModel &model, std::uint64_t k) {
    if (k == 0 || k >= model.n) {
        throw DomainError("sphere marginal: requires 1 <= k <= n-1 (got n=" + std::to_string(model.n) +
                          ", k=" + std::to_string(k) + ")");
    }
}

// Radial densities after r = R sin(theta), including the Jacobian
// S_{k-1} r^{k-1} dr/dtheta:
//   sphere(theta) = e^{Ls} cos^{n-k-1} sin^{k-1}
//   gauss(theta)  = e^{Lg - R^2 sin^2 / (2 s^2)} cos sin^{k-1}
// The difference is formed as gauss * expm1(log(sphere / gauss)) with the
// log ratio assembled analytically, so nearly equal densities do not cancel.
struct RadialIntegrands {
    double radius;
    double kd;
    double log_sphere_scale;    // Ls = log(c_{n,k} S_{k-1} R^k)
    double log_gauss_scale;     // Lg = log((2 pi s^2)^{-k/2} S_{k-1} R^k)
    double log_scale_ratio;     // Ls - Lg without the shared terms
    double cos_power;           // n - k - 1
    double half_r2_over_var;    // R^2 / (2 s^2)

    RadialIntegrands(const SphereModel &model, std::uint64_t k) {
        radius = model.radius;
        kd = static_cast<double>(k);
        double nd = static_cast<double>(model.n);
        double var = model.variance();
        double log_surface = std::log(2.0) + 0.5 * kd * std::log(std::numbers::pi) - log_gamma(0.5 * kd);
        double shared = log_surface + kd * std::log(radius);
        double log_c = log_marginal_normaliser(model, k);
        double log_g = -0.5 * kd * std::log(2.0 * std::numbers::pi * var);
        log_sphere_scale = log_c + shared;
        log_gauss_scale = log_g + shared;
        log_scale_ratio = log_c - log_g;
        cos_power = nd - kd - 1.0;
        half_r2_over_var = 0.5 * radius * radius / var;
    }

    static double log_cos(double theta) {
        double s = std::sin(theta);
        double s2 = s * s;
        return s2 < 0.5 ? 0.5 * std::log1p(-s2) : std::log(std::cos(theta));
    }

    double log_sin_part(double theta) const {
        return kd == 1.0 ? 0.0 : (kd - 1.0) * std::log(std::sin(theta));
    }

    double sphere(double theta) const {
        if (theta <= 0.0 && kd > 1.0) {
            return 0.0;
        }
        double log_c = cos_power == 0.0 ? 0.0 : cos_power * log_cos(theta);
        return std::exp(log_sphere_scale + log_c + log_sin_part(theta));
    }

    double log_gauss(double theta) const {
        double s = std::sin(theta);
        return log_gauss_scale - half_r2_over_var * s * s + log_cos(theta) + log_sin_part(theta);
    }

    double log_ratio(double theta) const {
        double s = std::sin(theta);
        return log_scale_ratio + (cos_power - 1.0) * log_cos(theta) + half_r2_over_var * s * s;
    }

    double difference(double theta) const {
        if ((theta <= 0.0 && kd > 1.0) || theta >= std::numbers::pi / 2) {
            return 0.0;
        }
        return std::exp(log_gauss(theta)) * std::expm1(log_ratio(theta));
    }
};

template <typename F>
QuadratureResult integrate(F f, double a, double b, double tolerance) {
    double error = 0.0;
    double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, kMaxDepth, tolerance, &error);
    return {value, error, 1};
}

}  // namespace

SphereModel SphereModel::standard(std::uint64_t n) {
    SphereModel model{n, std::sqrt(static_cast<double>(n))};
    model.validate();
    return model;
}

double SphereModel::variance() const {
    return radius * radius / static_cast<double>(n);
}

void SphereModel::validate() const {
    if (n < 2) {
        throw DomainError("SphereModel: dimension n must be at least 2");
    }
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw DomainError("SphereModel: radius must be positive and finite");
    }
}

void draw_sphere_point(const SphereModel &model, std::mt19937_64 &rng, std::vector<double> &out) {
    std::normal_distribution<double> normal(0.0, 1.0);
    out.resize(model.n);
    double norm_sq = 0.0;
    do {
        norm_sq = 0.0;
        for (auto &v : out) {
            v = normal(rng);
            norm_sq += v * v;
        }
    } while (norm_sq == 0.0);
    double scale = model.radius / std::sqrt(norm_sq);
    for (auto &v : out) {
        v *= scale;
    }
}

std::vector<std::vector<double>> sample_sphere(const SphereModel &model, std::size_t count, std::uint64_t seed) {
    model.validate();
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> samples(count);
    for (auto &s : samples) {
        draw_sphere_point(model, rng, s);
    }
    return samples;
}

double log_marginal_normaliser(const SphereModel &model, std::uint64_t k) {
    model.validate();
    check_marginal_k(model, k);
    double nd = static_cast<double>(model.n);
    double kd = static_cast<double>(k);
    return log_gamma(0.5 * nd) - log_gamma(0.5 * (nd - kd)) - 0.5 * kd * std::log(std::numbers::pi) -
           kd * std::log(model.radius);
}

double marginal_density(const SphereModel &model, std::uint64_t k, double r) {
    double log_c = log_marginal_normaliser(model, k);
    if (r < 0.0) {
        throw DomainError("marginal_density: radial coordinate must be nonnegative");
    }
    if (r > model.radius) {
        return 0.0;
    }
    double exponent = 0.5 * (static_cast<double>(model.n) - static_cast<double>(k) - 2.0);
    double u = r / model.radius;
    if (exponent == 0.0) {
        return std::exp(log_c);
    }
    return std::exp(log_c + exponent * std::log1p(-u * u));
}

double gaussian_density(const SphereModel &model, std::uint64_t k, double r) {
    double var = model.variance();
    double kd = static_cast<double>(k);
    return std::exp(-0.5 * kd * std::log(2.0 * std::numbers::pi * var) - 0.5 * r * r / var);
}

double gaussian_mass_outside(const SphereModel &model, std::uint64_t k) {
    double kd = static_cast<double>(k);
    return boost::math::gamma_q(0.5 * kd, 0.5 * model.radius * model.radius / model.variance());
}

QuadratureResult marginal_mass(const SphereModel &model, std::uint64_t k) {
    model.validate();
    check_marginal_k(model, k);
    RadialIntegrands f(model, k);
    return integrate([&](double t) { return f.sphere(t); }, 0.0, std::numbers::pi / 2, 1e-14);
}

QuadratureResult l1_distance_to_gaussian(const SphereModel &model, std::uint64_t k, double tolerance) {
    model.validate();
    if (k == 0 || k + 4 > model.n) {
        throw RegimeError("l1_distance_to_gaussian: requires 1 <= k <= n-4 (got n=" + std::to_string(model.n) +
                          ", k=" + std::to_string(k) + ")");
    }
    RadialIntegrands f(model, k);

    // Split [0, pi/2) at the zeros of the log density ratio so that each
    // piece has a smooth integrand.
    const double end = std::numbers::pi / 2;
    auto log_ratio = [&](double t) { return f.log_ratio(t); };
    std::vector<double> cuts{0.0};
    double prev_t = 0.0;
    double prev_v = log_ratio(0.0);
    for (std::size_t i = 1; i < kCrossingScan; i++) {
        double t = end * static_cast<double>(i) / static_cast<double>(kCrossingScan);
        double v = log_ratio(t);
        if ((prev_v < 0.0 && v > 0.0) || (prev_v > 0.0 && v < 0.0)) {
            std::uintmax_t iterations = 200;
            auto bracket = boost::math::tools::toms748_solve(
                log_ratio, prev_t, t, prev_v, v, boost::math::tools::eps_tolerance<double>(52), iterations);
            cuts.push_back(0.5 * (bracket.first + bracket.second));
        }
        prev_t = t;
        prev_v = v;
    }
    cuts.push_back(end);

    QuadratureResult total;
    for (std::size_t i = 0; i + 1 < cuts.size(); i++) {
        auto piece = integrate([&](double t) { return std::abs(f.difference(t)); }, cuts[i], cuts[i + 1], tolerance);
        total.value += piece.value;
        total.error_estimate += piece.error_estimate;
        total.pieces++;
    }
    total.value += gaussian_mass_outside(model, k);
    return total;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

McEstimate mc_l1_estimate(const SphereModel &model, std::uint64_t k, std::size_t count, std::uint64_t seed) {
    model.validate();
    check_marginal_k(model, k);
    if (count < 1000) {
        throw DomainError("mc_l1_estimate: needs at least 1000 samples");
    }
    double log_c = log_marginal_normaliser(model, k);
    double exponent = 0.5 * (static_cast<double>(model.n) - static_cast<double>(k) - 2.0);
    double var = model.variance();
    double log_gauss_c = -0.5 * static_cast<double>(k) * std::log(2.0 * std::numbers::pi * var);
    double inv_r2 = 1.0 / (model.radius * model.radius);

    double sum = 0.0;
    double sum_sq = 0.0;
    std::vector<double> point;
    std::size_t batches = (count + kBatchSize - 1) / kBatchSize;
    for (std::size_t batch = 0; batch < batches; batch++) {
        std::mt19937_64 rng(derive_seed(seed, batch));
        std::size_t size = std::min(kBatchSize, count - batch * kBatchSize);
        double batch_sum = 0.0;
        double batch_sq = 0.0;
        for (std::size_t s = 0; s < size; s++) {
            draw_sphere_point(model, rng, point);
            double r2 = 0.0;
            for (std::uint64_t i = 0; i < k; i++) {
                r2 += point[i] * point[i];
            }
            double log_marginal = log_c + exponent * std::log1p(-std::min(r2 * inv_r2, 1.0));
            double log_gauss = log_gauss_c - 0.5 * r2 / var;
            double w = std::abs(1.0 - std::exp(log_gauss - log_marginal));
            batch_sum += w;
            batch_sq += w * w;
        }
        sum += batch_sum;
        sum_sq += batch_sq;
    }
    double nd = static_cast<double>(count);
    double mean = sum / nd;
    double var_w = std::max(0.0, (sum_sq / nd - mean * mean) * nd / (nd - 1.0));
    McEstimate result;
    result.count = count;
    result.estimate = mean + gaussian_mass_outside(model, k);
    result.standard_error = std::sqrt(var_w / nd);
    return result;
}

}  // namespace definetti
