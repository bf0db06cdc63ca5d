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

#include "definetti/interferometer.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

#include "definetti/errors.h"
#include "definetti/permanent.h"

namespace definetti {

namespace {

using cd = std::complex<double>;

void check_mode(std::uint32_t modes, std::uint32_t mode) {
    if (mode >= modes) {
        throw DomainError("optical element addresses mode " + std::to_string(mode) + " of a " +
                          std::to_string(modes) + "-mode interferometer");
    }
}

// 1 / sqrt(prod_i m_i!)
double inverse_sqrt_factorials(const Composition &m) {
    double product = 1.0;
    for (auto count : m) {
        for (std::uint32_t j = 2; j <= count; j++) {
            product *= static_cast<double>(j);
        }
    }
    return 1.0 / std::sqrt(product);
}

std::vector<Eigen::Index> repeated_indices(const Composition &m) {
    std::vector<Eigen::Index> out;
    for (std::size_t mode = 0; mode < m.size(); mode++) {
        for (std::uint32_t c = 0; c < m[mode]; c++) {
            out.push_back(static_cast<Eigen::Index>(mode));
        }
    }
    return out;
}

}  // namespace

Eigen::MatrixXcd element_matrix(std::uint32_t modes, const OpticalElement &element) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(modes, modes);
    if (const auto *bs = std::get_if<BeamSplitter>(&element)) {
        check_mode(modes, bs->mode_a);
        check_mode(modes, bs->mode_b);
        if (bs->mode_a == bs->mode_b) {
            throw DomainError("beamsplitter needs two distinct modes");
        }
        cd phase = std::polar(1.0, bs->phi);
        double c = std::cos(bs->theta);
        double s = std::sin(bs->theta);
        m(bs->mode_a, bs->mode_a) = phase * c;
        m(bs->mode_a, bs->mode_b) = -s;
        m(bs->mode_b, bs->mode_a) = phase * s;
        m(bs->mode_b, bs->mode_b) = c;
    } else {
        const auto &ps = std::get<PhaseShift>(element);
        check_mode(modes, ps.mode);
        m(ps.mode, ps.mode) = std::polar(1.0, ps.phi);
    }
    return m;
}

Eigen::MatrixXcd compose(std::uint32_t modes, const std::vector<OpticalElement> &elements) {
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(modes, modes);
    for (const auto &e : elements) {
        total = element_matrix(modes, e) * total;
    }
    return total;
}

std::vector<OpticalElement> decompose(const Eigen::MatrixXcd &unitary) {
    if (unitary.rows() != unitary.cols()) {
        throw DomainError("decompose: matrix must be square");
    }
    auto n = static_cast<std::uint32_t>(unitary.rows());
    // T_N ... T_1 U^dagger = D, hence U = D^dagger T_N ... T_1.
    Eigen::MatrixXcd v = unitary.adjoint();
    std::vector<OpticalElement> elements;
    for (std::uint32_t c = 0; c + 1 < n; c++) {
        for (std::uint32_t r = n - 1; r > c; r--) {
            cd a = v(r - 1, c);
            cd b = v(r, c);
            if (std::abs(b) == 0.0) {
                continue;
            }
            BeamSplitter bs{r - 1, r, 0.0, 0.0};
            if (std::abs(a) == 0.0) {
                bs.theta = std::numbers::pi / 2;
            } else {
                bs.theta = std::atan2(std::abs(b), std::abs(a));
                bs.phi = std::arg(-b) - std::arg(a);
            }
            Eigen::Matrix2cd t;
            cd phase = std::polar(1.0, bs.phi);
            t << phase * std::cos(bs.theta), -std::sin(bs.theta), phase * std::sin(bs.theta), std::cos(bs.theta);
            Eigen::MatrixXcd rows(2, n);
            rows.row(0) = v.row(r - 1);
            rows.row(1) = v.row(r);
            rows = t * rows;
            v.row(r - 1) = rows.row(0);
            v.row(r) = rows.row(1);
            elements.emplace_back(bs);
        }
    }
    for (std::uint32_t i = 0; i < n; i++) {
        double phi = -std::arg(v(i, i));
        if (phi != 0.0) {
            elements.emplace_back(PhaseShift{i, phi});
        }
    }
    return elements;
}

double unitarity_defect(const Eigen::MatrixXcd &matrix) {
    if (matrix.size() == 0) {
        return 0.0;
    }
    Eigen::MatrixXcd gram = matrix.adjoint() * matrix;
    gram -= Eigen::MatrixXcd::Identity(matrix.cols(), matrix.cols());
    return gram.cwiseAbs().maxCoeff();
}

InterferometerSpec InterferometerSpec::from_unitary(const Eigen::MatrixXcd &unitary, double tolerance) {
    if (unitary.rows() != unitary.cols() || unitary.rows() == 0) {
        throw DomainError("interferometer: mode matrix must be square and non-empty");
    }
    if (definetti::unitarity_defect(unitary) > tolerance) {
        throw DomainError("interferometer: mode matrix is not unitary");
    }
    InterferometerSpec spec;
    spec.modes = static_cast<std::uint32_t>(unitary.rows());
    spec.unitary = unitary;
    return spec;
}

InterferometerSpec InterferometerSpec::from_elements(std::uint32_t modes, std::vector<OpticalElement> elements) {
    if (modes == 0) {
        throw DomainError("interferometer: needs at least one mode");
    }
    InterferometerSpec spec;
    spec.modes = modes;
    spec.unitary = compose(modes, elements);
    spec.factorization = std::move(elements);
    return spec;
}

double InterferometerSpec::unitarity_defect() const {
    return definetti::unitarity_defect(unitary);
}

double InterferometerSpec::factorization_defect() const {
    if (!factorization) {
        return 0.0;
    }
    return (compose(modes, *factorization) - unitary).cwiseAbs().maxCoeff();
}

InterferometerSpec haar_random_unitary(std::uint32_t modes, std::mt19937_64 &rng) {
    if (modes == 0) {
        throw DomainError("haar_random_unitary: needs at least one mode");
    }
    std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2);
    Eigen::MatrixXcd z(modes, modes);
    for (Eigen::Index c = 0; c < z.cols(); c++) {
        for (Eigen::Index r = 0; r < z.rows(); r++) {
            double re = normal(rng);
            double im = normal(rng);
            z(r, c) = cd(re, im);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd &packed = qr.matrixQR();
    for (Eigen::Index i = 0; i < q.cols(); i++) {
        cd diag = packed(i, i);
        double mag = std::abs(diag);
        cd phase = mag == 0.0 ? cd(1.0) : diag / mag;
        q.col(i) *= phase;
    }
    InterferometerSpec spec;
    spec.modes = modes;
    spec.unitary = std::move(q);
    return spec;
}

InterferometerSpec haar_random_unitary(std::uint32_t modes, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return haar_random_unitary(modes, rng);
}

Eigen::MatrixXcd balanced_beamsplitter() {
    Eigen::MatrixXcd u(2, 2);
    double s = std::numbers::sqrt2 / 2;
    u << s, s, s, -s;
    return u;
}

Eigen::MatrixXcd lift_unitary(const Eigen::MatrixXcd &unitary, const SectorBasis &basis, const ResourceLimits &limits) {
    if (unitary.rows() != basis.modes() || unitary.cols() != basis.modes()) {
        throw DomainError("lift: mode matrix size does not match the sector's mode count");
    }
    if (basis.photons() > limits.max_permanent_dim) {
        throw ResourceError("lift: photon number " + std::to_string(basis.photons()) +
                            " exceeds the permanent dimension limit " + std::to_string(limits.max_permanent_dim));
    }
    auto dim = static_cast<Eigen::Index>(basis.size());
    auto p = static_cast<Eigen::Index>(basis.photons());
    Eigen::MatrixXcd lifted(dim, dim);
    std::vector<std::vector<Eigen::Index>> repeats;
    std::vector<double> scales;
    repeats.reserve(basis.size());
    for (const auto &m : basis.states()) {
        repeats.push_back(repeated_indices(m));
        scales.push_back(inverse_sqrt_factorials(m));
    }
    Eigen::MatrixXcd sub(p, p);
    for (Eigen::Index col = 0; col < dim; col++) {
        const auto &in = repeats[static_cast<std::size_t>(col)];
        for (Eigen::Index row = 0; row < dim; row++) {
            const auto &out = repeats[static_cast<std::size_t>(row)];
            for (Eigen::Index a = 0; a < p; a++) {
                for (Eigen::Index b = 0; b < p; b++) {
                    sub(a, b) = unitary(out[static_cast<std::size_t>(a)], in[static_cast<std::size_t>(b)]);
                }
            }
            lifted(row, col) = permanent(sub, limits.max_permanent_dim) * scales[static_cast<std::size_t>(row)] *
                               scales[static_cast<std::size_t>(col)];
        }
    }
    return lifted;
}

Eigen::MatrixXcd lift_interferometer(const InterferometerSpec &spec, std::uint32_t p, const ResourceLimits &limits) {
    SectorBasis basis(spec.modes, p, limits);
    return lift_unitary(spec.unitary, basis, limits);
}

Eigen::MatrixXcd lift_generator(const Eigen::MatrixXcd &generator, const SectorBasis &basis) {
    std::uint32_t n = basis.modes();
    if (generator.rows() != n || generator.cols() != n) {
        throw DomainError("lift_generator: generator size does not match the sector's mode count");
    }
    auto dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd lifted = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; col++) {
        const Composition &m = basis.state(static_cast<std::size_t>(col));
        for (std::uint32_t i = 0; i < n; i++) {
            lifted(col, col) += generator(i, i) * static_cast<double>(m[i]);
            for (std::uint32_t j = 0; j < n; j++) {
                if (i == j || m[j] == 0) {
                    continue;
                }
                // a_i^dagger a_j |m> = sqrt(m_j (m_i + 1)) |m - e_j + e_i>
                Composition target = m;
                target[j] -= 1;
                target[i] += 1;
                auto row = static_cast<Eigen::Index>(basis.index_of(target));
                lifted(row, col) += generator(i, j) * std::sqrt(static_cast<double>(m[j]) * (m[i] + 1.0));
            }
        }
    }
    return lifted;
}

Eigen::MatrixXcd lift_by_exponential(const Eigen::MatrixXcd &generator, const SectorBasis &basis) {
    Eigen::MatrixXcd lifted = lift_generator(generator, basis);
    return lifted.exp();
}

}  // namespace definetti
