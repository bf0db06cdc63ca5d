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

#include "definetti/sector_state.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "definetti/combinatorics.h"
#include "definetti/errors.h"

namespace definetti {

namespace {

void check_keep(std::uint32_t n, std::uint32_t keep) {
    if (keep == 0 || keep >= n) {
        throw DomainError("partial_trace: keep must satisfy 1 <= k < n (got n=" + std::to_string(n) +
                          ", k=" + std::to_string(keep) + ")");
    }
}

std::uint32_t sum_of(const Composition &m, std::size_t begin, std::size_t end) {
    std::uint32_t s = 0;
    for (std::size_t i = begin; i < end; i++) {
        s += m[i];
    }
    return s;
}

// Accumulator for one photon-number block of the kept modes.
struct BlockBuilder {
    SectorBasis basis;
    Eigen::MatrixXcd matrix;
    Eigen::VectorXd diagonal;
    std::vector<Rational> exact;
};

ReducedState finish_blocks(std::uint32_t keep, std::map<std::uint32_t, BlockBuilder> &builders, bool diagonal,
                           bool exact) {
    ReducedState reduced;
    reduced.modes = keep;
    for (auto &[photons, b] : builders) {
        ReducedBlock block{photons, 0.0, std::nullopt, SectorState{b.basis, {}, std::nullopt, std::nullopt}};
        if (exact) {
            Rational total = 0;
            for (const auto &v : b.exact) {
                total += v;
            }
            if (total == 0) {
                continue;
            }
            block.exact_weight = total;
            block.weight = to_double(total);
            std::vector<Rational> normalised;
            Eigen::VectorXd diag(static_cast<Eigen::Index>(b.exact.size()));
            for (std::size_t i = 0; i < b.exact.size(); i++) {
                Rational v = b.exact[i] / total;
                diag(static_cast<Eigen::Index>(i)) = to_double(v);
                normalised.push_back(std::move(v));
            }
            block.state = SectorState::from_diagonal(b.basis, diag);
            block.state.exact_diagonal = std::move(normalised);
        } else if (diagonal) {
            double total = b.diagonal.sum();
            if (total == 0.0) {
                continue;
            }
            block.weight = total;
            block.state = SectorState::from_diagonal(b.basis, b.diagonal / total);
        } else {
            double total = b.matrix.trace().real();
            if (total == 0.0) {
                continue;
            }
            block.weight = total;
            Eigen::MatrixXcd m = b.matrix / total;
            block.state = SectorState::from_matrix(b.basis, 0.5 * (m + m.adjoint()));
        }
        reduced.blocks.push_back(std::move(block));
    }
    return reduced;
}

}  // namespace

SectorState SectorState::from_matrix(SectorBasis basis, Eigen::MatrixXcd matrix) {
    auto dim = static_cast<Eigen::Index>(basis.size());
    if (matrix.rows() != dim || matrix.cols() != dim) {
        throw DomainError("SectorState: matrix size does not match the sector dimension");
    }
    return SectorState{std::move(basis), std::move(matrix), std::nullopt, std::nullopt};
}

SectorState SectorState::from_diagonal(SectorBasis basis, Eigen::VectorXd diagonal) {
    if (diagonal.size() != static_cast<Eigen::Index>(basis.size())) {
        throw DomainError("SectorState: diagonal size does not match the sector dimension");
    }
    return SectorState{std::move(basis), Eigen::MatrixXcd(), std::move(diagonal), std::nullopt};
}

SectorState SectorState::from_pure(SectorBasis basis, const Eigen::VectorXcd &amplitudes) {
    if (amplitudes.size() != static_cast<Eigen::Index>(basis.size())) {
        throw DomainError("SectorState: amplitude vector size does not match the sector dimension");
    }
    Eigen::VectorXcd psi = amplitudes / amplitudes.norm();
    return from_matrix(std::move(basis), psi * psi.adjoint());
}

Eigen::MatrixXcd SectorState::dense() const {
    if (diagonal) {
        return diagonal->cast<std::complex<double>>().asDiagonal();
    }
    return matrix;
}

double SectorState::trace() const {
    if (diagonal) {
        return diagonal->sum();
    }
    return matrix.trace().real();
}

double SectorState::min_eigenvalue() const {
    if (diagonal) {
        return diagonal->size() == 0 ? 0.0 : diagonal->minCoeff();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double SectorState::hermiticity_defect() const {
    if (diagonal) {
        return 0.0;
    }
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

SectorState sigma_state(std::uint32_t n, std::uint32_t p, const ResourceLimits &limits) {
    SectorBasis basis(n, p, limits);
    auto dim = basis.size();
    Rational entry(1, static_cast<unsigned long>(dim));
    Eigen::VectorXd diag = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(dim), to_double(entry));
    SectorState state = SectorState::from_diagonal(std::move(basis), std::move(diag));
    state.exact_diagonal = std::vector<Rational>(dim, entry);
    return state;
}

Eigen::VectorXcd random_pure_amplitudes(const SectorBasis &basis, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXcd psi(static_cast<Eigen::Index>(basis.size()));
    for (Eigen::Index i = 0; i < psi.size(); i++) {
        double re = normal(rng);
        double im = normal(rng);
        psi(i) = std::complex<double>(re, im);
    }
    return psi / psi.norm();
}

SectorState apply(const Eigen::MatrixXcd &sector_unitary, const SectorState &state) {
    auto dim = static_cast<Eigen::Index>(state.dimension());
    if (sector_unitary.rows() != dim || sector_unitary.cols() != dim) {
        throw DomainError("apply: sector unitary of size " + std::to_string(sector_unitary.rows()) +
                          " does not match state dimension " + std::to_string(dim));
    }
    Eigen::MatrixXcd out;
    if (state.diagonal) {
        out = sector_unitary * state.diagonal->cast<std::complex<double>>().asDiagonal() * sector_unitary.adjoint();
    } else {
        out = sector_unitary * state.matrix * sector_unitary.adjoint();
    }
    return SectorState::from_matrix(state.basis, 0.5 * (out + out.adjoint()));
}

const ReducedBlock *ReducedState::find(std::uint32_t photons) const {
    for (const auto &b : blocks) {
        if (b.photons == photons) {
            return &b;
        }
    }
    return nullptr;
}

double ReducedState::total_weight() const {
    double total = 0.0;
    for (const auto &b : blocks) {
        total += b.weight;
    }
    return total;
}

ReducedState partial_trace(const SectorState &state, std::uint32_t keep) {
    std::uint32_t n = state.basis.modes();
    check_keep(n, keep);
    std::uint32_t p = state.basis.photons();
    const auto &states = state.basis.states();

    std::map<std::uint32_t, BlockBuilder> builders;
    auto builder = [&](std::uint32_t l) -> BlockBuilder & {
        auto it = builders.find(l);
        if (it == builders.end()) {
            SectorBasis basis(keep, l, ResourceLimits{kDefaultMaxPermanentDim, state.basis.size()});
            auto dim = static_cast<Eigen::Index>(basis.size());
            BlockBuilder b{basis, Eigen::MatrixXcd(), Eigen::VectorXd::Zero(dim), {}};
            if (state.exact_diagonal) {
                b.exact.assign(basis.size(), Rational(0));
            }
            if (!state.diagonal) {
                b.matrix = Eigen::MatrixXcd::Zero(dim, dim);
            }
            it = builders.emplace(l, std::move(b)).first;
        }
        return it->second;
    };
    for (std::uint32_t l = 0; l <= p; l++) {
        builder(l);
    }

    auto kept = [&](const Composition &m) { return Composition(m.begin(), m.begin() + keep); };

    if (state.diagonal) {
        for (std::size_t i = 0; i < states.size(); i++) {
            const Composition &m = states[i];
            auto l = sum_of(m, 0, keep);
            BlockBuilder &b = builder(l);
            auto idx = b.basis.index_of(kept(m));
            b.diagonal(static_cast<Eigen::Index>(idx)) += (*state.diagonal)(static_cast<Eigen::Index>(i));
            if (state.exact_diagonal) {
                b.exact[idx] += (*state.exact_diagonal)[i];
            }
        }
        return finish_blocks(keep, builders, true, state.exact_diagonal.has_value());
    }

    // <m_A m_B| rho |m'_A m'_B> contributes to |m_A><m'_A| only when m_B = m'_B.
    std::map<Composition, std::vector<std::size_t>> by_traced;
    for (std::size_t i = 0; i < states.size(); i++) {
        by_traced[Composition(states[i].begin() + keep, states[i].end())].push_back(i);
    }
    for (const auto &[traced, members] : by_traced) {
        auto l = p - sum_of(traced, 0, traced.size());
        BlockBuilder &b = builder(l);
        std::vector<Eigen::Index> local;
        local.reserve(members.size());
        for (auto i : members) {
            local.push_back(static_cast<Eigen::Index>(b.basis.index_of(kept(states[i]))));
        }
        for (std::size_t r = 0; r < members.size(); r++) {
            for (std::size_t c = 0; c < members.size(); c++) {
                b.matrix(local[r], local[c]) +=
                    state.matrix(static_cast<Eigen::Index>(members[r]), static_cast<Eigen::Index>(members[c]));
            }
        }
    }
    return finish_blocks(keep, builders, false, false);
}

ReducedState partial_trace(const std::vector<std::pair<double, SectorState>> &mixture, std::uint32_t keep) {
    if (mixture.empty()) {
        throw DomainError("partial_trace: empty mixture");
    }
    std::uint32_t n = mixture.front().second.basis.modes();
    std::map<std::uint32_t, std::pair<double, Eigen::MatrixXcd>> merged;
    std::map<std::uint32_t, SectorBasis> bases;
    for (const auto &[weight, state] : mixture) {
        if (state.basis.modes() != n) {
            throw DomainError("partial_trace: mixture components have different mode counts");
        }
        if (weight < 0.0) {
            throw DomainError("partial_trace: negative mixture weight");
        }
        ReducedState part = partial_trace(state, keep);
        for (const auto &block : part.blocks) {
            double w = weight * block.weight;
            Eigen::MatrixXcd m = w * block.state.dense();
            auto it = merged.find(block.photons);
            if (it == merged.end()) {
                merged.emplace(block.photons, std::make_pair(w, std::move(m)));
                bases.emplace(block.photons, block.state.basis);
            } else {
                it->second.first += w;
                it->second.second += m;
            }
        }
    }
    ReducedState reduced;
    reduced.modes = keep;
    for (auto &[photons, entry] : merged) {
        if (entry.first == 0.0) {
            continue;
        }
        Eigen::MatrixXcd normalised = entry.second / entry.first;
        reduced.blocks.push_back(ReducedBlock{photons, entry.first, std::nullopt,
                                              SectorState::from_matrix(bases.at(photons), normalised)});
    }
    return reduced;
}

ReducedState thermal_state(std::uint32_t k, double x, std::uint32_t max_photons, const ResourceLimits &limits) {
    if (k == 0) {
        throw DomainError("thermal_state: needs at least one mode");
    }
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw DomainError("thermal_state: mean photon number must be finite and nonnegative");
    }
    // Single-mode occupation probabilities x^m / (1+x)^{m+1}.
    std::vector<double> single(max_photons + 1);
    for (std::uint32_t m = 0; m <= max_photons; m++) {
        single[m] = x == 0.0 ? (m == 0 ? 1.0 : 0.0)
                             : std::exp(static_cast<double>(m) * std::log(x) -
                                        (static_cast<double>(m) + 1.0) * std::log1p(x));
    }
    ReducedState state;
    state.modes = k;
    double kept = 0.0;
    for (std::uint32_t l = 0; l <= max_photons; l++) {
        SectorBasis basis(k, l, limits);
        Eigen::VectorXd diag(static_cast<Eigen::Index>(basis.size()));
        for (std::size_t i = 0; i < basis.size(); i++) {
            double prob = 1.0;
            for (auto m : basis.state(i)) {
                prob *= single[m];
            }
            diag(static_cast<Eigen::Index>(i)) = prob;
        }
        double weight = diag.sum();
        kept += weight;
        if (weight == 0.0) {
            continue;
        }
        state.blocks.push_back(ReducedBlock{l, weight, std::nullopt,
                                            SectorState::from_diagonal(std::move(basis), diag / weight)});
    }
    state.tail_mass = std::max(0.0, 1.0 - kept);
    return state;
}

double trace_norm(const Eigen::MatrixXcd &hermitian) {
    if (hermitian.size() == 0) {
        return 0.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const SectorState &a, const SectorState &b) {
    if (!(a.basis == b.basis)) {
        throw DomainError("trace_distance: states live on different sectors");
    }
    if (a.diagonal && b.diagonal) {
        return (*a.diagonal - *b.diagonal).cwiseAbs().sum();
    }
    return trace_norm(a.dense() - b.dense());
}

double trace_distance(const ReducedState &a, const ReducedState &b) {
    if (a.modes != b.modes) {
        throw DomainError("trace_distance: states have different mode counts");
    }
    double total = 0.0;
    auto block_norm = [](const ReducedBlock &blk) { return std::abs(blk.weight); };
    for (const auto &blk : a.blocks) {
        const ReducedBlock *other = b.find(blk.photons);
        if (!other) {
            total += block_norm(blk);
            continue;
        }
        if (blk.state.diagonal && other->state.diagonal) {
            total += (blk.weight * *blk.state.diagonal - other->weight * *other->state.diagonal).cwiseAbs().sum();
        } else {
            total += trace_norm(blk.weight * blk.state.dense() - other->weight * other->state.dense());
        }
    }
    for (const auto &blk : b.blocks) {
        if (!a.find(blk.photons)) {
            total += block_norm(blk);
        }
    }
    return total + a.tail_mass + b.tail_mass;
}

}  // namespace definetti
