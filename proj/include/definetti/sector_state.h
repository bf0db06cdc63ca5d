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

#ifndef DEFINETTI_SECTOR_STATE_H
#define DEFINETTI_SECTOR_STATE_H

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "definetti/rational.h"
#include "definetti/sector_basis.h"

namespace definetti {

/// A density operator supported on a single photon-number sector.
///
/// Diagonal states keep only `diagonal` (and `exact_diagonal` when the
/// entries are known rationals); `matrix` is then empty and dense() builds
/// it on demand.
struct SectorState {
    SectorBasis basis;
    Eigen::MatrixXcd matrix;
    std::optional<Eigen::VectorXd> diagonal;
    std::optional<std::vector<Rational>> exact_diagonal;

    static SectorState from_matrix(SectorBasis basis, Eigen::MatrixXcd matrix);
    static SectorState from_diagonal(SectorBasis basis, Eigen::VectorXd diagonal);
    static SectorState from_pure(SectorBasis basis, const Eigen::VectorXcd &amplitudes);

    bool is_diagonal() const {
        return diagonal.has_value();
    }
    std::size_t dimension() const {
        return basis.size();
    }
    Eigen::MatrixXcd dense() const;
    double trace() const;
    double min_eigenvalue() const;
    /// max |rho - rho^dagger|
    double hermiticity_defect() const;
};

/// The uniform mixture over all p-photon Fock states of n modes. Entries are
/// exactly 1/a_p^n.
SectorState sigma_state(std::uint32_t n, std::uint32_t p, const ResourceLimits &limits = {});

/// Haar-uniform pure state of the sector (normalised complex Gaussian).
Eigen::VectorXcd random_pure_amplitudes(const SectorBasis &basis, std::mt19937_64 &rng);

/// U rho U^dagger, averaged with its adjoint. Throws DomainError on a
/// dimension mismatch.
SectorState apply(const Eigen::MatrixXcd &sector_unitary, const SectorState &state);

/// One photon-number block of a reduced state: weight times a normalised
/// state on the l-photon sector of the kept modes.
struct ReducedBlock {
    std::uint32_t photons = 0;
    double weight = 0.0;
    std::optional<Rational> exact_weight;
    SectorState state;
};

/// Block-diagonal state on `modes` modes, blocks sorted by photon number.
/// tail_mass is probability not represented by any block.
struct ReducedState {
    std::uint32_t modes = 0;
    std::vector<ReducedBlock> blocks;
    double tail_mass = 0.0;

    const ReducedBlock *find(std::uint32_t photons) const;
    double total_weight() const;
};

/// Trace out all but the first `keep` modes. Requires 1 <= keep < n.
/// Diagonal inputs take a fast path that stays exact for exact diagonals.
ReducedState partial_trace(const SectorState &state, std::uint32_t keep);

/// Same for a probabilistic mixture of sector states (weights must sum to 1
/// within rounding); blocks with equal photon number are merged.
ReducedState partial_trace(const std::vector<std::pair<double, SectorState>> &mixture, std::uint32_t keep);

/// k-mode thermal state, each mode geometric with mean x, built mode by mode
/// in the Fock basis and kept for total photon numbers 0..max_photons. The
/// rest of the probability is recorded as tail_mass.
ReducedState thermal_state(std::uint32_t k, double x, std::uint32_t max_photons, const ResourceLimits &limits = {});

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const Eigen::MatrixXcd &hermitian);

/// ||a - b||_1 for states on the same sector; diagonal states reduce to the
/// L1 distance of their spectra.
double trace_distance(const SectorState &a, const SectorState &b);

/// Blockwise trace norm plus both tail masses. Exact when each tail lives on
/// photon numbers where the other state has no block; an upper bound in
/// general.
double trace_distance(const ReducedState &a, const ReducedState &b);

}  // namespace definetti

#endif
