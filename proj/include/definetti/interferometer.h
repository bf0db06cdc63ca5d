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

#ifndef DEFINETTI_INTERFEROMETER_H
#define DEFINETTI_INTERFEROMETER_H

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "definetti/sector_basis.h"

namespace definetti {

/// Two-mode beamsplitter acting on (mode_a, mode_b) as
///   [[e^{i phi} cos theta, -sin theta],
///    [e^{i phi} sin theta,  cos theta]].
struct BeamSplitter {
    std::uint32_t mode_a = 0;
    std::uint32_t mode_b = 1;
    double theta = 0.0;
    double phi = 0.0;
};

/// Multiplies one mode by e^{i phi}.
struct PhaseShift {
    std::uint32_t mode = 0;
    double phi = 0.0;
};

using OpticalElement = std::variant<BeamSplitter, PhaseShift>;

/// The n x n mode matrix of a single element.
Eigen::MatrixXcd element_matrix(std::uint32_t modes, const OpticalElement &element);

/// Product of elements applied in list order (the first element acts first).
Eigen::MatrixXcd compose(std::uint32_t modes, const std::vector<OpticalElement> &elements);

/// Factor a unitary into nearest-neighbour beamsplitters followed by one
/// layer of phase shifts by nulling the subdiagonal of U^dagger column by
/// column. compose(n, decompose(U)) reproduces U.
std::vector<OpticalElement> decompose(const Eigen::MatrixXcd &unitary);

/// A passive linear interferometer: a unitary acting on the mode
/// annihilation operators, a_j^dagger -> sum_i U_ij a_i^dagger.
struct InterferometerSpec {
    std::uint32_t modes = 0;
    Eigen::MatrixXcd unitary;
    std::optional<std::vector<OpticalElement>> factorization;

    /// Throws DomainError when the matrix is not square or not unitary to
    /// within `tolerance`.
    static InterferometerSpec from_unitary(const Eigen::MatrixXcd &unitary, double tolerance = 1e-10);
    static InterferometerSpec from_elements(std::uint32_t modes, std::vector<OpticalElement> elements);

    /// max |U^dagger U - I|
    double unitarity_defect() const;
    /// max |compose(factorization) - U|; zero without a factorization.
    double factorization_defect() const;
};

/// Haar-distributed unitary from the QR decomposition of a complex Ginibre
/// matrix, with R's diagonal phases folded back into Q.
InterferometerSpec haar_random_unitary(std::uint32_t modes, std::mt19937_64 &rng);
InterferometerSpec haar_random_unitary(std::uint32_t modes, std::uint64_t seed);

/// (1/sqrt 2) [[1, 1], [1, -1]].
Eigen::MatrixXcd balanced_beamsplitter();

/// Matrix of the interferometer on the p-photon sector:
///   <m'|U_F|m> = per(U[m'|m]) / sqrt(prod_i m_i! prod_j m'_j!)
/// where U[m'|m] repeats row j of U m'_j times and column i m_i times.
Eigen::MatrixXcd lift_interferometer(const InterferometerSpec &spec, std::uint32_t p, const ResourceLimits &limits = {});
Eigen::MatrixXcd lift_unitary(const Eigen::MatrixXcd &unitary, const SectorBasis &basis, const ResourceLimits &limits = {});

/// Sector matrix of the one-body operator sum_ij A_ij a_i^dagger a_j.
Eigen::MatrixXcd lift_generator(const Eigen::MatrixXcd &generator, const SectorBasis &basis);

/// exp of the lifted generator: the sector image of exp(A) built without
/// permanents.
Eigen::MatrixXcd lift_by_exponential(const Eigen::MatrixXcd &generator, const SectorBasis &basis);

/// max |M^dagger M - I|
double unitarity_defect(const Eigen::MatrixXcd &matrix);

}  // namespace definetti

#endif
