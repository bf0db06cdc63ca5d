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

#include "definetti/permanent.h"

#include <bit>
#include <cstdint>
#include <string>

#include "definetti/errors.h"

namespace definetti {

std::complex<double> permanent(const Eigen::MatrixXcd &matrix, std::size_t max_dim) {
    if (matrix.rows() != matrix.cols()) {
        throw DomainError("permanent: matrix must be square");
    }
    auto d = static_cast<std::size_t>(matrix.rows());
    if (d > max_dim) {
        throw ResourceError("permanent: dimension " + std::to_string(d) + " exceeds the limit " +
                            std::to_string(max_dim));
    }
    if (d == 0) {
        return 1.0;
    }
    Eigen::VectorXcd row_sums = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d));
    std::complex<double> total = 0.0;
    std::uint64_t subsets = std::uint64_t{1} << d;
    std::uint64_t gray = 0;
    for (std::uint64_t g = 1; g < subsets; g++) {
        int column = std::countr_zero(g);
        std::uint64_t bit = std::uint64_t{1} << column;
        gray ^= bit;
        if (gray & bit) {
            row_sums += matrix.col(column);
        } else {
            row_sums -= matrix.col(column);
        }
        std::complex<double> product = row_sums.prod();
        if (std::popcount(gray) & 1) {
            total -= product;
        } else {
            total += product;
        }
    }
    return (d & 1) ? -total : total;
}

}  // namespace definetti
