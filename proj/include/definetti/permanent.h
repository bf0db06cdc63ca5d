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

#ifndef DEFINETTI_PERMANENT_H
#define DEFINETTI_PERMANENT_H

#include <Eigen/Dense>
#include <complex>
#include <cstddef>

#include "definetti/sector_basis.h"

namespace definetti {

/// Matrix permanent by Ryser's inclusion-exclusion formula, visiting column
/// subsets in Gray-code order so each step updates the row sums by a single
/// column. O(2^d d).
///
/// The 0x0 permanent is 1. Throws DomainError for non-square input and
/// ResourceError when d > max_dim.
std::complex<double> permanent(const Eigen::MatrixXcd &matrix, std::size_t max_dim = kDefaultMaxPermanentDim);

}  // namespace definetti

#endif
