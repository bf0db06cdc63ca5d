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

#ifndef DEFINETTI_ERRORS_H
#define DEFINETTI_ERRORS_H

#include <stdexcept>
#include <string>

namespace definetti {

/// An argument lies outside the mathematical domain of an operation
/// (for example n = 0 modes, or k >= n when tracing out modes).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// The parameters are valid inputs but outside the regime where a bound is
/// defined, e.g. k > n - 3 for the quantum bound.
struct RegimeError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A computation would exceed a configured resource limit (permanent
/// dimension, sector size).
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace definetti

#endif
