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

#ifndef DEFINETTI_COMBINATORICS_H
#define DEFINETTI_COMBINATORICS_H

#include <cstdint>

#include "definetti/rational.h"

namespace definetti {

/// Number of ways to distribute p photons over n modes, C(n+p-1, n-1),
/// held both exactly and as a natural logarithm.
struct MultisetCount {
    std::uint64_t n = 1;
    std::uint64_t p = 0;
    BigInt exact = 1;
    double log_value = 0.0;
};

/// Throws DomainError when n == 0.
MultisetCount multiset_count(std::uint64_t n, std::uint64_t p);

/// Exact C(n+p-1, n-1) without the log-domain companion.
BigInt multiset_count_exact(std::uint64_t n, std::uint64_t p);

/// log C(n+p-1, n-1).
double log_multiset_count(std::uint64_t n, std::uint64_t p);

/// Exact binomial coefficient; zero when b > a.
BigInt binomial(std::uint64_t a, std::uint64_t b);

/// log C(a, b). Throws DomainError when b > a.
///
/// Small min(b, a-b) is summed term by term; otherwise the result is a
/// difference of log_gamma values. Both paths only use log() from the
/// platform, never lgamma(), so results are stable across C libraries.
double log_binomial(std::uint64_t a, std::uint64_t b);

/// log Gamma(x) for x > 0 from a fixed-coefficient Stirling series with
/// upward recurrence for small arguments. Throws DomainError for x <= 0.
double log_gamma(double x);

/// log(a!) via log_gamma.
double log_factorial(std::uint64_t a);

/// Natural log of a positive big integer (log(0) is -inf).
double log_of(const BigInt &value);

}  // namespace definetti

#endif
