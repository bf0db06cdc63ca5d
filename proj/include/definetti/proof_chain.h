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

#ifndef DEFINETTI_PROOF_CHAIN_H
#define DEFINETTI_PROOF_CHAIN_H

#include <cstdint>
#include <vector>

namespace definetti {

/// S(n, k) = -sum_{t=0}^{k} log(1 - t/n), summed with log1p.
///
/// k = -1 is the empty sum and yields 0. Throws DomainError when k >= n
/// (the t = n term is log 0) or k < -1.
double S(std::int64_t n, std::int64_t k);

/// J(x) = x + (1 - x) log(1 - x) on [0, 1], with J(1) = 1.
/// Throws DomainError outside [0, 1].
double J(double x);

/// Relative slack tolerance used by verify_chain unless overridden.
inline constexpr double kChainTolerance = 1e-12;

/// Result of a single `lhs <= rhs` check.
struct InequalityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    /// rhs - lhs
    double slack = 0.0;
    bool ok = true;
    /// lhs > rhs, but by less than the tolerance.
    bool tolerance_only = false;
};

InequalityCheck check_le(double lhs, double rhs, double relative_tolerance);

struct ChainRecord {
    std::uint64_t l = 0;
    double log_h = 0.0;
    /// S(n, k+2) - S(n, k)
    double bound_log_h = 0.0;
    /// bound_log_h - log_h
    double slack = 0.0;
    bool relation_js_ok = true;
    bool convex_j_ok = true;
    bool shifted_ok = true;
    bool final_ok = true;
    /// Smallest slack among the checks of each family at this l.
    double relation_js_slack = 0.0;
    double convex_j_slack = 0.0;
    double shifted_slack = 0.0;
    double final_slack = 0.0;
};

/// Every inequality in the chain from log h(l) to the final ratio bound,
/// evaluated for l = 0..p.
///
/// Families:
///   relation_js  n J(k/n) <= S(n,k) <= n J((k+1)/n) at (n,k), (p,l-1), (n+p,k+l)
///   convex_j     (n+p) J((k+l)/(n+p)) <= n J(k/n) + p J(l/p)
///   shifted      S(n+p,k+l-1) <= S(n,k) + S(p,l) and S(n+p,k+l) <= S(n,k+2) + S(p,l-1)
///   final        log h(l) <= S(n,k+2) - S(n,k) and h(l) <= n^2/((n-k-1)(n-k-2))
struct ChainReport {
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::uint64_t p = 0;
    std::vector<ChainRecord> per_l_records;
    bool relation_js_ok = true;
    bool convex_j_ok = true;
    bool shifted_ok = true;
    bool final_ok = true;
    double max_log_h = 0.0;
    double bound_log_h = 0.0;
    double min_relation_js_slack = 0.0;
    double min_convex_j_slack = 0.0;
    double min_shifted_slack = 0.0;
    double min_final_slack = 0.0;
    /// Number of checks that only passed thanks to the tolerance.
    std::uint64_t tolerance_only_count = 0;
    double tolerance = kChainTolerance;

    bool all_ok() const {
        return relation_js_ok && convex_j_ok && shifted_ok && final_ok;
    }
};

/// Requires 1 <= k <= n-3 (RegimeError) and p >= 1 (DomainError).
ChainReport verify_chain(std::uint64_t n, std::uint64_t k, std::uint64_t p, double tolerance = kChainTolerance);

/// `count` integers spread logarithmically over [lo, hi], deduplicated,
/// always including both ends.
std::vector<std::uint64_t> log_spaced(std::uint64_t lo, std::uint64_t hi, std::size_t count);

/// {1, 2, floor(n/4), n-3} restricted to 1 <= k <= n-3, sorted and unique.
std::vector<std::uint64_t> chain_k_values(std::uint64_t n);

struct ChainGridPoint {
    std::uint64_t n;
    std::uint64_t k;
    std::uint64_t p;
};

/// Default sweep: n log-spaced over [5, 200], p over [1, 200], k from
/// chain_k_values.
std::vector<ChainGridPoint> default_chain_grid(std::size_t n_count = 16, std::size_t p_count = 16);

}  // namespace definetti

#endif
