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

#include "definetti/proof_chain.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "definetti/errors.h"

namespace definetti {

namespace {

// Prefix sums of -log(1 - t/N); value(k) equals S(N, k) bit for bit.
class SumTable {
   public:
    explicit SumTable(std::uint64_t size) : size_(size), prefix_(size + 1, 0.0) {
        double total = 0.0;
        double nd = static_cast<double>(size);
        for (std::uint64_t t = 0; t < size; t++) {
            total += -std::log1p(-static_cast<double>(t) / nd);
            prefix_[t + 1] = total;
        }
    }

    double value(std::int64_t k) const {
        if (k < -1 || k >= static_cast<std::int64_t>(size_)) {
            throw DomainError("S: k out of range for n=" + std::to_string(size_));
        }
        return prefix_[static_cast<std::size_t>(k + 1)];
    }

   private:
    std::uint64_t size_;
    std::vector<double> prefix_;
};

double ratio(std::uint64_t num, std::uint64_t den) {
    return static_cast<double>(num) / static_cast<double>(den);
}

struct FamilyTracker {
    bool ok = true;
    double min_slack = 0.0;
    bool seen = false;
    std::uint64_t tolerance_only = 0;

    void add(const InequalityCheck &c, double &record_slack, bool &record_ok, bool &record_seen) {
        ok = ok && c.ok;
        if (!seen || c.slack < min_slack) {
            min_slack = c.slack;
        }
        seen = true;
        if (!record_seen || c.slack < record_slack) {
            record_slack = c.slack;
        }
        record_seen = true;
        record_ok = record_ok && c.ok;
        if (c.tolerance_only) {
            tolerance_only++;
        }
    }
};

}  // namespace

double S(std::int64_t n, std::int64_t k) {
    if (n <= 0) {
        throw DomainError("S: n must be positive");
    }
    if (k < -1 || k >= n) {
        throw DomainError("S: requires -1 <= k <= n-1 (got n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
    }
    double total = 0.0;
    double nd = static_cast<double>(n);
    for (std::int64_t t = 0; t <= k; t++) {
        total += -std::log1p(-static_cast<double>(t) / nd);
    }
    return total;
}

double J(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("J: argument must lie in [0, 1]");
    }
    if (x == 1.0) {
        return 1.0;
    }
    return x + (1.0 - x) * std::log1p(-x);
}

InequalityCheck check_le(double lhs, double rhs, double relative_tolerance) {
    InequalityCheck c;
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = rhs - lhs;
    double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    if (lhs <= rhs) {
        c.ok = true;
    } else if (lhs - rhs <= relative_tolerance * scale) {
        c.ok = true;
        c.tolerance_only = true;
    } else {
        c.ok = false;
    }
    return c;
}

ChainReport verify_chain(std::uint64_t n, std::uint64_t k, std::uint64_t p, double tolerance) {
    if (k == 0 || k + 3 > n) {
        throw RegimeError(
            "verify_chain: requires 1 <= k <= n-3 (got n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
    }
    if (p == 0) {
        throw DomainError("verify_chain: requires p >= 1");
    }
    ChainReport report;
    report.n = n;
    report.k = k;
    report.p = p;
    report.tolerance = tolerance;

    SumTable sn(n);
    SumTable sp(p);
    SumTable snp(n + p);
    auto ki = static_cast<std::int64_t>(k);
    double nd = static_cast<double>(n);
    double pd = static_cast<double>(p);
    double npd = nd + pd;
    double s_nk = sn.value(ki);
    double s_nk2 = sn.value(ki + 2);
    report.bound_log_h = s_nk2 - s_nk;
    double h_bound = (nd * nd) / ((nd - static_cast<double>(k) - 1.0) * (nd - static_cast<double>(k) - 2.0));

    FamilyTracker relation;
    FamilyTracker convex;
    FamilyTracker shifted;
    FamilyTracker final_family;

    auto sandwich = [&](const SumTable &table, std::uint64_t big_n, std::int64_t small_k, ChainRecord &rec,
                        bool &seen) {
        double s = table.value(small_k);
        double scale = static_cast<double>(big_n);
        double lower = scale * J(ratio(static_cast<std::uint64_t>(small_k), big_n));
        double upper = scale * J(ratio(static_cast<std::uint64_t>(small_k) + 1, big_n));
        relation.add(check_le(lower, s, tolerance), rec.relation_js_slack, rec.relation_js_ok, seen);
        relation.add(check_le(s, upper, tolerance), rec.relation_js_slack, rec.relation_js_ok, seen);
    };

    report.max_log_h = -std::numeric_limits<double>::infinity();
    report.per_l_records.reserve(p + 1);
    for (std::uint64_t l = 0; l <= p; l++) {
        ChainRecord rec;
        rec.l = l;
        auto li = static_cast<std::int64_t>(l);
        double s_pl1 = sp.value(li - 1);
        rec.log_h = -s_nk - s_pl1 + snp.value(ki + li);
        rec.bound_log_h = report.bound_log_h;
        rec.slack = rec.bound_log_h - rec.log_h;
        report.max_log_h = std::max(report.max_log_h, rec.log_h);

        bool seen_relation = false;
        sandwich(sn, n, ki, rec, seen_relation);
        if (l >= 1) {
            sandwich(sp, p, li - 1, rec, seen_relation);
        }
        sandwich(snp, n + p, ki + li, rec, seen_relation);

        bool seen_convex = false;
        double convex_lhs = npd * J(ratio(k + l, n + p));
        double convex_rhs = nd * J(ratio(k, n)) + pd * J(ratio(l, p));
        convex.add(check_le(convex_lhs, convex_rhs, tolerance), rec.convex_j_slack, rec.convex_j_ok, seen_convex);

        bool seen_shifted = false;
        if (l < p) {
            double lhs = snp.value(ki + li - 1);
            double rhs = s_nk + sp.value(li);
            shifted.add(check_le(lhs, rhs, tolerance), rec.shifted_slack, rec.shifted_ok, seen_shifted);
        }
        shifted.add(check_le(snp.value(ki + li), s_nk2 + s_pl1, tolerance), rec.shifted_slack, rec.shifted_ok,
                    seen_shifted);

        bool seen_final = false;
        final_family.add(check_le(rec.log_h, rec.bound_log_h, tolerance), rec.final_slack, rec.final_ok, seen_final);
        final_family.add(check_le(std::exp(rec.log_h), h_bound, tolerance), rec.final_slack, rec.final_ok,
                         seen_final);

        report.per_l_records.push_back(rec);
    }

    report.relation_js_ok = relation.ok;
    report.convex_j_ok = convex.ok;
    report.shifted_ok = shifted.ok;
    report.final_ok = final_family.ok;
    report.min_relation_js_slack = relation.min_slack;
    report.min_convex_j_slack = convex.min_slack;
    report.min_shifted_slack = shifted.min_slack;
    report.min_final_slack = final_family.min_slack;
    report.tolerance_only_count =
        relation.tolerance_only + convex.tolerance_only + shifted.tolerance_only + final_family.tolerance_only;
    return report;
}

std::vector<std::uint64_t> log_spaced(std::uint64_t lo, std::uint64_t hi, std::size_t count) {
    if (lo == 0 || lo > hi) {
        throw DomainError("log_spaced: requires 1 <= lo <= hi");
    }
    std::vector<std::uint64_t> values;
    if (count <= 1 || lo == hi) {
        values.push_back(lo);
        if (hi != lo) {
            values.push_back(hi);
        }
        return values;
    }
    double a = std::log(static_cast<double>(lo));
    double b = std::log(static_cast<double>(hi));
    for (std::size_t i = 0; i < count; i++) {
        double t = static_cast<double>(i) / static_cast<double>(count - 1);
        auto v = static_cast<std::uint64_t>(std::llround(std::exp(a + t * (b - a))));
        values.push_back(std::clamp(v, lo, hi));
    }
    values.front() = lo;
    values.back() = hi;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

std::vector<std::uint64_t> chain_k_values(std::uint64_t n) {
    std::vector<std::uint64_t> ks;
    if (n < 4) {
        return ks;
    }
    for (std::uint64_t k : {std::uint64_t{1}, std::uint64_t{2}, n / 4, n - 3}) {
        if (k >= 1 && k + 3 <= n) {
            ks.push_back(k);
        }
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
}

std::vector<ChainGridPoint> default_chain_grid(std::size_t n_count, std::size_t p_count) {
    std::vector<ChainGridPoint> grid;
    for (auto n : log_spaced(5, 200, n_count)) {
        for (auto k : chain_k_values(n)) {
            for (auto p : log_spaced(1, 200, p_count)) {
                grid.push_back({n, k, p});
            }
        }
    }
    return grid;
}

}  // namespace definetti
