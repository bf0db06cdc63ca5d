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

#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "definetti/combinatorics.h"
#include "definetti/errors.h"
#include "oracles.h"

using namespace definetti;

TEST_CASE("multiset_count small cases") {
    CHECK(multiset_count(1, 7).exact == 1);
    CHECK(multiset_count(3, 0).exact == 1);
    CHECK(multiset_count(3, 2).exact == 6);
    CHECK(oracle::compositions(3, 2).size() == 6);
    CHECK(multiset_count(3, 2).log_value == doctest::Approx(std::log(6.0)).epsilon(1e-15));
    CHECK_THROWS_AS(multiset_count(0, 3), DomainError);
    CHECK_THROWS_AS(multiset_count_exact(0, 0), DomainError);
}

TEST_CASE("multiset_count matches enumeration and the definition") {
    for (std::uint32_t n = 1; n <= 20; n++) {
        for (std::uint32_t p = 0; p <= 20; p++) {
            BigInt expected = oracle::composition_count(n, p);
            CHECK(multiset_count_exact(n, p) == expected);
            if (expected <= 200000) {
                CHECK(oracle::compositions(n, p).size() == expected.get_ui());
            }
        }
    }
}

TEST_CASE("Pascal recurrence holds exactly") {
    for (std::uint64_t n = 2; n <= 40; n++) {
        for (std::uint64_t p = 1; p <= 40; p++) {
            CHECK(multiset_count_exact(n, p) == multiset_count_exact(n - 1, p) + multiset_count_exact(n, p - 1));
        }
    }
}

TEST_CASE("log_value is monotone in p") {
    for (std::uint64_t n = 1; n <= 50; n++) {
        double previous = log_multiset_count(n, 0);
        CHECK(previous == 0.0);
        for (std::uint64_t p = 1; p <= 300; p++) {
            double current = log_multiset_count(n, p);
            if (n == 1) {
                CHECK(current == 0.0);
            } else {
                CHECK(current > previous);
            }
            previous = current;
        }
    }
}

TEST_CASE("log_multiset_count tracks the exact value") {
    for (std::uint64_t n : {1u, 2u, 5u, 17u, 60u, 200u}) {
        for (std::uint64_t p : {0u, 1u, 3u, 50u, 199u, 400u}) {
            double expected = oracle::log_of(oracle::Rational(oracle::binomial(n + p - 1, n - 1)));
            CHECK(log_multiset_count(n, p) == doctest::Approx(expected).epsilon(1e-13));
        }
    }
}

TEST_CASE("log_multiset_count at n = p = 10^4") {
    using oracle::Float50;
    Float50 expected = boost::math::lgamma(Float50(19999) + 1) - boost::math::lgamma(Float50(9999) + 1) -
                       boost::math::lgamma(Float50(10000) + 1);
    CHECK(log_multiset_count(10000, 10000) == doctest::Approx(static_cast<double>(expected)).epsilon(1e-13));
    CHECK(multiset_count(10000, 10000).log_value ==
          doctest::Approx(log_of(multiset_count_exact(10000, 10000))).epsilon(1e-13));
}

TEST_CASE("binomial and log_binomial") {
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(200, 100) == oracle::binomial(200, 100));
    CHECK(log_binomial(5, 0) == 0.0);
    CHECK(log_binomial(4, 2) == doctest::Approx(std::log(6.0)).epsilon(1e-15));
    double big = oracle::log_of(oracle::Rational(oracle::binomial(200, 100)));
    CHECK(std::abs(log_binomial(200, 100) - big) <= 1e-12 * big);
    CHECK_THROWS_AS(log_binomial(3, 4), DomainError);
    for (std::uint64_t a = 0; a <= 150; a += 7) {
        auto row = oracle::pascal_row(a);
        for (std::uint64_t b = 0; b <= a; b++) {
            double expected = oracle::log_of(oracle::Rational(row[b]));
            CHECK(std::abs(log_binomial(a, b) - expected) <= 1e-12 * std::max(1.0, expected));
        }
    }
}

TEST_CASE("log_gamma") {
    CHECK(std::abs(log_gamma(1.0)) <= 1e-14);
    CHECK(std::abs(log_gamma(2.0)) <= 1e-14);
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
    for (double x : {0.01, 0.3, 1.7, 3.5, 9.99, 14.9, 15.0, 15.1, 42.0, 1e3, 1e6, 1e9}) {
        double expected = static_cast<double>(boost::math::lgamma(oracle::Float50(x)));
        CHECK(std::abs(log_gamma(x) - expected) <= 1e-13 * std::max(1.0, std::abs(expected)));
    }
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-1.0), DomainError);
    CHECK_THROWS_AS(log_gamma(std::nan("")), DomainError);
}

TEST_CASE("log_factorial and log_of") {
    oracle::Float50 acc = 0;
    for (std::uint64_t a = 0; a <= 300; a++) {
        if (a > 0) {
            acc += boost::multiprecision::log(oracle::Float50(a));
        }
        double expected = static_cast<double>(acc);
        CHECK(std::abs(log_factorial(a) - expected) <= 1e-13 * std::max(1.0, expected));
    }
    BigInt two_pow = 1;
    two_pow <<= 1000;
    CHECK(log_of(two_pow) == doctest::Approx(1000 * std::log(2.0)).epsilon(1e-15));
    CHECK(std::isinf(log_of(BigInt(0))));
}
