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

#include "definetti/format.h"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace definetti {

namespace {

std::uint64_t parse_u64(std::string_view text) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw std::invalid_argument("not a nonnegative integer: '" + std::string(text) + "'");
    }
    return value;
}

BigInt pow10(unsigned long exponent) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, exponent);
    return r;
}

}  // namespace

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc()) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buffer, ptr);
}

Rational parse_rational(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("empty number");
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num;
        BigInt den;
        if (num.set_str(std::string(text.substr(0, slash)), 10) != 0 ||
            den.set_str(std::string(text.substr(slash + 1)), 10) != 0 || den == 0) {
            throw std::invalid_argument("bad rational: '" + std::string(text) + "'");
        }
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    // Decimal: [-]digits[.digits][e[+-]digits]
    std::string_view body = text;
    bool negative = false;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = body.substr(e + 1);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        exponent = static_cast<long>(parse_u64(exp_text));
        if (exp_negative) {
            exponent = -exponent;
        }
        body = body.substr(0, e);
    }
    std::string digits;
    bool seen_dot = false;
    bool seen_digit = false;
    for (char c : body) {
        if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot) {
                exponent--;
            }
        } else {
            throw std::invalid_argument("bad number: '" + std::string(text) + "'");
        }
    }
    if (!seen_digit) {
        throw std::invalid_argument("bad number: '" + std::string(text) + "'");
    }
    BigInt mantissa(digits, 10);
    if (negative) {
        mantissa = -mantissa;
    }
    Rational r;
    if (exponent >= 0) {
        r = Rational(mantissa * pow10(static_cast<unsigned long>(exponent)));
    } else {
        r = Rational(mantissa, pow10(static_cast<unsigned long>(-exponent)));
    }
    r.canonicalize();
    return r;
}

Range Range::parse(std::string_view text) {
    Range r;
    if (auto dots = text.find(".."); dots != std::string_view::npos) {
        r.lo = parse_u64(text.substr(0, dots));
        r.hi = parse_u64(text.substr(dots + 2));
    } else {
        r.lo = r.hi = parse_u64(text);
    }
    if (r.lo > r.hi) {
        throw std::invalid_argument("empty range: '" + std::string(text) + "'");
    }
    return r;
}

std::vector<std::uint64_t> Range::values() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = lo;; v++) {
        out.push_back(v);
        if (v == hi) {
            break;
        }
    }
    return out;
}

}  // namespace definetti
