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

#ifndef DEFINETTI_RATIONAL_H
#define DEFINETTI_RATIONAL_H

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace definetti {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(std::int64_t num, std::int64_t den) {
    Rational r(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
    r.canonicalize();
    return r;
}

/// "num/den" (or "num" when the denominator is 1), base 10.
inline std::string to_string(const Rational &r) {
    return r.get_str(10);
}

/// Nearest double to r, ties to even.
double to_double(const Rational &r);

/// Largest double not above r.
double lower_double(const Rational &r);
/// Smallest double not below r.
double upper_double(const Rational &r);

/// Exact rational value of a finite double.
inline Rational from_double(double x) {
    return Rational(x);
}

inline Rational abs(const Rational &r) {
    return r < 0 ? Rational(-r) : r;
}

}  // namespace definetti

#endif
