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

#ifndef DEFINETTI_FORMAT_H
#define DEFINETTI_FORMAT_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "definetti/rational.h"

namespace definetti {

/// Shortest round-trip decimal form, independent of the C locale.
std::string format_double(double value);

/// Parses "a/b", an integer, or a plain decimal such as "0.125" or "1e-3"
/// into an exact rational. Throws std::invalid_argument on bad input.
Rational parse_rational(std::string_view text);

/// Inclusive integer range written "A..B" or "A".
struct Range {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;

    static Range parse(std::string_view text);
    std::vector<std::uint64_t> values() const;
    bool contains(std::uint64_t v) const {
        return lo <= v && v <= hi;
    }
};

}  // namespace definetti

#endif
