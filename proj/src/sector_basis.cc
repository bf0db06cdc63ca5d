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

#include "definetti/sector_basis.h"

#include <string>

#include "definetti/combinatorics.h"
#include "definetti/errors.h"

namespace definetti {

namespace {

void fill(std::uint32_t mode, std::uint32_t remaining, Composition &current, std::vector<Composition> &out) {
    if (mode + 1 == current.size()) {
        current[mode] = remaining;
        out.push_back(current);
        return;
    }
    for (std::uint32_t m = remaining + 1; m-- > 0;) {
        current[mode] = m;
        fill(mode + 1, remaining - m, current, out);
    }
}

}  // namespace

std::vector<Composition> weak_compositions(std::uint32_t n, std::uint32_t p) {
    if (n == 0) {
        throw DomainError("weak_compositions: n must be at least 1");
    }
    std::vector<Composition> out;
    Composition current(n, 0);
    fill(0, p, current, out);
    return out;
}

SectorBasis::SectorBasis(std::uint32_t n, std::uint32_t p, const ResourceLimits &limits) : n_(n), p_(p) {
    if (n == 0) {
        throw DomainError("SectorBasis: n must be at least 1");
    }
    BigInt size = multiset_count_exact(n, p);
    if (size > BigInt(static_cast<unsigned long>(limits.max_sector_size))) {
        throw ResourceError("sector (n=" + std::to_string(n) + ", p=" + std::to_string(p) + ") has dimension " +
                            size.get_str() + ", above the limit " + std::to_string(limits.max_sector_size));
    }
    states_ = weak_compositions(n, p);
    for (std::size_t i = 0; i < states_.size(); i++) {
        index_.emplace(states_[i], i);
    }
}

std::optional<std::size_t> SectorBasis::find(const Composition &composition) const {
    auto it = index_.find(composition);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t SectorBasis::index_of(const Composition &composition) const {
    auto found = find(composition);
    if (!found) {
        throw DomainError("composition does not belong to the (n=" + std::to_string(n_) + ", p=" + std::to_string(p_) +
                          ") sector");
    }
    return *found;
}

}  // namespace definetti
