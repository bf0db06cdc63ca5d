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

#ifndef DEFINETTI_SECTOR_BASIS_H
#define DEFINETTI_SECTOR_BASIS_H

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace definetti {

/// Occupation numbers (m_1, ..., m_n) of a Fock basis state.
using Composition = std::vector<std::uint32_t>;

inline constexpr std::size_t kDefaultMaxPermanentDim = 20;
inline constexpr std::size_t kDefaultMaxSectorSize = 20000;

struct ResourceLimits {
    /// Largest permanent (= photon number) evaluated by the sector lift.
    std::size_t max_permanent_dim = kDefaultMaxPermanentDim;
    /// Largest sector dimension a_p^n that may be materialised.
    std::size_t max_sector_size = kDefaultMaxSectorSize;
};

/// All weak compositions of p photons into n modes, in descending
/// lexicographic order: (p,0,...,0) first, (0,...,0,p) last.
class SectorBasis {
   public:
    /// Throws DomainError for n == 0 and ResourceError when a_p^n exceeds
    /// limits.max_sector_size.
    SectorBasis(std::uint32_t n, std::uint32_t p, const ResourceLimits &limits = {});

    std::uint32_t modes() const {
        return n_;
    }
    std::uint32_t photons() const {
        return p_;
    }
    std::size_t size() const {
        return states_.size();
    }
    const std::vector<Composition> &states() const {
        return states_;
    }
    const Composition &state(std::size_t index) const {
        return states_[index];
    }
    std::optional<std::size_t> find(const Composition &composition) const;
    /// Throws DomainError when the composition is not in this sector.
    std::size_t index_of(const Composition &composition) const;

    bool operator==(const SectorBasis &other) const {
        return n_ == other.n_ && p_ == other.p_;
    }

   private:
    std::uint32_t n_;
    std::uint32_t p_;
    std::vector<Composition> states_;
    std::map<Composition, std::size_t> index_;
};

/// Descending-lexicographic enumeration of weak compositions.
std::vector<Composition> weak_compositions(std::uint32_t n, std::uint32_t p);

}  // namespace definetti

#endif
