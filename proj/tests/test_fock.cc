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

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <set>

#include "definetti/combinatorics.h"
#include "definetti/distributions.h"
#include "definetti/errors.h"
#include "definetti/interferometer.h"
#include "definetti/permanent.h"
#include "definetti/sector_basis.h"
#include "definetti/sector_state.h"
#include "oracles.h"

using namespace definetti;
using cd = std::complex<double>;

namespace {

Eigen::MatrixXcd random_matrix(Eigen::Index d, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    Eigen::MatrixXcd m(d, d);
    for (Eigen::Index i = 0; i < d; i++) {
        for (Eigen::Index j = 0; j < d; j++) {
            m(i, j) = cd(normal(rng), normal(rng));
        }
    }
    return m;
}

Eigen::MatrixXcd random_hermitian(Eigen::Index d, std::mt19937_64 &rng) {
    Eigen::MatrixXcd m = random_matrix(d, rng);
    return 0.5 * (m + m.adjoint());
}

double max_abs(const Eigen::MatrixXcd &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Principal logarithm of a unitary from its spectral decomposition.
Eigen::MatrixXcd unitary_log(const Eigen::MatrixXcd &u) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(u);
    Eigen::VectorXcd logs = eig.eigenvalues().unaryExpr([](cd z) { return cd(0.0, std::arg(z)); });
    return eig.eigenvectors() * logs.asDiagonal() * eig.eigenvectors().inverse();
}

}  // namespace

// ---- sector basis --------------------------------------------------------

TEST_CASE("SectorBasis enumerates weak compositions in descending order") {
    SectorBasis two(2, 1);
    REQUIRE(two.size() == 2);
    CHECK(two.state(0) == Composition{1, 0});
    CHECK(two.state(1) == Composition{0, 1});

    for (std::uint32_t n = 1; n <= 6; n++) {
        for (std::uint32_t p = 0; p <= 6; p++) {
            SectorBasis basis(n, p);
            CHECK(BigInt(basis.size()) == multiset_count_exact(n, p));
            auto expected = oracle::compositions(n, p);
            std::set<Composition> want(expected.begin(), expected.end());
            std::set<Composition> got(basis.states().begin(), basis.states().end());
            CHECK(want == got);
            CHECK(std::is_sorted(basis.states().rbegin(), basis.states().rend()));
            Composition first(n, 0);
            first[0] = p;
            CHECK(basis.state(0) == first);
            for (std::size_t i = 0; i < basis.size(); i++) {
                CHECK(basis.index_of(basis.state(i)) == i);
            }
            CHECK(weak_compositions(n, p) == basis.states());
        }
    }
    SectorBasis basis(3, 2);
    CHECK(!basis.find(Composition{1, 1, 1}));
    CHECK(!basis.find(Composition{2, 0}));
    CHECK_THROWS_AS(basis.index_of(Composition{3, 0, 0}), DomainError);
    CHECK_THROWS_AS(SectorBasis(0, 1), DomainError);
    ResourceLimits tight;
    tight.max_sector_size = 5;
    CHECK_THROWS_AS(SectorBasis(3, 2, tight), ResourceError);
    CHECK(SectorBasis(3, 1, tight).size() == 3);
}

// ---- permanent -----------------------------------------------------------

TEST_CASE("permanent examples") {
    CHECK(std::abs(permanent(Eigen::MatrixXcd::Identity(3, 3)) - 1.0) < 1e-15);
    CHECK(std::abs(permanent(Eigen::MatrixXcd::Ones(3, 3)) - 6.0) < 1e-14);
    CHECK(permanent(Eigen::MatrixXcd(0, 0)) == cd(1.0));
    Eigen::MatrixXcd one(1, 1);
    one(0, 0) = cd(2.0, -3.0);
    CHECK(permanent(one) == cd(2.0, -3.0));
    CHECK_THROWS_AS(permanent(Eigen::MatrixXcd::Ones(2, 3)), DomainError);
    CHECK_THROWS_AS(permanent(Eigen::MatrixXcd::Ones(4, 4), 3), ResourceError);
}

TEST_CASE("permanent matches the permutation expansion") {
    std::mt19937_64 rng(2024);
    for (Eigen::Index d = 1; d <= 8; d++) {
        for (int rep = 0; rep < 5; rep++) {
            Eigen::MatrixXcd m = random_matrix(d, rng);
            cd expected = oracle::permanent(m);
            CHECK(std::abs(permanent(m) - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
        }
    }
    Eigen::MatrixXcd five = random_matrix(5, rng);
    CHECK(std::abs(permanent(five) - oracle::permanent(five)) < 1e-10);
}

// ---- interferometer ------------------------------------------------------

TEST_CASE("optical elements and their composition") {
    BeamSplitter bs{0, 1, std::numbers::pi / 4, 0.3};
    Eigen::MatrixXcd m = element_matrix(2, bs);
    cd e = std::polar(1.0, 0.3);
    double c = std::cos(std::numbers::pi / 4);
    CHECK(std::abs(m(0, 0) - e * c) < 1e-15);
    CHECK(std::abs(m(0, 1) + c) < 1e-15);
    CHECK(std::abs(m(1, 0) - e * c) < 1e-15);
    CHECK(std::abs(m(1, 1) - c) < 1e-15);
    CHECK(unitarity_defect(m) < 1e-15);

    Eigen::MatrixXcd ps = element_matrix(3, PhaseShift{2, 1.1});
    CHECK(std::abs(ps(2, 2) - std::polar(1.0, 1.1)) < 1e-15);
    CHECK(std::abs(ps(0, 0) - 1.0) < 1e-15);

    std::vector<OpticalElement> seq{BeamSplitter{0, 1, 0.4, 0.2}, PhaseShift{1, 0.7}};
    Eigen::MatrixXcd expected = element_matrix(2, seq[1]) * element_matrix(2, seq[0]);
    CHECK(max_abs(compose(2, seq) - expected) < 1e-15);
    CHECK_THROWS_AS(element_matrix(2, BeamSplitter{0, 2, 0.1, 0.0}), DomainError);
    CHECK_THROWS_AS(element_matrix(2, BeamSplitter{1, 1, 0.1, 0.0}), DomainError);
    CHECK_THROWS_AS(element_matrix(2, PhaseShift{2, 0.1}), DomainError);
}

TEST_CASE("decompose reproduces Haar unitaries") {
    for (std::uint32_t n = 1; n <= 6; n++) {
        for (std::uint64_t seed = 0; seed < 10; seed++) {
            auto spec = haar_random_unitary(n, seed);
            auto elements = decompose(spec.unitary);
            CHECK(max_abs(compose(n, elements) - spec.unitary) < 1e-10);
            auto rebuilt = InterferometerSpec::from_elements(n, elements);
            CHECK(rebuilt.factorization_defect() < 1e-10);
            CHECK(max_abs(rebuilt.unitary - spec.unitary) < 1e-10);
        }
    }
}

TEST_CASE("InterferometerSpec validation") {
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
    bad(0, 1) = 0.5;
    CHECK_THROWS_AS(InterferometerSpec::from_unitary(bad), DomainError);
    CHECK_THROWS_AS(InterferometerSpec::from_unitary(Eigen::MatrixXcd::Identity(2, 3)), DomainError);
    auto ok = InterferometerSpec::from_unitary(balanced_beamsplitter());
    CHECK(ok.unitarity_defect() < 1e-15);
    CHECK(ok.factorization_defect() == 0.0);
}

TEST_CASE("haar_random_unitary") {
    auto one = haar_random_unitary(1, 5);
    CHECK(std::abs(std::abs(one.unitary(0, 0)) - 1.0) < 1e-15);
    for (std::uint32_t n = 1; n <= 8; n++) {
        for (std::uint64_t seed = 0; seed < 20; seed++) {
            CHECK(haar_random_unitary(n, seed).unitarity_defect() < 1e-12);
        }
    }
    CHECK(haar_random_unitary(4, 99).unitary == haar_random_unitary(4, 99).unitary);
    CHECK(haar_random_unitary(4, 99).unitary != haar_random_unitary(4, 100).unitary);

    // E|U_11|^2 = 1/n; Var = (n-1)/(n^2 (n+1)).
    const int samples = 10000;
    std::mt19937_64 rng(7);
    for (std::uint32_t n : {1u, 2u, 3u, 5u}) {
        double sum = 0.0;
        double phase_sum_re = 0.0;
        for (int i = 0; i < samples; i++) {
            auto u = haar_random_unitary(n, rng).unitary;
            sum += std::norm(u(0, 0));
            phase_sum_re += std::cos(std::arg(u(0, 0)));
        }
        double mean = sum / samples;
        double nd = n;
        double se = std::sqrt((nd - 1) / (nd * nd * (nd + 1)) / samples);
        CHECK(std::abs(mean - 1.0 / nd) <= 3 * se + 1e-12);
        // Phases are uniform: E cos(arg) = 0 with variance 1/2.
        CHECK(std::abs(phase_sum_re / samples) <= 3 * std::sqrt(0.5 / samples));
    }
}

// ---- sector lift ---------------------------------------------------------

TEST_CASE("lift examples") {
    auto spec = haar_random_unitary(3, 11);
    Eigen::MatrixXcd vacuum = lift_interferometer(spec, 0);
    REQUIRE(vacuum.rows() == 1);
    CHECK(std::abs(vacuum(0, 0) - 1.0) < 1e-15);

    double phi = 0.83;
    auto shifter = InterferometerSpec::from_elements(2, {PhaseShift{0, phi}});
    Eigen::MatrixXcd single = lift_interferometer(shifter, 1);
    CHECK(std::abs(single(0, 0) - std::polar(1.0, phi)) < 1e-15);
    CHECK(std::abs(single(1, 1) - 1.0) < 1e-15);
    CHECK(std::abs(single(0, 1)) < 1e-15);
    CHECK(std::abs(single(1, 0)) < 1e-15);

    auto bs = InterferometerSpec::from_unitary(balanced_beamsplitter());
    SectorBasis basis(2, 2);
    Eigen::MatrixXcd hom = lift_interferometer(bs, 2);
    auto i11 = basis.index_of({1, 1});
    auto i20 = basis.index_of({2, 0});
    auto i02 = basis.index_of({0, 2});
    CHECK(std::abs(hom(i11, i11)) < 1e-15);
    CHECK(std::abs(std::abs(hom(i20, i11)) - std::sqrt(0.5)) < 1e-15);
    CHECK(std::abs(std::abs(hom(i02, i11)) - std::sqrt(0.5)) < 1e-15);
    Eigen::MatrixXcd generator_route = lift_by_exponential(unitary_log(balanced_beamsplitter()), basis);
    CHECK(max_abs(generator_route - hom) < 1e-8);
}

TEST_CASE("permanent lift equals exponentiated hopping generator") {
    std::mt19937_64 rng(3);
    for (std::uint32_t n : {2u, 3u}) {
        for (std::uint32_t p = 0; p <= 5; p++) {
            SectorBasis basis(n, p);
            for (int rep = 0; rep < 4; rep++) {
                std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
                std::uniform_int_distribution<std::uint32_t> pick(0, n - 2);
                std::uint32_t a = pick(rng);
                BeamSplitter bs{a, a + 1, angle(rng), angle(rng)};
                Eigen::MatrixXcd u = element_matrix(n, bs);
                Eigen::MatrixXcd via_perm = lift_unitary(u, basis);
                Eigen::MatrixXcd via_exp = lift_by_exponential(unitary_log(u), basis);
                CHECK(max_abs(via_perm - via_exp) < 1e-8);
            }
            // Random anti-Hermitian generator on all modes.
            Eigen::MatrixXcd h = random_hermitian(n, rng);
            Eigen::MatrixXcd generator = cd(0.0, 1.0) * h;
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(h);
            Eigen::VectorXcd phases = eig.eigenvalues().unaryExpr([](cd z) { return std::polar(1.0, z.real()); });
            Eigen::MatrixXcd u = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
            CHECK(max_abs(lift_unitary(u, basis) - lift_by_exponential(generator, basis)) < 1e-8);
        }
    }
}

TEST_CASE("lifted generator is the one-body operator") {
    // a_0^dagger a_1 on (2, 2): |1,1> -> sqrt(2)|2,0>, |0,2> -> sqrt(2)|1,1>.
    Eigen::MatrixXcd hop = Eigen::MatrixXcd::Zero(2, 2);
    hop(0, 1) = 1.0;
    SectorBasis basis(2, 2);
    Eigen::MatrixXcd lifted = lift_generator(hop, basis);
    auto i20 = basis.index_of({2, 0});
    auto i11 = basis.index_of({1, 1});
    auto i02 = basis.index_of({0, 2});
    CHECK(std::abs(lifted(i20, i11) - std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(lifted(i11, i02) - std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(lifted(i11, i20)) < 1e-15);
    Eigen::MatrixXcd number = Eigen::MatrixXcd::Identity(2, 2);
    CHECK(max_abs(lift_generator(number, basis) - 2.0 * Eigen::MatrixXcd::Identity(3, 3)) < 1e-15);
}

TEST_CASE("lift is unitary and a homomorphism") {
    for (std::uint32_t n = 1; n <= 4; n++) {
        for (std::uint32_t p = 0; p <= 5; p++) {
            SectorBasis basis(n, p);
            for (std::uint64_t seed = 0; seed < 3; seed++) {
                auto u = haar_random_unitary(n, 100 + seed).unitary;
                auto v = haar_random_unitary(n, 200 + seed).unitary;
                Eigen::MatrixXcd lu = lift_unitary(u, basis);
                Eigen::MatrixXcd lv = lift_unitary(v, basis);
                CHECK(unitarity_defect(lu) < 1e-9);
                CHECK(max_abs(lift_unitary(u * v, basis) - lu * lv) < 1e-8);
                CHECK(max_abs(lift_unitary(u.adjoint(), basis) - lu.adjoint()) < 1e-9);
            }
        }
    }
    ResourceLimits tight;
    tight.max_permanent_dim = 3;
    CHECK_THROWS_AS(lift_interferometer(haar_random_unitary(2, 1), 4, tight), ResourceError);
    tight = ResourceLimits{};
    tight.max_sector_size = 10;
    CHECK_THROWS_AS(lift_interferometer(haar_random_unitary(3, 1), 4, tight), ResourceError);
    CHECK_THROWS_AS(lift_unitary(Eigen::MatrixXcd::Identity(2, 2), SectorBasis(3, 1)), DomainError);
}

// ---- sector states -------------------------------------------------------

TEST_CASE("sigma_state examples") {
    auto number = sigma_state(1, 3);
    REQUIRE(number.dimension() == 1);
    CHECK(number.basis.state(0) == Composition{3});
    REQUIRE(number.exact_diagonal);
    CHECK((*number.exact_diagonal)[0] == 1);

    auto two = sigma_state(2, 1);
    CHECK(two.basis.state(0) == Composition{1, 0});
    CHECK((*two.exact_diagonal) == std::vector<Rational>{make_rational(1, 2), make_rational(1, 2)});

    auto six = sigma_state(3, 2);
    CHECK(six.dimension() == 6);
    for (const auto &v : *six.exact_diagonal) {
        CHECK(v == make_rational(1, 6));
    }
    CHECK(six.trace() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("apply") {
    auto sigma = sigma_state(3, 2);
    Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(6, 6);
    CHECK(trace_distance(definetti::apply(identity, sigma), sigma) < 1e-15);
    CHECK_THROWS_AS(definetti::apply(Eigen::MatrixXcd::Identity(5, 5), sigma), DomainError);

    std::mt19937_64 rng(1);
    auto pure = SectorState::from_pure(sigma.basis, random_pure_amplitudes(sigma.basis, rng));
    auto moved = definetti::apply(lift_unitary(haar_random_unitary(3, 4).unitary, sigma.basis), pure);
    CHECK(moved.hermiticity_defect() == 0.0);
    CHECK(moved.trace() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(moved.min_eigenvalue() > -1e-12);
}

TEST_CASE("random_pure_amplitudes are unit vectors") {
    std::mt19937_64 rng(9);
    SectorBasis basis(3, 3);
    for (int i = 0; i < 20; i++) {
        CHECK(random_pure_amplitudes(basis, rng).norm() == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("partial_trace examples") {
    auto reduced = partial_trace(sigma_state(4, 2), 2);
    REQUIRE(reduced.blocks.size() == 3);
    std::vector<Rational> expected{make_rational(3, 10), make_rational(4, 10), make_rational(3, 10)};
    for (std::size_t l = 0; l < 3; l++) {
        const auto &block = reduced.blocks[l];
        CHECK(block.photons == l);
        REQUIRE(block.exact_weight);
        CHECK(*block.exact_weight == expected[l]);
        REQUIRE(block.state.exact_diagonal);
        for (const auto &v : *block.state.exact_diagonal) {
            CHECK(v == make_rational(1, static_cast<long>(l + 1)));
        }
    }
    CHECK(reduced.tail_mass == 0.0);
    CHECK(reduced_number_distribution(4, 2, 2).exact_weights == expected);

    auto vacuum = partial_trace(sigma_state(5, 0), 3);
    REQUIRE(vacuum.blocks.size() == 1);
    CHECK(vacuum.blocks[0].photons == 0);
    CHECK(*vacuum.blocks[0].exact_weight == 1);

    for (std::uint32_t p = 0; p <= 6; p++) {
        auto line = partial_trace(sigma_state(2, p), 1);
        REQUIRE(line.blocks.size() == p + 1);
        for (const auto &block : line.blocks) {
            CHECK(*block.exact_weight == make_rational(1, p + 1));
        }
    }
    CHECK_THROWS_AS(partial_trace(sigma_state(3, 2), 3), DomainError);
    CHECK_THROWS_AS(partial_trace(sigma_state(3, 2), 0), DomainError);
}

TEST_CASE("dense partial trace matches the direct sum") {
    std::mt19937_64 rng(17);
    for (auto [n, p] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 3}, {4, 2}, {3, 1}, {4, 3}}) {
        SectorBasis basis(n, p);
        Eigen::VectorXcd psi = random_pure_amplitudes(basis, rng);
        auto state = SectorState::from_pure(basis, psi);
        Eigen::MatrixXcd rho = psi * psi.adjoint();
        for (std::uint32_t k = 1; k < n; k++) {
            auto reduced = partial_trace(state, k);
            auto expected = oracle::partial_trace(basis.states(), rho, k);
            CHECK(reduced.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
            std::size_t seen = 0;
            for (const auto &block : reduced.blocks) {
                Eigen::MatrixXcd m = block.weight * block.state.dense();
                for (std::size_t i = 0; i < block.state.basis.size(); i++) {
                    for (std::size_t j = 0; j < block.state.basis.size(); j++) {
                        auto it = expected.find({block.state.basis.state(i), block.state.basis.state(j)});
                        cd want = it == expected.end() ? cd(0.0) : it->second;
                        CHECK(std::abs(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - want) <
                              1e-12);
                        seen += it != expected.end();
                    }
                }
            }
            CHECK(seen == expected.size());
        }
    }
}

TEST_CASE("partial trace of a mixture merges blocks") {
    std::vector<std::pair<double, SectorState>> mixture{{0.25, sigma_state(3, 1)}, {0.75, sigma_state(3, 2)}};
    auto reduced = partial_trace(mixture, 1);
    REQUIRE(reduced.blocks.size() == 3);
    // l=0: 0.25*2/3 + 0.75*3/6; l=1: 0.25*1/3 + 0.75*2/6; l=2: 0.75*1/6
    CHECK(reduced.blocks[0].weight == doctest::Approx(0.25 * 2 / 3 + 0.75 * 0.5).epsilon(1e-14));
    CHECK(reduced.blocks[1].weight == doctest::Approx(0.25 / 3 + 0.75 / 3).epsilon(1e-14));
    CHECK(reduced.blocks[2].weight == doctest::Approx(0.75 / 6).epsilon(1e-14));
}

TEST_CASE("thermal_state is the product of geometric modes") {
    double x = 0.5;
    auto th = thermal_state(2, x, 4);
    REQUIRE(th.blocks.size() == 5);
    auto g = oracle::g_by_convolution(2, make_rational(1, 2), 4);
    double mass = 0.0;
    for (std::size_t l = 0; l <= 4; l++) {
        CHECK(th.blocks[l].weight == doctest::Approx(to_double(g[l])).epsilon(1e-14));
        Eigen::MatrixXcd m = th.blocks[l].state.dense();
        for (Eigen::Index i = 0; i < m.rows(); i++) {
            CHECK(std::abs(m(i, i) - 1.0 / static_cast<double>(l + 1)) < 1e-14);
        }
        mass += th.blocks[l].weight;
    }
    CHECK(th.tail_mass == doctest::Approx(1.0 - mass).epsilon(1e-14));
    auto cold = thermal_state(3, 0.0, 3);
    CHECK(cold.blocks[0].weight == 1.0);
    CHECK(cold.tail_mass == 0.0);
}

TEST_CASE("trace distance") {
    auto sigma = sigma_state(3, 2);
    CHECK(trace_distance(sigma, sigma) == 0.0);
    SectorBasis basis(3, 2);
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(6);
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(6);
    a(0) = 1.0;
    b(3) = cd(0.0, 1.0);
    CHECK(trace_distance(SectorState::from_pure(basis, a), SectorState::from_pure(basis, b)) ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(trace_distance(sigma, sigma_state(3, 1)), DomainError);

    // Reduced sigma_2^4 against the truncated thermal state at x = 1/2.
    auto reduced = partial_trace(sigma_state(4, 2), 2);
    auto thermal = thermal_state(2, 0.5, 2);
    double d = trace_distance(reduced, thermal);
    auto f = reduced_number_distribution(4, 2, 2, Arithmetic::kFloat);
    auto g = thermal_number_distribution(ThermalParams::with_float(2, 0.5), 1e-12, 3, Arithmetic::kFloat);
    auto interval = l1_distance(f, g);
    CHECK(interval.contains(d));
    CHECK(interval.width() <= 2e-12);
    CHECK(d == doctest::Approx(46.0 / 90.0).epsilon(1e-14));
}
