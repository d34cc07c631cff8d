// Copyright 2026 The eqsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>

#include "eqs/hilbert.hpp"
#include "oracles.hpp"

using eqs::Axis;
using eqs::PauliString;
using eqs::PauliSum;
using eqs::StateVector;

namespace {

constexpr double kPi = 3.14159265358979323846;

StateVector random_state(std::mt19937_64& rng, int n) {
    return StateVector(n, oracle::random_state_vector(rng, n));
}

StateVector ghz3() {
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(8);
    amp(0) = amp(7) = 1.0 / std::sqrt(2.0);
    return StateVector(3, amp);
}

}  // namespace

TEST_CASE("capacity guards trigger before any work") {
    CHECK_THROWS_AS(StateVector(eqs::kMaxStateQubits + 1), eqs::CapacityError);
    CHECK_THROWS_AS(eqs::DensityMatrix(eqs::kMaxDensityQubits + 1), eqs::CapacityError);
    CHECK_THROWS_AS(StateVector(0), eqs::DimensionError);
}

TEST_CASE("norm is validated on construction") {
    Eigen::VectorXcd bad(2);
    bad << 1.0, 1.0;
    CHECK_THROWS_AS(StateVector(1, bad), eqs::ContractError);
}

TEST_CASE("pauli exponential basics") {
    StateVector psi(1);
    eqs::apply_pauli_exponential(psi, PauliString::parse("X"), 0.0);
    CHECK(psi.amplitudes()(0) == eqs::complex(1, 0));

    // exp(-i (pi/2) X) |0> = -i |1>
    eqs::apply_pauli_exponential(psi, PauliString::parse("X"), kPi / 2.0);
    CHECK(std::abs(psi.amplitudes()(0)) < 1e-15);
    CHECK(std::abs(psi.amplitudes()(1) - eqs::complex(0, -1)) < 1e-15);
}

TEST_CASE("three-qubit YYY exponential creates the real GHZ superposition") {
    StateVector psi(3);
    eqs::apply_pauli_exponential(psi, PauliString::parse("Y_Y_Y"), kPi / 4.0);
    Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(8);
    expected(0) = 1.0 / std::sqrt(2.0);
    expected(7) = -1.0 / std::sqrt(2.0);
    CHECK((psi.amplitudes() - expected).norm() < 1e-14);
}

TEST_CASE("pauli exponential matches the dense exponential oracle") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const PauliString p = oracle::random_string(rng, n);
        const double a = angle(rng);
        StateVector psi = random_state(rng, n);
        const Eigen::VectorXcd expected =
            oracle::expm_minus_i_ht(oracle::dense_string(p), a) * psi.amplitudes();
        eqs::apply_pauli_exponential(psi, p, a);
        CHECK((psi.amplitudes() - expected).norm() < 1e-12);
    }
}

TEST_CASE("exponentials preserve norm and compose in the angle") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    StateVector psi = random_state(rng, 4);
    for (int k = 0; k < 10000; ++k) {
        eqs::apply_pauli_exponential(psi, oracle::random_string(rng, 4), angle(rng));
    }
    CHECK(std::abs(psi.amplitudes().norm() - 1.0) <= 1e-12);

    for (int trial = 0; trial < 50; ++trial) {
        const PauliString p = oracle::random_string(rng, 3);
        const double a1 = angle(rng), a2 = angle(rng);
        StateVector one = random_state(rng, 3);
        StateVector two = one;
        eqs::apply_pauli_exponential(one, p, a1);
        eqs::apply_pauli_exponential(one, p, a2);
        eqs::apply_pauli_exponential(two, p, a1 + a2);
        CHECK((one.amplitudes() - two.amplitudes()).norm() <= 1e-12);
    }
}

TEST_CASE("exact evolution: trivial and analytic cases") {
    std::mt19937_64 rng(23);
    StateVector psi = random_state(rng, 2);
    PauliSum h = oracle::random_hermitian_sum(rng, 2, 3);
    const StateVector frozen = eqs::evolve_exact(psi, h, 0.0);
    CHECK((frozen.amplitudes() - psi.amplitudes()).norm() < 1e-12);

    // h = w Z on |+>: relative phase e^{-2 i w t} between |0> and |1>.
    PauliSum hz(1);
    const double w = 0.8;
    hz.add(w, PauliString::parse("Z"));
    Eigen::VectorXcd plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const double t = kPi / (2.0 * w);
    const StateVector evolved = eqs::evolve_exact(StateVector(1, plus), hz, t);
    Eigen::VectorXcd expected(2);
    expected << std::exp(eqs::complex(0, -kPi / 2.0)) / std::sqrt(2.0),
        std::exp(eqs::complex(0, kPi / 2.0)) / std::sqrt(2.0);
    CHECK((evolved.amplitudes() - expected).norm() < 1e-12);
}

TEST_CASE("exact evolution agrees with a deep product formula") {
    // The enlarged GHZ-class Hamiltonian with w = 1, g = 2.
    PauliSum ht(4);
    ht.add(1.0, PauliString::parse("I_Y_I_I"));
    ht.add(1.0, PauliString::parse("I_I_Y_I"));
    ht.add(1.0, PauliString::parse("I_I_I_Y"));
    ht.add(-2.0, PauliString::parse("Y_X_X_X"));
    const int steps = 10000;
    const eqs::SpectralPropagator propagator(ht);
    // First-order product error grows ~t^2/steps; both bounds below are
    // pinned from measured values with ~1.5x headroom.
    const struct {
        double t;
        double bound;
    } cases[] = {{0.05, 1e-6}, {0.9, 1e-4}};
    for (const auto& c : cases) {
        StateVector product(4);
        for (int s = 0; s < steps; ++s) {
            for (const auto& term : ht.terms()) {
                eqs::apply_pauli_exponential(product, PauliString(term.axes),
                                             term.coeff.real() * c.t / steps);
            }
        }
        const StateVector exact = propagator.apply(StateVector(4), c.t);
        CHECK((product.amplitudes() - exact.amplitudes()).norm() <= c.bound);
    }
}

TEST_CASE("exact evolution rejects non-Hermitian Hamiltonians") {
    PauliSum h(1);
    h.add(eqs::complex(0, 1), PauliString::parse("X"));
    CHECK_THROWS_AS(eqs::evolve_exact(StateVector(1), h, 1.0), eqs::ContractError);
}

TEST_CASE("pauli exponential equals exact evolution of the same generator") {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const PauliString p = oracle::random_string(rng, n);
        const double c = coeff(rng);
        PauliSum h(n);
        h.add(c, p);
        StateVector a = random_state(rng, n);
        StateVector b = eqs::evolve_exact(a, h, 1.0);
        eqs::apply_pauli_exponential(a, p, c);
        CHECK((a.amplitudes() - b.amplitudes()).norm() <= 1e-10);
    }
}

TEST_CASE("expectations") {
    PauliSum z(1);
    z.add(1.0, PauliString::parse("Z"));
    CHECK(eqs::expectation(StateVector(1), z) == doctest::Approx(1.0).epsilon(1e-12));

    PauliSum xxx(3);
    xxx.add(1.0, PauliString::parse("X_X_X"));
    CHECK(eqs::expectation(ghz3(), xxx) == doctest::Approx(1.0).epsilon(1e-12));

    // Maximally mixed state: every non-identity string averages to zero.
    const auto mixed = eqs::DensityMatrix::maximally_mixed(3);
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 20; ++trial) {
        CHECK(std::abs(eqs::expectation(mixed, oracle::random_string(rng, 3))) < 1e-14);
    }

    PauliSum bad(1);
    bad.add(eqs::complex(0, 1), PauliString::parse("X"));
    CHECK_THROWS_AS(eqs::expectation(StateVector(1), bad), eqs::ContractError);
}

TEST_CASE("sampling: deterministic outcomes and reproducibility") {
    const auto exact = eqs::sample_observable(StateVector(1), PauliString::parse("Z"),
                                              500, 42);
    CHECK(exact.mean == 1.0);
    CHECK(exact.stderr_of_mean == 0.0);

    CHECK_THROWS_AS(
        eqs::sample_observable(StateVector(1), PauliString::parse("Z"), 0, 1),
        eqs::ContractError);

    Eigen::VectorXcd plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const StateVector psi(1, plus);
    const auto a = eqs::sample_observable(psi, PauliString::parse("Z"), 10000, 7);
    const auto b = eqs::sample_observable(psi, PauliString::parse("Z"), 10000, 7);
    CHECK(a.mean == b.mean);  // bit-reproducible
    CHECK(std::abs(a.mean) < 0.05);

    // GHZ with a mixed-axis correlation: <YYX> = -1 exactly.
    const auto g = eqs::sample_observable(ghz3(), PauliString::parse("Y_Y_X"), 10000, 9);
    CHECK(g.mean == -1.0);
}

TEST_CASE("sampling means concentrate around the exact expectation") {
    std::mt19937_64 rng(26);
    StateVector psi = random_state(rng, 3);
    const PauliString obs = PauliString::parse("Z_X_Y");
    const double exact = eqs::expectation(psi, obs);
    const std::uint64_t shots = 2000;
    const int runs = 100;
    double total = 0.0;
    for (int r = 0; r < runs; ++r) {
        total += eqs::sample_observable(psi, obs, shots, eqs::mix_seed(99, r)).mean;
    }
    const double mean = total / runs;
    const double sigma = std::sqrt((1.0 - exact * exact) /
                                   static_cast<double>(shots * runs));
    CHECK(std::abs(mean - exact) <= 4.0 * sigma + 1e-12);
}

TEST_CASE("density matrices: construction and gate conjugation") {
    std::mt19937_64 rng(27);
    StateVector psi = random_state(rng, 3);
    auto rho = eqs::DensityMatrix::from_state(psi);
    CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-10));

    const PauliString p = oracle::random_string(rng, 3);
    const double angle = 0.37;
    eqs::apply_pauli_exponential(rho, p, angle);
    eqs::apply_pauli_exponential(psi, p, angle);
    const auto expected = eqs::DensityMatrix::from_state(psi);
    CHECK(oracle::max_abs(rho.entries() - expected.entries()) < 1e-12);

    CHECK(std::abs(rho.entries().trace().real() - 1.0) < 1e-12);
    CHECK(oracle::max_abs(rho.entries() - rho.entries().adjoint()) < 1e-12);
}

TEST_CASE("state dump uses the documented CSV layout") {
    const std::string csv = StateVector(1).dump_csv();
    CHECK(csv == "index,real,imag\n0,1,0\n1,0,0\n");
}
