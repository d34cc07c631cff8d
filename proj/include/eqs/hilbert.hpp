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

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "eqs/pauli.hpp"

namespace eqs {

/// Register size guards. Requests beyond these produce a CapacityError
/// instead of silent slowness.
constexpr int kMaxStateQubits = 20;
constexpr int kMaxDensityQubits = 10;

/// Identifier of the pseudo-random generator used for all sampling,
/// recorded in every output that depends on a seed.
inline constexpr const char* kRngAlgorithm = "mt19937_64";
using Rng = std::mt19937_64;

/// Dense pure state on up to kMaxStateQubits qubits. Basis index bit
/// layout is big-endian in the qubit index: qubit 0 is the most
/// significant bit, matching the leftmost-tensor-factor convention.
class StateVector {
  public:
    /// |0...0> on the given register.
    explicit StateVector(int qubit_count);
    StateVector(int qubit_count, Eigen::VectorXcd amplitudes);

    /// Computational basis state |bits>, e.g. basis(3, 0b000).
    static StateVector basis(int qubit_count, std::uint64_t index);

    int qubit_count() const { return qubit_count_; }
    Eigen::Index dimension() const { return amplitudes_.size(); }
    const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
    Eigen::VectorXcd& amplitudes() { return amplitudes_; }

    /// Throws ContractError if the norm has drifted beyond 1e-10 from 1.
    void check_norm() const;

    /// State dump for debugging: CSV rows `index,real,imag`.
    std::string dump_csv() const;

  private:
    int qubit_count_;
    Eigen::VectorXcd amplitudes_;
};

/// Dense density operator on up to kMaxDensityQubits qubits.
class DensityMatrix {
  public:
    explicit DensityMatrix(int qubit_count);  // |0...0><0...0|
    DensityMatrix(int qubit_count, Eigen::MatrixXcd entries);

    static DensityMatrix from_state(const StateVector& psi);
    static DensityMatrix maximally_mixed(int qubit_count);

    int qubit_count() const { return qubit_count_; }
    Eigen::Index dimension() const { return entries_.rows(); }
    const Eigen::MatrixXcd& entries() const { return entries_; }
    Eigen::MatrixXcd& entries() { return entries_; }

    double purity() const;

  private:
    int qubit_count_;
    Eigen::MatrixXcd entries_;
};

/// In-place exp(-i * angle * P) on a state. Uses
/// exp(-i a P) = cos(a) I - i sin(a) P, valid because P^2 = I.
/// Density matrices are conjugated on both sides.
void apply_pauli_exponential(StateVector& state, const PauliString& p, double angle);
void apply_pauli_exponential(DensityMatrix& rho, const PauliString& p, double angle);

/// P * psi without building the dense matrix.
Eigen::VectorXcd apply_string(const PauliString& p, const Eigen::VectorXcd& psi);

/// In-place dense single-qubit gate (unitary expected; density matrices
/// are conjugated on both sides).
void apply_single_qubit(StateVector& state, int qubit, const Eigen::Matrix2cd& u);
void apply_single_qubit(DensityMatrix& rho, int qubit, const Eigen::Matrix2cd& u);

/// Exact propagator exp(-i * dense(h) * t) via Hermitian eigendecomposition.
/// Factorizes once; apply() is then cheap across many times t.
class SpectralPropagator {
  public:
    explicit SpectralPropagator(const PauliSum& h);
    StateVector apply(const StateVector& state, double t) const;

  private:
    int qubit_count_;
    Eigen::MatrixXcd eigenvectors_;
    Eigen::VectorXd eigenvalues_;
};

/// One-shot exact evolution; equivalent to SpectralPropagator(h).apply(state, t).
StateVector evolve_exact(const StateVector& state, const PauliSum& h, double t);

/// <state|obs|state> or Tr(rho * obs). Asserts the imaginary residue is
/// below 1e-10 and discards it.
double expectation(const StateVector& state, const PauliSum& obs);
double expectation(const DensityMatrix& rho, const PauliSum& obs);
/// Expectation of a single string (phase included, must be +-1 overall real).
double expectation(const StateVector& state, const PauliString& obs);
double expectation(const DensityMatrix& rho, const PauliString& obs);
/// Complex expectation of a single string, no hermiticity requirement.
complex expectation_complex(const StateVector& state, const PauliString& obs);
complex expectation_complex(const DensityMatrix& rho, const PauliString& obs);

struct SampleStats {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
};

/// Finite-shot estimate of a +-1-valued Pauli observable. Outcomes are
/// Bernoulli draws at the exact probability p = (1 + <P>)/2; each shot
/// models an independent preparation, so no collapse bookkeeping is done.
/// Bit-reproducible for a fixed seed.
SampleStats sample_observable(const StateVector& state, const PauliString& obs,
                              std::uint64_t shots, std::uint64_t seed);
SampleStats sample_observable(const DensityMatrix& rho, const PauliString& obs,
                              std::uint64_t shots, std::uint64_t seed);

/// Deterministic seed derivation for independent sub-streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace eqs
