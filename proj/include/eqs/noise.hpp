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

#include "eqs/compiler.hpp"
#include "eqs/hilbert.hpp"

namespace eqs {

/// Per-gate error model: a global depolarizing channel with process
/// fidelity epsilon applied after each counted gate, plus unitary
/// crosstalk of strength delta0 on the nearest neighbors of every
/// single-ion rotation.
struct NoiseModel {
    double epsilon = 1.0;
    double delta0 = 0.0;
    bool depolarizing_enabled = true;
    bool crosstalk_enabled = false;

    void validate() const;
    bool trivial() const {
        return (!depolarizing_enabled || epsilon >= 1.0) &&
               (!crosstalk_enabled || delta0 <= 0.0);
    }
};

/// Apply one gate followed by the depolarizing mix
/// rho <- eps^c * U rho U^dag + (1 - eps^c) I/2^n, where c is the op's
/// cost under the counting convention, so that the eps^n contraction law
/// holds exactly with n = GateSequence::gate_count.
void apply_noisy_gate(DensityMatrix& rho, const GateOp& gate, const NoiseModel& model,
                      const CountingOptions& counting = {});

/// Single-ion rotation with imperfect site illumination: full angle on
/// the addressed qubit, angle * delta0 on its chain neighbors (same axis;
/// all factors commute). Unitary, so purity is preserved.
void crosstalk_rotation(StateVector& state, int qubit, Axis axis, double angle,
                        const NoiseModel& model);
void crosstalk_rotation(DensityMatrix& rho, int qubit, Axis axis, double angle,
                        const NoiseModel& model);

/// Run a full instruction stream under the model. State vectors support
/// crosstalk only (depolarizing requires the density-matrix form).
void run_sequence(StateVector& state, const GateSequence& seq, const NoiseModel& model,
                  const CountingOptions& counting = {});
void run_sequence(DensityMatrix& rho, const GateSequence& seq, const NoiseModel& model,
                  const CountingOptions& counting = {});

/// Invert the depolarizing contraction: given a measured expectation after
/// n counted gates at fidelity epsilon, estimate the noiseless value.
/// `trace_obs` is the observable's expectation in the maximally mixed
/// state, Tr(O)/2^n_qubits; zero for every non-identity Pauli string.
double mitigate(double measured, double epsilon, int n, double trace_obs = 0.0);

/// Repetitions needed to reach standard error k on a mitigated estimate:
/// (1 / (k * eps^n))^2.
double repetitions_embedding(double k, double epsilon, int n);

/// One-to-one simulator baseline: 3^n_qubits settings, each to the same
/// accuracy: 3^n_qubits * (1 / (k * delta^n))^2.
double repetitions_tomography(double k, double delta, int n, int n_qubits);

/// Inputs of the cost comparison between the embedding run and full
/// tomography on the one-to-one simulator.
struct CostInputs {
    double k = 0.01;      // target standard error
    int n = 1;            // gate count (n ~ n_qubits under the linear-growth coupling)
    double epsilon = 1.0; // embedding per-gate fidelity
    double delta = 1.0;   // one-to-one per-gate fidelity
    int n_qubits = 1;
    int l = 2;            // enlarged-space observables per monotone

    void validate() const;
};

/// Closed-form repetition ratio l * (delta / (sqrt(3) * epsilon))^(2 n_qubits),
/// the n = n_qubits limit of repetitions_embedding / repetitions_tomography
/// times the observable count l.
double cost_ratio(const CostInputs& inputs);

/// Observables needed by tomography-based monotone estimation: 2^(2N) - 1.
std::uint64_t tomography_observable_count(int n_qubits);

}  // namespace eqs
