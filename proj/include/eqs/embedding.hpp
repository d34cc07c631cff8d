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

#include "eqs/hilbert.hpp"
#include "eqs/pauli.hpp"

namespace eqs {

/// The enlarged register carries the extra qubit at index 0 (leftmost
/// factor); its |0> block holds Re(psi), its |1> block holds Im(psi).
constexpr int kAncillaIndex = 0;

/// Geometry of the one-extra-qubit embedding for a given simulated register.
struct EmbeddingMap {
    int simulated_qubits;
    int enlarged_qubits;  // always simulated_qubits + 1
    int ancilla_index;    // always kAncillaIndex

    static EmbeddingMap for_register(int simulated_qubits);

    Eigen::Index simulated_dimension() const {
        return Eigen::Index(1) << simulated_qubits;
    }
    Eigen::Index enlarged_dimension() const { return Eigen::Index(1) << enlarged_qubits; }

    /// Dense projector M = (1, i) (x) I mapping the enlarged space onto
    /// the simulated one; psi(t) = M Psi(t).
    Eigen::MatrixXcd projector() const;
};

/// Lift an N-qubit state into the N+1-qubit register: upper block Re(psi),
/// lower block Im(psi). An isometry: the result is normalized whenever
/// psi is, and project(embed_state(psi)) == psi exactly.
StateVector embed_state(const StateVector& psi);

/// Apply the projector M = (1, i) (x) I: returns upper + i * lower block.
/// The result is intentionally left unnormalized; for states produced by
/// embed_state and evolved under an embedded Hamiltonian it has norm 1.
Eigen::VectorXcd project(const StateVector& enlarged);

/// The physical complex-conjugation gate: sigma^z on the extra qubit.
/// project(conjugation_gate(embed_state(psi))) == conj(psi).
void conjugation_gate(StateVector& enlarged);

/// <psi|Theta|psi*> evaluated in the enlarged space as
/// <Psi|sigma^z (x) Theta|Psi> - i <Psi|sigma^x (x) Theta|Psi>.
/// Valid when Psi lies in the embedding image (caller's responsibility).
complex antilinear_expectation(const StateVector& enlarged, const PauliSum& theta);
complex antilinear_expectation(const DensityMatrix& enlarged, const PauliSum& theta);

/// sigma^a on the extra qubit tensored with an N-qubit string/sum: the
/// enlarged-space observables the protocol measures.
PauliString prepend_axis(Axis ancilla_axis, const PauliString& simulated);
PauliSum prepend_axis(Axis ancilla_axis, const PauliSum& simulated);

}  // namespace eqs
