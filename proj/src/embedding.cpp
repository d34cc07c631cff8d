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

#include "eqs/embedding.hpp"

namespace eqs {

EmbeddingMap EmbeddingMap::for_register(int simulated_qubits) {
    if (simulated_qubits < 1) {
        throw DimensionError("embedding needs at least one simulated qubit");
    }
    if (simulated_qubits + 1 > kMaxStateQubits) {
        throw CapacityError("enlarged register would exceed the state-vector limit");
    }
    return {simulated_qubits, simulated_qubits + 1, kAncillaIndex};
}

Eigen::MatrixXcd EmbeddingMap::projector() const {
    const Eigen::Index dim = simulated_dimension();
    Eigen::MatrixXcd m(dim, 2 * dim);
    m.leftCols(dim) = Eigen::MatrixXcd::Identity(dim, dim);
    m.rightCols(dim) = complex(0, 1) * Eigen::MatrixXcd::Identity(dim, dim);
    return m;
}

StateVector embed_state(const StateVector& psi) {
    psi.check_norm();
    const Eigen::Index dim = psi.dimension();
    Eigen::VectorXcd enlarged(2 * dim);
    enlarged.head(dim) = psi.amplitudes().real().cast<complex>();
    enlarged.tail(dim) = psi.amplitudes().imag().cast<complex>();
    return StateVector(psi.qubit_count() + 1, std::move(enlarged));
}

Eigen::VectorXcd project(const StateVector& enlarged) {
    if (enlarged.qubit_count() < 2) {
        throw DimensionError("project requires at least the extra qubit plus one");
    }
    const Eigen::Index half = enlarged.dimension() / 2;
    return enlarged.amplitudes().head(half) +
           complex(0, 1) * enlarged.amplitudes().tail(half);
}

void conjugation_gate(StateVector& enlarged) {
    const Eigen::Index half = enlarged.dimension() / 2;
    enlarged.amplitudes().tail(half) *= -1.0;
}

PauliString prepend_axis(Axis ancilla_axis, const PauliString& simulated) {
    std::vector<Axis> axes;
    axes.reserve(static_cast<std::size_t>(simulated.qubit_count()) + 1);
    axes.push_back(ancilla_axis);
    axes.insert(axes.end(), simulated.axes().begin(), simulated.axes().end());
    return PauliString(std::move(axes), simulated.iphase_power());
}

PauliSum prepend_axis(Axis ancilla_axis, const PauliSum& simulated) {
    PauliSum out(simulated.qubit_count() + 1);
    for (const auto& t : simulated.terms()) {
        out.add(t.coeff, prepend_axis(ancilla_axis, PauliString(t.axes)));
    }
    return out;
}

namespace {

template <typename State>
complex antilinear_expectation_impl(const State& enlarged, const PauliSum& theta) {
    if (!theta.is_hermitian()) {
        throw ContractError("antilinear_expectation requires a Hermitian operator");
    }
    complex acc = 0.0;
    for (const auto& t : theta.terms()) {
        const PauliString string(t.axes);
        const complex z = expectation_complex(enlarged, prepend_axis(Axis::Z, string));
        const complex x = expectation_complex(enlarged, prepend_axis(Axis::X, string));
        acc += t.coeff * (z - complex(0, 1) * x);
    }
    return acc;
}

}  // namespace

complex antilinear_expectation(const StateVector& enlarged, const PauliSum& theta) {
    return antilinear_expectation_impl(enlarged, theta);
}

complex antilinear_expectation(const DensityMatrix& enlarged, const PauliSum& theta) {
    return antilinear_expectation_impl(enlarged, theta);
}

}  // namespace eqs
