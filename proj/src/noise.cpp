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

#include "eqs/noise.hpp"

#include <cmath>

namespace eqs {

namespace {

constexpr double kUnderflowFloor = 1e-300;

PauliString single_site(int qubit_count, int qubit, Axis axis) {
    std::vector<Axis> axes(static_cast<std::size_t>(qubit_count), Axis::I);
    axes[static_cast<std::size_t>(qubit)] = axis;
    return PauliString(std::move(axes));
}

template <typename State>
void crosstalk_rotation_impl(State& state, int qubit, Axis axis, double angle,
                             const NoiseModel& model) {
    model.validate();
    apply_pauli_exponential(state, single_site(state.qubit_count(), qubit, axis), angle);
    if (!model.crosstalk_enabled || model.delta0 <= 0.0) return;
    for (int neighbor : {qubit - 1, qubit + 1}) {
        if (neighbor < 0 || neighbor >= state.qubit_count()) continue;
        apply_pauli_exponential(state, single_site(state.qubit_count(), neighbor, axis),
                                model.delta0 * angle);
    }
}

template <typename State>
void apply_gate_unitary(State& state, const GateOp& op, const NoiseModel& model) {
    const bool crosstalked = model.crosstalk_enabled && model.delta0 > 0.0 &&
                             op.kind != GateOp::Kind::MS;
    if (crosstalked) {
        crosstalk_rotation(state, op.mask[0], op.axis, op.angle, model);
    } else {
        apply_op(state, op);
    }
}

double checked_power(double base, int n, const char* what) {
    const double p = std::pow(base, static_cast<double>(n));
    if (!(p >= kUnderflowFloor)) {
        throw Error(std::string(what) + ": eps^n underflowed (" + std::to_string(base) +
                    "^" + std::to_string(n) + "); the regime is unmitigable");
    }
    return p;
}

}  // namespace

void NoiseModel::validate() const {
    if (!(epsilon > 0.0) || epsilon > 1.0) {
        throw ContractError("gate fidelity epsilon must lie in (0, 1]");
    }
    if (delta0 < 0.0 || delta0 > 0.5) {
        throw ContractError("crosstalk strength delta0 must lie in [0, 0.5]");
    }
}

void apply_noisy_gate(DensityMatrix& rho, const GateOp& gate, const NoiseModel& model,
                      const CountingOptions& counting) {
    model.validate();
    apply_gate_unitary(rho, gate, model);
    if (!model.depolarizing_enabled || model.epsilon >= 1.0) return;
    const int cost = gate.cost(counting);
    if (cost == 0) return;
    const double keep = std::pow(model.epsilon, static_cast<double>(cost));
    const Eigen::Index dim = rho.dimension();
    rho.entries() *= keep;
    rho.entries().diagonal().array() += (1.0 - keep) / static_cast<double>(dim);
}

void crosstalk_rotation(StateVector& state, int qubit, Axis axis, double angle,
                        const NoiseModel& model) {
    crosstalk_rotation_impl(state, qubit, axis, angle, model);
}

void crosstalk_rotation(DensityMatrix& rho, int qubit, Axis axis, double angle,
                        const NoiseModel& model) {
    crosstalk_rotation_impl(rho, qubit, axis, angle, model);
}

void run_sequence(StateVector& state, const GateSequence& seq, const NoiseModel& model,
                  const CountingOptions& counting) {
    (void)counting;
    model.validate();
    if (model.depolarizing_enabled && model.epsilon < 1.0) {
        throw ContractError(
            "depolarizing noise requires the density-matrix representation");
    }
    if (seq.qubit_count() != state.qubit_count()) {
        throw DimensionError("run_sequence: register size mismatch");
    }
    for (const auto& op : seq.ops()) apply_gate_unitary(state, op, model);
}

void run_sequence(DensityMatrix& rho, const GateSequence& seq, const NoiseModel& model,
                  const CountingOptions& counting) {
    if (seq.qubit_count() != rho.qubit_count()) {
        throw DimensionError("run_sequence: register size mismatch");
    }
    for (const auto& op : seq.ops()) apply_noisy_gate(rho, op, model, counting);
}

double mitigate(double measured, double epsilon, int n, double trace_obs) {
    if (!(epsilon > 0.0) || epsilon > 1.0) {
        throw ContractError("mitigate: epsilon must lie in (0, 1]");
    }
    if (n < 0) throw ContractError("mitigate: gate count must be non-negative");
    const double p = checked_power(epsilon, n, "mitigate");
    return measured / p - (1.0 - p) / p * trace_obs;
}

double repetitions_embedding(double k, double epsilon, int n) {
    if (!(k > 0.0)) throw ContractError("target uncertainty k must be positive");
    if (!(epsilon > 0.0) || epsilon > 1.0) {
        throw ContractError("epsilon must lie in (0, 1]");
    }
    const double p = checked_power(epsilon, n, "repetitions_embedding");
    const double root = 1.0 / (k * p);
    return root * root;
}

double repetitions_tomography(double k, double delta, int n, int n_qubits) {
    if (!(k > 0.0)) throw ContractError("target uncertainty k must be positive");
    if (!(delta > 0.0) || delta > 1.0) {
        throw ContractError("delta must lie in (0, 1]");
    }
    if (n_qubits < 1) throw ContractError("n_qubits must be positive");
    const double p = checked_power(delta, n, "repetitions_tomography");
    const double root = 1.0 / (k * p);
    return std::pow(3.0, static_cast<double>(n_qubits)) * root * root;
}

void CostInputs::validate() const {
    if (!(k > 0.0)) throw ContractError("target uncertainty k must be positive");
    if (!(epsilon > 0.0) || epsilon > 1.0 || !(delta > 0.0) || delta > 1.0) {
        throw ContractError("fidelities must lie in (0, 1]");
    }
    if (l < 1) throw ContractError("observable count l must be >= 1");
    if (n_qubits < 1) throw ContractError("n_qubits must be positive");
}

double cost_ratio(const CostInputs& inputs) {
    inputs.validate();
    const double base = inputs.delta / (std::sqrt(3.0) * inputs.epsilon);
    return static_cast<double>(inputs.l) *
           std::pow(base, 2.0 * static_cast<double>(inputs.n_qubits));
}

std::uint64_t tomography_observable_count(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 31) {
        throw ContractError("tomography_observable_count supports 1..31 qubits");
    }
    return (std::uint64_t(1) << (2 * n_qubits)) - 1;
}

}  // namespace eqs
