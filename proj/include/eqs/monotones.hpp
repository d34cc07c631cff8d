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

#include <string>
#include <vector>

#include "eqs/compiler.hpp"
#include "eqs/embedding.hpp"
#include "eqs/hilbert.hpp"
#include "eqs/noise.hpp"
#include "eqs/pauli.hpp"

namespace eqs {

/// How the per-component antilinear expectations combine into the
/// monotone value.
enum class Combine {
    AbsValue,         // |v1|, exactly one component
    AbsSumOfSquares,  // |sum_c sign_c * v_c^2|
};

struct MonotoneComponent {
    PauliSum theta = PauliSum(1);  // Hermitian operator on the simulated register
    double sign = 1.0;             // +-1, used by AbsSumOfSquares
};

/// A named entanglement monotone |<psi| Theta K |psi>|-style functional:
/// each component contributes v_c = <psi|Theta_c|psi*>.
struct MonotoneSpec {
    std::string name;
    std::vector<MonotoneComponent> components;
    Combine combine = Combine::AbsValue;

    int qubit_count() const;
    void validate() const;
};

/// Two-qubit concurrence: Theta = sigma^y (x) sigma^y, absolute value.
MonotoneSpec concurrence_spec();

/// Three-qubit 3-tangle: components I(x)Y(x)Y (sign -1), X(x)Y(x)Y (+1),
/// Z(x)Y(x)Y (+1), combined as the absolute sum of squares.
MonotoneSpec three_tangle_spec();

/// Look up a shipped preset by name ("concurrence", "three_tangle").
MonotoneSpec monotone_by_name(const std::string& name);

/// Spec text format, mirroring the Pauli-sum notation:
///   name: three_tangle
///   combine: abs_sum_of_squares
///   component: sign=-1 theta= 1 * I_Y_Y
MonotoneSpec parse_monotone_spec(const std::string& text);
std::string print_monotone_spec(const MonotoneSpec& spec);

/// Oracle path: evaluate on the simulated-space state by explicit
/// conjugation of psi.
double evaluate_direct(const StateVector& psi, const MonotoneSpec& spec);

/// Enlarged-space path with exact expectations; equals
/// evaluate_direct(project(Psi), spec) for states in the embedding image.
double evaluate_embedded_exact(const StateVector& enlarged, const MonotoneSpec& spec);

/// One enlarged-space measurement target of the protocol expansion:
/// sigma^{z or x} on the extra qubit tensored with a Theta term.
struct EnlargedTarget {
    int component;       // index into spec.components
    double coefficient;  // real Theta term coefficient
    bool imaginary_part; // false: sigma^z copy (real part), true: sigma^x copy
    PauliString string;  // the full enlarged-space Pauli string
};

/// Expand a spec into the list of enlarged-space observables the
/// measurement protocol must estimate (two per Theta term).
std::vector<EnlargedTarget> enlarged_targets(const MonotoneSpec& spec);

struct Estimate {
    double value = 0.0;
    double stderr_of_mean = 0.0;
};

struct ProtocolOptions {
    const NoiseModel* noise = nullptr;  // optional
    ShotSpec shots = ShotSpec::exact_expectation();
    std::uint64_t seed = 0;             // stream base for per-target sampling
    bool mitigate = false;              // undo the depolarizing contraction
    bool noisy_measurement = false;     // also run plan unitaries through the noise
    /// Enlarged-register state the preparation sequence starts from;
    /// defaults to |0...0> (the embedded image of the real ground state).
    const StateVector* initial = nullptr;
    CountingOptions counting = {};
    CompileOptions compile = {};
};

/// Full measurement pipeline: prepare |0...0> on the enlarged register,
/// run the preparation sequence (through the noise model when given),
/// then per enlarged target: plan, execute, optionally mitigate; assemble
/// the component expectations and combine. The reported uncertainty uses
/// first-order (delta-method) propagation, a good approximation when the
/// per-target standard errors are small against the value.
Estimate evaluate_embedded_protocol(const GateSequence& preparation,
                                    const MonotoneSpec& spec,
                                    const ProtocolOptions& options = {});

}  // namespace eqs
