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
#include <string>
#include <utility>
#include <vector>

#include "eqs/hilbert.hpp"
#include "eqs/pauli.hpp"

namespace eqs {

struct NoiseModel;  // defined in eqs/noise.hpp

/// Gate-count bookkeeping. The number of entangling-platform pulses per
/// op is a convention, so it is configurable rather than baked in.
struct CountingOptions {
    /// Whether basis-change pulses count toward the per-gate noise
    /// exponent n. Default true (conservative).
    bool count_basis_changes = true;
};

/// One trapped-ion instruction.
struct GateOp {
    enum class Kind { MS, LocalRotation, BasisChange };

    /// How a subset-restricted MS gate is realized on hardware. Only the
    /// cost differs at this abstraction level: refocusing doubles the MS
    /// count, shelving adds two decoupling pulses.
    enum class Decoupling { None, Refocus, Shelve };

    Kind kind;
    std::vector<int> mask;   // participating qubits (sorted); one entry for 1q ops
    Axis axis = Axis::I;     // rotation axis (LocalRotation / derived for BasisChange)
    double angle = 0.0;      // radians in (-2pi, 2pi]
    double ms_axis = 0.0;    // MS drive phase: generator sum of cos*X + sin*Y
    Axis bc_from = Axis::I;  // BasisChange: original axis
    Axis bc_to = Axis::I;    // BasisChange: canonical axis
    Decoupling decoupling = Decoupling::None;

    static GateOp ms(std::vector<int> mask, double ms_axis, double angle,
                     Decoupling decoupling = Decoupling::None);
    static GateOp rotation(int qubit, Axis axis, double angle);
    /// The single-qubit Clifford rotation R with R^dag sigma^to R = sigma^from.
    static GateOp basis_change(int qubit, Axis from, Axis to);

    /// Contribution to the gate count n under the given convention.
    int cost(const CountingOptions& counting) const;
};

/// Ordered instruction stream on a fixed register.
class GateSequence {
  public:
    explicit GateSequence(int qubit_count);

    int qubit_count() const { return qubit_count_; }
    const std::vector<GateOp>& ops() const { return ops_; }
    bool empty() const { return ops_.empty(); }

    void append(GateOp op);
    void append(const GateSequence& other);

    /// Gate count n under the given convention.
    int gate_count(const CountingOptions& counting = {}) const;

  private:
    int qubit_count_;
    std::vector<GateOp> ops_;
};

/// Compilation knobs.
struct CompileOptions {
    GateOp::Decoupling decoupling = GateOp::Decoupling::Shelve;
};

/// First-order Trotter factorization of exp(-i * h * t) into `steps`
/// repetitions of the per-term exponentials in canonical term order:
/// one (string, angle) entry per term per step, angle = coeff * t / steps.
std::vector<std::pair<PauliString, double>> trotterize(const PauliSum& h, double t,
                                                       int steps);

/// Compile exp(-i * angle * P) into native gates. Single-site strings
/// become one rotation; identity strings and zero angles compile to an
/// empty sequence (a no-op, not an error). Multi-site strings become an
/// MS(+pi/2) / central rotation / MS(-pi/2) sandwich conjugated by
/// per-qubit basis changes; the result equals the exponential exactly.
GateSequence compile_pauli_exponential(const PauliString& p, double angle,
                                       const CompileOptions& options = {});

/// Compile the full Trotterized evolution; adds no approximation beyond
/// the Trotter split itself.
GateSequence compile_evolution(const PauliSum& h, double t, int steps,
                               const CompileOptions& options = {});

/// Protocol angle for the measurement-reduction evolutions
/// U = exp(-i * phi * G): conjugating an anticommuting observable at this
/// angle turns it into the product -i * O * G.
constexpr double kProtocolAngle = 0.7853981633974483096;  // pi/4

/// Recipe that reduces an enlarged-space Pauli-string expectation to a
/// one- or two-qubit measurement after at most two generator evolutions.
struct MeasurementPlan {
    PauliString target = PauliString::identity(1);      // what the caller wants, phase +-1
    PauliString observable = PauliString::identity(1);  // weight <= 2, unit phase
    std::vector<PauliString> generators;                // unit phase, at most two
    std::vector<GateSequence> unitaries;  // generators compiled at kProtocolAngle
    double sign = 1.0;                    // conjugated observable == sign * target
};

/// Build a plan for the given enlarged-space target string.
/// Full-support targets use one generator and a single-qubit observable;
/// targets with identity sites use two commuting full-weight generators,
/// each anticommuting with the observable, measuring one qubit for odd
/// target weight and two for even weight. Weight <= 2 targets are
/// measured directly.
MeasurementPlan plan_measurement(const PauliString& target,
                                 const CompileOptions& options = {});

/// Symbolic Heisenberg conjugation of the plan's observable through its
/// unitaries at the protocol angle. Equals sign * target for every plan
/// this library constructs (checked at construction).
PauliString conjugated_observable(const MeasurementPlan& plan);

/// How many measurement repetitions to use.
struct ShotSpec {
    bool exact = true;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;

    static ShotSpec exact_expectation() { return {}; }
    static ShotSpec sampled(std::uint64_t shots, std::uint64_t seed) {
        return {false, shots, seed};
    }
};

struct MeasuredValue {
    double value = 0.0;
    double stderr_of_mean = 0.0;
};

/// Run the plan on (a copy of) the given enlarged-space state: apply the
/// plan's unitaries (through the noise model when given), measure or
/// sample the observable, undo the plan sign, and return the raw
/// (unmitigated) estimate of <target>.
MeasuredValue execute_plan(const StateVector& state, const MeasurementPlan& plan,
                           const NoiseModel* noise, const ShotSpec& shots,
                           const CountingOptions& counting = {});
MeasuredValue execute_plan(const DensityMatrix& state, const MeasurementPlan& plan,
                           const NoiseModel* noise, const ShotSpec& shots,
                           const CountingOptions& counting = {});

/// Ideal (noiseless) execution of an instruction stream.
void apply_op(StateVector& state, const GateOp& op);
void apply_op(DensityMatrix& rho, const GateOp& op);
void apply_sequence(StateVector& state, const GateSequence& seq);
void apply_sequence(DensityMatrix& rho, const GateSequence& seq);

/// Dense unitary of a sequence (small registers only; tests and verification).
Eigen::MatrixXcd dense_unitary(const GateSequence& seq);

/// Text dump, one op per line, angles at 17 significant digits; round-trips
/// bit-exactly through parse_gate_sequence.
std::string dump_gate_sequence(const GateSequence& seq);
GateSequence parse_gate_sequence(const std::string& text);

}  // namespace eqs
