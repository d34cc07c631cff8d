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

#include "eqs/compiler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "eqs/noise.hpp"

namespace eqs {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMsPulse = kPi / 2.0;

double normalize_angle(double a) {
    if (!(a > -2.0 * kPi) || !(a <= 2.0 * kPi)) {
        a = std::fmod(a, 4.0 * kPi);
        if (a > 2.0 * kPi) a -= 4.0 * kPi;
        if (a <= -2.0 * kPi) a += 4.0 * kPi;
    }
    return a;
}

Axis next_axis(Axis a) {
    switch (a) {
        case Axis::X: return Axis::Y;
        case Axis::Y: return Axis::Z;
        case Axis::Z: return Axis::X;
        default: throw Error("next_axis: identity has no successor");
    }
}

Axis prev_axis(Axis a) { return next_axis(next_axis(a)); }

PauliString single_site(int qubit_count, int qubit, Axis axis) {
    std::vector<Axis> axes(static_cast<std::size_t>(qubit_count), Axis::I);
    axes[static_cast<std::size_t>(qubit)] = axis;
    return PauliString(std::move(axes));
}

char axis_lower(Axis a) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(axis_char(a))));
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Central-rotation axis and sign for the MS sandwich realizing
// exp(-i * angle * Z_head (x) X...X) on a mask of the given size. The
// pattern repeats with period four in the mask size; validated against
// the dense exponential in the test suite.
struct SandwichCenter {
    Axis axis;
    double sign;
};

SandwichCenter sandwich_center(std::size_t mask_size) {
    switch (mask_size % 4) {
        case 0: return {Axis::Y, +1.0};
        case 1: return {Axis::Z, +1.0};
        case 2: return {Axis::Y, -1.0};
        default: return {Axis::Z, -1.0};
    }
}

Eigen::Matrix2cd ms_frame(double ms_axis) {
    // V sigma^z V^dag = cos(ms_axis) X + sin(ms_axis) Y
    const double r = 1.0 / std::sqrt(2.0);
    const complex e = std::exp(complex(0.0, ms_axis));
    Eigen::Matrix2cd v;
    v << r, r, r * e, -r * e;
    return v;
}

std::uint64_t mask_bits(const GateOp& op, int qubit_count) {
    std::uint64_t bits = 0;
    for (int q : op.mask) bits |= std::uint64_t(1) << (qubit_count - 1 - q);
    return bits;
}

void apply_ms(StateVector& state, const GateOp& op) {
    const Eigen::Matrix2cd v = ms_frame(op.ms_axis);
    const Eigen::Matrix2cd vd = v.adjoint();
    for (int q : op.mask) apply_single_qubit(state, q, vd);
    const std::uint64_t bits = mask_bits(op, state.qubit_count());
    const int size = static_cast<int>(op.mask.size());
    auto& amp = state.amplitudes();
    for (Eigen::Index b = 0; b < amp.size(); ++b) {
        const int m = size - 2 * std::popcount(std::uint64_t(b) & bits);
        amp(b) *= std::exp(complex(0.0, -op.angle * 0.25 * m * m));
    }
    for (int q : op.mask) apply_single_qubit(state, q, v);
}

void apply_ms(DensityMatrix& rho, const GateOp& op) {
    const Eigen::Matrix2cd v = ms_frame(op.ms_axis);
    const Eigen::Matrix2cd vd = v.adjoint();
    for (int q : op.mask) apply_single_qubit(rho, q, vd);
    const std::uint64_t bits = mask_bits(op, rho.qubit_count());
    const int size = static_cast<int>(op.mask.size());
    Eigen::VectorXcd d(rho.dimension());
    for (Eigen::Index b = 0; b < d.size(); ++b) {
        const int m = size - 2 * std::popcount(std::uint64_t(b) & bits);
        d(b) = std::exp(complex(0.0, -op.angle * 0.25 * m * m));
    }
    auto& entries = rho.entries();
    for (Eigen::Index r = 0; r < entries.rows(); ++r) {
        for (Eigen::Index c = 0; c < entries.cols(); ++c) {
            entries(r, c) *= d(r) * std::conj(d(c));
        }
    }
    for (int q : op.mask) apply_single_qubit(rho, q, v);
}

template <typename State>
void apply_op_impl(State& state, const GateOp& op) {
    switch (op.kind) {
        case GateOp::Kind::MS:
            apply_ms(state, op);
            break;
        case GateOp::Kind::LocalRotation:
        case GateOp::Kind::BasisChange:
            apply_pauli_exponential(
                state, single_site(state.qubit_count(), op.mask[0], op.axis), op.angle);
            break;
    }
}

void validate_plan(const MeasurementPlan& plan) {
    for (const auto& g : plan.generators) {
        if (commutes(g, plan.observable)) {
            throw Error("measurement plan: generator commutes with the observable");
        }
    }
    if (plan.generators.size() == 2 &&
        !commutes(plan.generators[0], plan.generators[1])) {
        throw Error("measurement plan: generators do not commute");
    }
    if (!plan.generators.empty()) {
        const PauliString f = conjugated_observable(plan);
        const PauliString expected =
            PauliString(plan.target.axes(),
                        plan.target.iphase_power() + (plan.sign < 0 ? 2 : 0));
        if (!(f == expected)) {
            throw Error("measurement plan: conjugation does not reproduce the target");
        }
    }
}

template <typename State>
MeasuredValue execute_plan_impl(const State& state, const MeasurementPlan& plan,
                                const NoiseModel* noise, const ShotSpec& shots,
                                const CountingOptions& counting) {
    if (state.qubit_count() != plan.target.qubit_count()) {
        throw DimensionError("execute_plan: state and plan register sizes differ");
    }
    State work = state;
    for (const auto& seq : plan.unitaries) {
        if (noise != nullptr) {
            run_sequence(work, seq, *noise, counting);
        } else {
            apply_sequence(work, seq);
        }
    }
    MeasuredValue out;
    if (shots.exact) {
        out.value = plan.sign * expectation(work, plan.observable);
    } else {
        const SampleStats stats =
            sample_observable(work, plan.observable, shots.shots, shots.seed);
        out.value = plan.sign * stats.mean;
        out.stderr_of_mean = stats.stderr_of_mean;
    }
    return out;
}

}  // namespace

GateOp GateOp::ms(std::vector<int> mask, double ms_axis, double angle,
                  Decoupling decoupling) {
    if (mask.size() < 2) {
        throw ContractError("MS gates require at least two participating qubits");
    }
    std::sort(mask.begin(), mask.end());
    GateOp op;
    op.kind = Kind::MS;
    op.mask = std::move(mask);
    op.ms_axis = ms_axis;
    op.angle = normalize_angle(angle);
    op.decoupling = decoupling;
    return op;
}

GateOp GateOp::rotation(int qubit, Axis axis, double angle) {
    if (axis == Axis::I) throw ContractError("rotation axis cannot be identity");
    GateOp op;
    op.kind = Kind::LocalRotation;
    op.mask = {qubit};
    op.axis = axis;
    op.angle = normalize_angle(angle);
    return op;
}

GateOp GateOp::basis_change(int qubit, Axis from, Axis to) {
    if (from == Axis::I || to == Axis::I || from == to) {
        throw ContractError("basis change needs two distinct non-identity axes");
    }
    GateOp op;
    op.kind = Kind::BasisChange;
    op.mask = {qubit};
    op.bc_from = from;
    op.bc_to = to;
    // R = exp(-i theta sigma^c) about the third axis, chosen so that
    // R^dag sigma^to R = sigma^from.
    Axis c = Axis::I;
    for (Axis cand : {Axis::X, Axis::Y, Axis::Z}) {
        if (cand != from && cand != to) c = cand;
    }
    const bool cyclic = (c == Axis::X && to == Axis::Y && from == Axis::Z) ||
                        (c == Axis::Y && to == Axis::Z && from == Axis::X) ||
                        (c == Axis::Z && to == Axis::X && from == Axis::Y);
    op.axis = c;
    op.angle = cyclic ? -kPi / 4.0 : kPi / 4.0;
    return op;
}

int GateOp::cost(const CountingOptions& counting) const {
    switch (kind) {
        case Kind::MS:
            switch (decoupling) {
                case Decoupling::None: return 1;
                case Decoupling::Refocus: return 2;   // split MS + refocusing
                case Decoupling::Shelve: return 3;    // MS + two shelving pulses
            }
            return 1;
        case Kind::LocalRotation: return 1;
        case Kind::BasisChange: return counting.count_basis_changes ? 1 : 0;
    }
    return 1;
}

GateSequence::GateSequence(int qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count < 1) throw DimensionError("register size must be positive");
}

void GateSequence::append(GateOp op) {
    for (int q : op.mask) {
        if (q < 0 || q >= qubit_count_) {
            throw DimensionError("gate qubit " + std::to_string(q) +
                                 " outside register of size " +
                                 std::to_string(qubit_count_));
        }
    }
    ops_.push_back(std::move(op));
}

void GateSequence::append(const GateSequence& other) {
    if (other.qubit_count_ != qubit_count_) {
        throw DimensionError("cannot concatenate sequences on different registers");
    }
    ops_.insert(ops_.end(), other.ops_.begin(), other.ops_.end());
}

int GateSequence::gate_count(const CountingOptions& counting) const {
    int n = 0;
    for (const auto& op : ops_) n += op.cost(counting);
    return n;
}

std::vector<std::pair<PauliString, double>> trotterize(const PauliSum& h, double t,
                                                       int steps) {
    if (steps < 1) throw ContractError("trotterize requires steps >= 1");
    if (!h.is_hermitian()) throw ContractError("trotterize requires a Hermitian sum");
    std::vector<std::pair<PauliString, double>> out;
    out.reserve(static_cast<std::size_t>(steps) * h.terms().size());
    for (int s = 0; s < steps; ++s) {
        for (const auto& term : h.terms()) {
            out.emplace_back(PauliString(term.axes),
                             term.coeff.real() * t / static_cast<double>(steps));
        }
    }
    return out;
}

GateSequence compile_pauli_exponential(const PauliString& p, double angle,
                                       const CompileOptions& options) {
    const int ip = p.iphase_power();
    if (ip % 2 != 0) {
        throw ContractError("exponential generator must be Hermitian (phase +-1)");
    }
    double a = (ip == 2) ? -angle : angle;
    GateSequence seq(p.qubit_count());
    if (a == 0.0 || p.is_identity()) {
        return seq;  // at most a global phase; nothing to implement
    }
    const std::vector<int> sites = p.support();
    if (sites.size() == 1) {
        seq.append(GateOp::rotation(sites[0], p.axis(sites[0]), a));
        return seq;
    }
    const int head = sites[0];
    std::vector<GateOp> closing;
    for (int q : sites) {
        const Axis canon = (q == head) ? Axis::Z : Axis::X;
        if (p.axis(q) != canon) {
            seq.append(GateOp::basis_change(q, p.axis(q), canon));
            closing.push_back(GateOp::basis_change(q, canon, p.axis(q)));
        }
    }
    const auto decoupling = sites.size() == static_cast<std::size_t>(p.qubit_count())
                                ? GateOp::Decoupling::None
                                : options.decoupling;
    const SandwichCenter center = sandwich_center(sites.size());
    seq.append(GateOp::ms(sites, 0.0, kMsPulse, decoupling));
    seq.append(GateOp::rotation(head, center.axis, center.sign * a));
    seq.append(GateOp::ms(sites, 0.0, -kMsPulse, decoupling));
    for (auto it = closing.rbegin(); it != closing.rend(); ++it) {
        seq.append(*it);
    }
    return seq;
}

GateSequence compile_evolution(const PauliSum& h, double t, int steps,
                               const CompileOptions& options) {
    GateSequence seq(h.qubit_count());
    for (const auto& [string, angle] : trotterize(h, t, steps)) {
        seq.append(compile_pauli_exponential(string, angle, options));
    }
    return seq;
}

PauliString conjugated_observable(const MeasurementPlan& plan) {
    PauliString f = plan.observable;
    for (auto it = plan.generators.rbegin(); it != plan.generators.rend(); ++it) {
        if (commutes(f, *it)) {
            throw Error("conjugated_observable: generator commutes with the observable");
        }
        // exp(i phi G) F exp(-i phi G) = -i F G at phi = pi/4
        const PauliString fg = multiply(f, *it);
        f = PauliString(fg.axes(), fg.iphase_power() + 3);
    }
    return f;
}

MeasurementPlan plan_measurement(const PauliString& target,
                                 const CompileOptions& options) {
    const int n = target.qubit_count();
    if (target.iphase_power() % 2 != 0) {
        throw ContractError("measurement target must be Hermitian (phase +-1)");
    }
    const double target_sign = (target.iphase_power() == 0) ? 1.0 : -1.0;
    const PauliString t = target.unphased();
    const std::vector<int> sites = t.support();
    const int w = static_cast<int>(sites.size());

    MeasurementPlan plan;
    plan.target = target;

    if (w <= 2) {
        // Already a directly measurable one- or two-qubit correlation.
        plan.observable = t;
        plan.sign = target_sign;
        return plan;
    }

    std::vector<std::pair<PauliString, double>> candidates;
    if (w == n) {
        // Full support: one generator evolution reduces the correlation to
        // a single-qubit readout.
        const int a = sites[0];
        const Axis alpha = (t.axis(a) == Axis::Z) ? Axis::X : Axis::Z;
        plan.observable = single_site(n, a, alpha);
        const PauliString ot = multiply(plan.observable, t);
        const PauliString g(ot.axes(), ot.iphase_power() + 1);  // i * O * T
        plan.generators = {g.unphased()};
    } else {
        // Identity sites present: two commuting full-weight generators, so
        // no qubit has to be decoupled during the readout evolutions.
        const int a = sites[0];
        const bool even = (w % 2 == 0);
        const int b = even ? sites[1] : -1;
        std::vector<Axis> obs_axes(static_cast<std::size_t>(n), Axis::I);
        std::vector<Axis> g1(static_cast<std::size_t>(n), Axis::Y);
        std::vector<Axis> g2(static_cast<std::size_t>(n), Axis::Y);
        obs_axes[static_cast<std::size_t>(a)] = t.axis(a);
        g1[static_cast<std::size_t>(a)] = g2[static_cast<std::size_t>(a)] =
            prev_axis(t.axis(a));
        if (even) {
            obs_axes[static_cast<std::size_t>(b)] = t.axis(b);
            g1[static_cast<std::size_t>(b)] = g2[static_cast<std::size_t>(b)] =
                t.axis(b);
        }
        for (int k : sites) {
            if (k == a || k == b) continue;
            g1[static_cast<std::size_t>(k)] = next_axis(t.axis(k));
            g2[static_cast<std::size_t>(k)] = next_axis(next_axis(t.axis(k)));
        }
        plan.observable = PauliString(std::move(obs_axes));
        plan.generators = {PauliString(std::move(g1)), PauliString(std::move(g2))};
    }

    const PauliString f = conjugated_observable(plan);
    if (f.axes() != t.axes() || f.iphase_power() % 2 != 0) {
        throw Error("plan_measurement: conjugation failed to reproduce the target");
    }
    const double conj_sign = (f.iphase_power() == 0) ? 1.0 : -1.0;
    plan.sign = conj_sign * target_sign;
    for (const auto& g : plan.generators) {
        plan.unitaries.push_back(compile_pauli_exponential(g, kProtocolAngle, options));
    }
    validate_plan(plan);
    return plan;
}

MeasuredValue execute_plan(const StateVector& state, const MeasurementPlan& plan,
                           const NoiseModel* noise, const ShotSpec& shots,
                           const CountingOptions& counting) {
    if (noise != nullptr && noise->depolarizing_enabled) {
        // Depolarizing needs the density-matrix representation.
        return execute_plan_impl(DensityMatrix::from_state(state), plan, noise, shots,
                                 counting);
    }
    return execute_plan_impl(state, plan, noise, shots, counting);
}

MeasuredValue execute_plan(const DensityMatrix& state, const MeasurementPlan& plan,
                           const NoiseModel* noise, const ShotSpec& shots,
                           const CountingOptions& counting) {
    return execute_plan_impl(state, plan, noise, shots, counting);
}

void apply_op(StateVector& state, const GateOp& op) { apply_op_impl(state, op); }
void apply_op(DensityMatrix& rho, const GateOp& op) { apply_op_impl(rho, op); }

void apply_sequence(StateVector& state, const GateSequence& seq) {
    if (seq.qubit_count() != state.qubit_count()) {
        throw DimensionError("apply_sequence: register size mismatch");
    }
    for (const auto& op : seq.ops()) apply_op(state, op);
}

void apply_sequence(DensityMatrix& rho, const GateSequence& seq) {
    if (seq.qubit_count() != rho.qubit_count()) {
        throw DimensionError("apply_sequence: register size mismatch");
    }
    for (const auto& op : seq.ops()) apply_op(rho, op);
}

Eigen::MatrixXcd dense_unitary(const GateSequence& seq) {
    if (seq.qubit_count() > kMaxDensityQubits) {
        throw CapacityError("dense_unitary supports at most " +
                            std::to_string(kMaxDensityQubits) + " qubits");
    }
    const Eigen::Index dim = Eigen::Index(1) << seq.qubit_count();
    Eigen::MatrixXcd u(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        StateVector psi = StateVector::basis(seq.qubit_count(), std::uint64_t(b));
        apply_sequence(psi, seq);
        u.col(b) = psi.amplitudes();
    }
    return u;
}

std::string dump_gate_sequence(const GateSequence& seq) {
    std::string out = "# eqsim-gates v1 qubits=" + std::to_string(seq.qubit_count()) + "\n";
    for (const auto& op : seq.ops()) {
        switch (op.kind) {
            case GateOp::Kind::MS: {
                out += "MS mask=";
                for (std::size_t k = 0; k < op.mask.size(); ++k) {
                    if (k) out += ",";
                    out += std::to_string(op.mask[k]);
                }
                out += " axis=" + format_double(op.ms_axis);
                out += " angle=" + format_double(op.angle);
                if (op.decoupling == GateOp::Decoupling::Refocus) out += " decouple=refocus";
                if (op.decoupling == GateOp::Decoupling::Shelve) out += " decouple=shelve";
                out += "\n";
                break;
            }
            case GateOp::Kind::LocalRotation:
                out += std::string("R") + axis_char(op.axis) + " q=" +
                       std::to_string(op.mask[0]) + " angle=" + format_double(op.angle) +
                       "\n";
                break;
            case GateOp::Kind::BasisChange:
                out += std::string("BC q=") + std::to_string(op.mask[0]) + " from=" +
                       axis_lower(op.bc_from) + " to=" + axis_lower(op.bc_to) + "\n";
                break;
        }
    }
    return out;
}

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

std::string field_value(const std::string& token, const std::string& key, int line_no) {
    if (token.rfind(key + "=", 0) != 0) {
        throw ConfigError("expected " + key + "=... in gate line, got '" + token + "'",
                          line_no);
    }
    return token.substr(key.size() + 1);
}

}  // namespace

GateSequence parse_gate_sequence(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int qubits = -1;
    std::vector<std::pair<int, std::vector<std::string>>> op_lines;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = split_tokens(line);
        if (tokens.empty()) continue;
        if (tokens[0][0] == '#') {
            for (const auto& tok : tokens) {
                if (tok.rfind("qubits=", 0) == 0) qubits = std::stoi(tok.substr(7));
            }
            continue;
        }
        op_lines.emplace_back(line_no, std::move(tokens));
    }
    if (qubits < 1) {
        throw ConfigError("gate dump is missing the '# eqsim-gates v1 qubits=N' header");
    }
    GateSequence seq(qubits);
    for (const auto& [no, tokens] : op_lines) {
        const std::string& head = tokens[0];
        if (head == "MS") {
            if (tokens.size() < 4) throw ConfigError("malformed MS line", no);
            std::vector<int> mask;
            std::string masks = field_value(tokens[1], "mask", no);
            std::size_t pos = 0;
            while (pos < masks.size()) {
                std::size_t comma = masks.find(',', pos);
                if (comma == std::string::npos) comma = masks.size();
                mask.push_back(std::stoi(masks.substr(pos, comma - pos)));
                pos = comma + 1;
            }
            const double axis = std::stod(field_value(tokens[2], "axis", no));
            const double angle = std::stod(field_value(tokens[3], "angle", no));
            auto decoupling = GateOp::Decoupling::None;
            if (tokens.size() > 4) {
                const std::string d = field_value(tokens[4], "decouple", no);
                if (d == "refocus") decoupling = GateOp::Decoupling::Refocus;
                else if (d == "shelve") decoupling = GateOp::Decoupling::Shelve;
                else throw ConfigError("unknown decouple mode '" + d + "'", no);
            }
            seq.append(GateOp::ms(std::move(mask), axis, angle, decoupling));
        } else if (head == "RX" || head == "RY" || head == "RZ") {
            if (tokens.size() != 3) throw ConfigError("malformed rotation line", no);
            const int q = std::stoi(field_value(tokens[1], "q", no));
            const double angle = std::stod(field_value(tokens[2], "angle", no));
            seq.append(GateOp::rotation(q, axis_from_char(head[1]), angle));
        } else if (head == "BC") {
            if (tokens.size() != 4) throw ConfigError("malformed BC line", no);
            const int q = std::stoi(field_value(tokens[1], "q", no));
            const Axis from = axis_from_char(field_value(tokens[2], "from", no)[0]);
            const Axis to = axis_from_char(field_value(tokens[3], "to", no)[0]);
            seq.append(GateOp::basis_change(q, from, to));
        } else {
            throw ConfigError("unknown gate kind '" + head + "'", no);
        }
    }
    return seq;
}

}  // namespace eqs
