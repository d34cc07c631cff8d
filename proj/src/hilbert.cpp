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

#include "eqs/hilbert.hpp"

#include <bit>
#include <cmath>
#include <cstdio>

#include <Eigen/Eigenvalues>

namespace eqs {

namespace {

// Dense exact evolution stays desk-scale; eigendecomposition beyond this
// register size would silently take minutes.
constexpr int kMaxExactEvolveQubits = 12;

// Action of a Pauli string on basis indices: P|b> = f(b) |b ^ flip_mask>,
// f(b) = base_phase * (-1)^popcount(b & sign_mask). Qubit 0 maps to the
// most significant bit.
struct StringAction {
    std::uint64_t flip_mask = 0;
    std::uint64_t sign_mask = 0;
    complex base_phase{1.0, 0.0};
};

StringAction make_action(const PauliString& p) {
    StringAction act;
    const int n = p.qubit_count();
    int ipow = p.iphase_power();
    for (int q = 0; q < n; ++q) {
        const std::uint64_t bit = std::uint64_t(1) << (n - 1 - q);
        switch (p.axis(q)) {
            case Axis::I: break;
            case Axis::X: act.flip_mask |= bit; break;
            case Axis::Y:
                act.flip_mask |= bit;
                act.sign_mask |= bit;
                ipow += 1;
                break;
            case Axis::Z: act.sign_mask |= bit; break;
        }
    }
    switch (((ipow % 4) + 4) % 4) {
        case 0: act.base_phase = {1, 0}; break;
        case 1: act.base_phase = {0, 1}; break;
        case 2: act.base_phase = {-1, 0}; break;
        default: act.base_phase = {0, -1}; break;
    }
    return act;
}

inline complex action_factor(const StringAction& act, std::uint64_t b) {
    return (std::popcount(b & act.sign_mask) & 1) ? -act.base_phase : act.base_phase;
}

void require_register(int expected, int got, const char* what) {
    if (expected != got) {
        throw DimensionError(std::string(what) + ": register size mismatch (" +
                             std::to_string(expected) + " vs " + std::to_string(got) + ")");
    }
}

void require_symbolically_hermitian(const PauliSum& obs, const char* what) {
    for (const auto& t : obs.terms()) {
        if (std::abs(t.coeff.imag()) > 1e-12) {
            throw ContractError(std::string(what) + " requires a Hermitian observable");
        }
    }
}

// (P M)[a, c] = f(pi(a)) * M[pi(a), c] with pi(a) = a ^ flip_mask.
Eigen::MatrixXcd left_apply_string(const StringAction& act, const Eigen::MatrixXcd& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (Eigen::Index a = 0; a < m.rows(); ++a) {
        const std::uint64_t src = std::uint64_t(a) ^ act.flip_mask;
        out.row(a) = action_factor(act, src) * m.row(static_cast<Eigen::Index>(src));
    }
    return out;
}

double checked_real(complex value, const char* what) {
    if (std::abs(value.imag()) > 1e-10) {
        throw ContractError(std::string(what) + ": imaginary residue " +
                            std::to_string(value.imag()) + " exceeds 1e-10");
    }
    return value.real();
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

SampleStats sample_at_probability(double expectation_value, std::uint64_t shots,
                                  std::uint64_t seed) {
    if (shots == 0) {
        throw ContractError("sample_observable requires shots >= 1");
    }
    double p = 0.5 * (1.0 + expectation_value);
    p = std::min(1.0, std::max(0.0, p));
    Rng rng(seed);
    std::uint64_t plus = 0;
    for (std::uint64_t s = 0; s < shots; ++s) {
        // 53-bit uniform in [0, 1); kept explicit for bit-exact replay.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        plus += (u < p);
    }
    SampleStats stats;
    stats.mean = (2.0 * static_cast<double>(plus) - static_cast<double>(shots)) /
                 static_cast<double>(shots);
    if (shots > 1) {
        const double var1 = std::max(0.0, 1.0 - stats.mean * stats.mean);
        stats.stderr_of_mean = std::sqrt(var1 / static_cast<double>(shots - 1));
    }
    return stats;
}

}  // namespace

StateVector::StateVector(int qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count < 1) throw DimensionError("register size must be positive");
    if (qubit_count > kMaxStateQubits) {
        throw CapacityError("state vectors support at most " +
                            std::to_string(kMaxStateQubits) + " qubits, requested " +
                            std::to_string(qubit_count));
    }
    amplitudes_ = Eigen::VectorXcd::Zero(Eigen::Index(1) << qubit_count);
    amplitudes_(0) = 1.0;
}

StateVector::StateVector(int qubit_count, Eigen::VectorXcd amplitudes)
    : qubit_count_(qubit_count), amplitudes_(std::move(amplitudes)) {
    if (qubit_count < 1) throw DimensionError("register size must be positive");
    if (qubit_count > kMaxStateQubits) {
        throw CapacityError("state vectors support at most " +
                            std::to_string(kMaxStateQubits) + " qubits, requested " +
                            std::to_string(qubit_count));
    }
    if (amplitudes_.size() != (Eigen::Index(1) << qubit_count)) {
        throw DimensionError("amplitude count does not match register size");
    }
    check_norm();
}

StateVector StateVector::basis(int qubit_count, std::uint64_t index) {
    StateVector psi(qubit_count);
    if (index >= (std::uint64_t(1) << qubit_count)) {
        throw DimensionError("basis index out of range");
    }
    psi.amplitudes_(0) = 0.0;
    psi.amplitudes_(static_cast<Eigen::Index>(index)) = 1.0;
    return psi;
}

void StateVector::check_norm() const {
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > 1e-10) {
        throw ContractError("state norm drifted to " + std::to_string(norm));
    }
}

std::string StateVector::dump_csv() const {
    std::string out = "index,real,imag\n";
    char buf[96];
    for (Eigen::Index k = 0; k < amplitudes_.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%lld,%.17g,%.17g\n", static_cast<long long>(k),
                      amplitudes_(k).real(), amplitudes_(k).imag());
        out += buf;
    }
    return out;
}

DensityMatrix::DensityMatrix(int qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count < 1) throw DimensionError("register size must be positive");
    if (qubit_count > kMaxDensityQubits) {
        throw CapacityError("density matrices support at most " +
                            std::to_string(kMaxDensityQubits) + " qubits, requested " +
                            std::to_string(qubit_count));
    }
    const Eigen::Index dim = Eigen::Index(1) << qubit_count;
    entries_ = Eigen::MatrixXcd::Zero(dim, dim);
    entries_(0, 0) = 1.0;
}

DensityMatrix::DensityMatrix(int qubit_count, Eigen::MatrixXcd entries)
    : qubit_count_(qubit_count), entries_(std::move(entries)) {
    if (qubit_count < 1) throw DimensionError("register size must be positive");
    if (qubit_count > kMaxDensityQubits) {
        throw CapacityError("density matrices support at most " +
                            std::to_string(kMaxDensityQubits) + " qubits, requested " +
                            std::to_string(qubit_count));
    }
    const Eigen::Index dim = Eigen::Index(1) << qubit_count;
    if (entries_.rows() != dim || entries_.cols() != dim) {
        throw DimensionError("matrix size does not match register size");
    }
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw ContractError("density matrix is not Hermitian");
    }
    if (std::abs(entries_.trace().real() - 1.0) > 1e-10) {
        throw ContractError("density matrix trace is not 1");
    }
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
    if (psi.qubit_count() > kMaxDensityQubits) {
        throw CapacityError("density matrices support at most " +
                            std::to_string(kMaxDensityQubits) + " qubits");
    }
    return DensityMatrix(psi.qubit_count(),
                         psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int qubit_count) {
    DensityMatrix rho(qubit_count);
    const Eigen::Index dim = rho.dimension();
    rho.entries_ = Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
    return rho;
}

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

void apply_pauli_exponential(StateVector& state, const PauliString& p, double angle) {
    require_register(state.qubit_count(), p.qubit_count(), "apply_pauli_exponential");
    const StringAction act = make_action(p);
    const complex c = std::cos(angle);
    const complex mis = complex(0, -1) * std::sin(angle);
    auto& amp = state.amplitudes();
    if (act.flip_mask == 0) {
        for (Eigen::Index a = 0; a < amp.size(); ++a) {
            amp(a) *= c + mis * action_factor(act, static_cast<std::uint64_t>(a));
        }
    } else {
        for (Eigen::Index a = 0; a < amp.size(); ++a) {
            const std::uint64_t b = std::uint64_t(a) ^ act.flip_mask;
            if (std::uint64_t(a) > b) continue;
            const complex va = amp(a);
            const complex vb = amp(static_cast<Eigen::Index>(b));
            amp(a) = c * va + mis * action_factor(act, b) * vb;
            amp(static_cast<Eigen::Index>(b)) =
                c * vb + mis * action_factor(act, std::uint64_t(a)) * va;
        }
    }
    state.check_norm();
}

void apply_pauli_exponential(DensityMatrix& rho, const PauliString& p, double angle) {
    require_register(rho.qubit_count(), p.qubit_count(), "apply_pauli_exponential");
    const StringAction act = make_action(p);
    const complex c = std::cos(angle);
    const complex mis = complex(0, -1) * std::sin(angle);
    auto left_apply_gate = [&](const Eigen::MatrixXcd& m) {
        return (c * m + mis * left_apply_string(act, m)).eval();
    };
    // rho Hermitian, so (G rho)^dagger = rho G^dagger and G(G rho)^dagger = G rho G^dagger.
    Eigen::MatrixXcd t = left_apply_gate(rho.entries());
    rho.entries() = left_apply_gate(t.adjoint());
}

Eigen::VectorXcd apply_string(const PauliString& p, const Eigen::VectorXcd& psi) {
    const StringAction act = make_action(p);
    Eigen::VectorXcd out(psi.size());
    for (Eigen::Index a = 0; a < psi.size(); ++a) {
        const std::uint64_t src = std::uint64_t(a) ^ act.flip_mask;
        out(a) = action_factor(act, src) * psi(static_cast<Eigen::Index>(src));
    }
    return out;
}

namespace {

void left_apply_single(Eigen::MatrixXcd& m, int qubit_count, int qubit,
                       const Eigen::Matrix2cd& u) {
    const std::uint64_t bit = std::uint64_t(1) << (qubit_count - 1 - qubit);
    for (Eigen::Index a = 0; a < m.rows(); ++a) {
        if (std::uint64_t(a) & bit) continue;
        const Eigen::Index b = static_cast<Eigen::Index>(std::uint64_t(a) | bit);
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const complex va = m(a, c);
            const complex vb = m(b, c);
            m(a, c) = u(0, 0) * va + u(0, 1) * vb;
            m(b, c) = u(1, 0) * va + u(1, 1) * vb;
        }
    }
}

}  // namespace

void apply_single_qubit(StateVector& state, int qubit, const Eigen::Matrix2cd& u) {
    if (qubit < 0 || qubit >= state.qubit_count()) {
        throw DimensionError("apply_single_qubit: qubit index out of range");
    }
    const std::uint64_t bit = std::uint64_t(1) << (state.qubit_count() - 1 - qubit);
    auto& amp = state.amplitudes();
    for (Eigen::Index a = 0; a < amp.size(); ++a) {
        if (std::uint64_t(a) & bit) continue;
        const Eigen::Index b = static_cast<Eigen::Index>(std::uint64_t(a) | bit);
        const complex va = amp(a);
        const complex vb = amp(b);
        amp(a) = u(0, 0) * va + u(0, 1) * vb;
        amp(b) = u(1, 0) * va + u(1, 1) * vb;
    }
    state.check_norm();
}

void apply_single_qubit(DensityMatrix& rho, int qubit, const Eigen::Matrix2cd& u) {
    if (qubit < 0 || qubit >= rho.qubit_count()) {
        throw DimensionError("apply_single_qubit: qubit index out of range");
    }
    Eigen::MatrixXcd t = rho.entries();
    left_apply_single(t, rho.qubit_count(), qubit, u);
    Eigen::MatrixXcd ta = t.adjoint();
    left_apply_single(ta, rho.qubit_count(), qubit, u);
    rho.entries() = ta;
}

SpectralPropagator::SpectralPropagator(const PauliSum& h) : qubit_count_(h.qubit_count()) {
    if (!h.is_hermitian()) {
        throw ContractError("exact evolution requires a Hermitian Hamiltonian");
    }
    if (qubit_count_ > kMaxExactEvolveQubits) {
        throw CapacityError("exact dense evolution supports at most " +
                            std::to_string(kMaxExactEvolveQubits) + " qubits");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.to_dense());
    eigenvectors_ = solver.eigenvectors();
    eigenvalues_ = solver.eigenvalues();
}

StateVector SpectralPropagator::apply(const StateVector& state, double t) const {
    require_register(qubit_count_, state.qubit_count(), "evolve_exact");
    Eigen::VectorXcd coords = eigenvectors_.adjoint() * state.amplitudes();
    for (Eigen::Index k = 0; k < coords.size(); ++k) {
        coords(k) *= std::exp(complex(0, -eigenvalues_(k) * t));
    }
    return StateVector(qubit_count_, eigenvectors_ * coords);
}

StateVector evolve_exact(const StateVector& state, const PauliSum& h, double t) {
    return SpectralPropagator(h).apply(state, t);
}

complex expectation_complex(const StateVector& state, const PauliString& obs) {
    require_register(state.qubit_count(), obs.qubit_count(), "expectation");
    const StringAction act = make_action(obs);
    const auto& amp = state.amplitudes();
    complex acc = 0.0;
    for (Eigen::Index a = 0; a < amp.size(); ++a) {
        const std::uint64_t src = std::uint64_t(a) ^ act.flip_mask;
        acc += std::conj(amp(a)) * action_factor(act, src) *
               amp(static_cast<Eigen::Index>(src));
    }
    return acc;
}

complex expectation_complex(const DensityMatrix& rho, const PauliString& obs) {
    require_register(rho.qubit_count(), obs.qubit_count(), "expectation");
    const StringAction act = make_action(obs);
    const auto& m = rho.entries();
    complex acc = 0.0;
    for (Eigen::Index b = 0; b < m.rows(); ++b) {
        const std::uint64_t dst = std::uint64_t(b) ^ act.flip_mask;
        acc += m(b, static_cast<Eigen::Index>(dst)) * action_factor(act, std::uint64_t(b));
    }
    return acc;
}

double expectation(const StateVector& state, const PauliString& obs) {
    return checked_real(expectation_complex(state, obs), "expectation");
}

double expectation(const DensityMatrix& rho, const PauliString& obs) {
    return checked_real(expectation_complex(rho, obs), "expectation");
}

double expectation(const StateVector& state, const PauliSum& obs) {
    require_symbolically_hermitian(obs, "expectation");
    complex acc = 0.0;
    for (const auto& t : obs.terms()) {
        acc += t.coeff * expectation_complex(state, PauliString(t.axes));
    }
    return checked_real(acc, "expectation");
}

double expectation(const DensityMatrix& rho, const PauliSum& obs) {
    require_symbolically_hermitian(obs, "expectation");
    complex acc = 0.0;
    for (const auto& t : obs.terms()) {
        acc += t.coeff * expectation_complex(rho, PauliString(t.axes));
    }
    return checked_real(acc, "expectation");
}

SampleStats sample_observable(const StateVector& state, const PauliString& obs,
                              std::uint64_t shots, std::uint64_t seed) {
    return sample_at_probability(expectation(state, obs), shots, seed);
}

SampleStats sample_observable(const DensityMatrix& rho, const PauliString& obs,
                              std::uint64_t shots, std::uint64_t seed) {
    return sample_at_probability(expectation(rho, obs), shots, seed);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream));
}

}  // namespace eqs
