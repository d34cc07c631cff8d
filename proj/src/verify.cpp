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

#include "eqs/verify.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "eqs/embedding.hpp"
#include "eqs/monotones.hpp"

namespace eqs {

namespace {

PauliString random_string(Rng& rng, int n, bool allow_identity = true) {
    std::uniform_int_distribution<int> dist(allow_identity ? 0 : 1, 3);
    while (true) {
        std::vector<Axis> axes;
        bool all_identity = true;
        for (int k = 0; k < n; ++k) {
            const auto a = static_cast<Axis>(dist(rng));
            all_identity &= (a == Axis::I);
            axes.push_back(a);
        }
        if (!all_identity) return PauliString(std::move(axes));
    }
}

PauliSum random_hermitian(Rng& rng, int n, int terms) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    PauliSum sum(n);
    for (int k = 0; k < terms; ++k) sum.add(coeff(rng), random_string(rng, n));
    return sum;
}

StateVector random_state(Rng& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd psi(Eigen::Index(1) << n);
    for (Eigen::Index k = 0; k < psi.size(); ++k) {
        psi(k) = complex(gauss(rng), gauss(rng));
    }
    psi.normalize();
    return StateVector(n, psi);
}

PauliSum ghz_enlarged() {
    PauliSum ht(4);
    ht.add(1.0, PauliString::parse("I_Y_I_I"));
    ht.add(1.0, PauliString::parse("I_I_Y_I"));
    ht.add(1.0, PauliString::parse("I_I_I_Y"));
    ht.add(-2.0, PauliString::parse("Y_X_X_X"));
    return ht;
}

VerifySuiteResult embedding_dynamics_suite(Rng& rng) {
    VerifySuiteResult suite{"embedding-dynamics", false, 0.0, 1e-10, ""};
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const PauliSum h = random_hermitian(rng, n, 4);
        const StateVector psi0 = random_state(rng, n);
        const SpectralPropagator small(h);
        const SpectralPropagator big(embed_hamiltonian(h));
        const StateVector enlarged0 = embed_state(psi0);
        for (double t : {0.1, 1.0, 3.0}) {
            const double residual =
                (project(big.apply(enlarged0, t)) - small.apply(psi0, t).amplitudes())
                    .norm();
            suite.worst_residual = std::max(suite.worst_residual, residual);
        }
    }
    suite.detail = "50 random Hamiltonians (up to 3 qubits), t in {0.1, 1, 3}";
    suite.passed = suite.worst_residual <= suite.limit;
    return suite;
}

VerifySuiteResult antilinear_identity_suite(Rng& rng) {
    VerifySuiteResult suite{"antilinear-identity", false, 0.0, 1e-12, ""};
    std::uniform_int_distribution<int> sign(0, 1);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const StateVector psi = random_state(rng, n);
        PauliSum theta(n);
        const int terms = 1 + static_cast<int>(rng() % 3);
        for (int k = 0; k < terms; ++k) {
            theta.add(sign(rng) ? 1.0 : -1.0, random_string(rng, n));
        }
        if (theta.term_count() == 0) continue;
        // Direct antilinear form on the simulated register.
        const Eigen::VectorXcd conjugated = psi.amplitudes().conjugate();
        complex direct = 0.0;
        for (const auto& term : theta.terms()) {
            direct += term.coeff * (psi.amplitudes().adjoint() *
                                    apply_string(PauliString(term.axes), conjugated))(0);
        }
        const complex embedded = antilinear_expectation(embed_state(psi), theta);
        suite.worst_residual = std::max(suite.worst_residual, std::abs(embedded - direct));
    }
    suite.detail = "1000 random state/operator pairs";
    suite.passed = suite.worst_residual <= suite.limit;
    return suite;
}

VerifySuiteResult compiler_soundness_suite(Rng& rng) {
    VerifySuiteResult suite{"compiler-soundness", false, 0.0, 1e-10, ""};
    std::uniform_real_distribution<double> angle(-2.0, 2.0);
    auto check = [&](const PauliString& p, double a) {
        const GateSequence seq = compile_pauli_exponential(p, a);
        Eigen::MatrixXcd u = dense_unitary(seq);
        // exact exponential of the string
        const Eigen::MatrixXcd target = [&] {
            Eigen::MatrixXcd dense = p.to_dense();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
            Eigen::VectorXcd phases(solver.eigenvalues().size());
            for (Eigen::Index k = 0; k < phases.size(); ++k) {
                phases(k) = std::exp(complex(0, -solver.eigenvalues()(k) * a));
            }
            return (solver.eigenvectors() * phases.asDiagonal() *
                    solver.eigenvectors().adjoint())
                .eval();
        }();
        // align global phase on the largest entry
        Eigen::Index r = 0, c = 0;
        target.cwiseAbs().maxCoeff(&r, &c);
        const complex ratio = target(r, c) / u(r, c);
        const double residual = (target - ratio * u).cwiseAbs().maxCoeff();
        suite.worst_residual = std::max(suite.worst_residual, residual);
    };
    for (int code = 0; code < 16; ++code) {  // exhaustive two-qubit patterns
        const PauliString p(
            {static_cast<Axis>(code / 4), static_cast<Axis>(code % 4)});
        if (p.weight() < 2) continue;
        check(p, 0.77);
    }
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 3);
        const PauliString p = random_string(rng, n);
        if (p.weight() < 2) continue;
        check(p, angle(rng));
    }
    suite.detail = "exhaustive 2-qubit patterns plus random strings up to 5 qubits";
    suite.passed = suite.worst_residual <= suite.limit;
    return suite;
}

VerifySuiteResult contraction_suite(Rng& rng, int exponent_offset) {
    VerifySuiteResult suite{"epsilon-contraction", false, 0.0, 1e-9, ""};
    const GateSequence circuit = compile_evolution(ghz_enlarged(), 0.8, 5);
    const double eps = 0.97;
    NoiseModel model;
    model.epsilon = eps;
    DensityMatrix noisy(4), ideal(4);
    run_sequence(noisy, circuit, model);
    apply_sequence(ideal, circuit);
    const int n = circuit.gate_count({});
    const double scale = std::pow(eps, n);
    for (int trial = 0; trial < 30; ++trial) {
        const PauliString obs = random_string(rng, 4);
        const double contracted =
            std::abs(expectation(noisy, obs) - scale * expectation(ideal, obs));
        const double mitigated = std::abs(
            mitigate(expectation(noisy, obs), eps, n + exponent_offset) -
            expectation(ideal, obs));
        suite.worst_residual =
            std::max({suite.worst_residual, contracted, mitigated});
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "compiled 5-step circuit, eps=%.2f, n=%d, 30 observables", eps,
                  n + exponent_offset);
    suite.detail = detail;
    suite.passed = suite.worst_residual <= suite.limit;
    return suite;
}

VerifySuiteResult path_equivalence_suite(Rng& rng) {
    VerifySuiteResult suite{"path-equivalence", false, 0.0, 1e-10, ""};
    for (const auto& spec : {concurrence_spec(), three_tangle_spec()}) {
        for (int trial = 0; trial < 200; ++trial) {
            const StateVector psi = random_state(rng, spec.qubit_count());
            const double residual = std::abs(
                evaluate_direct(psi, spec) -
                evaluate_embedded_exact(embed_state(psi), spec));
            suite.worst_residual = std::max(suite.worst_residual, residual);
        }
    }
    suite.detail = "200 random states per shipped monotone";
    suite.passed = suite.worst_residual <= suite.limit;
    return suite;
}

}  // namespace

bool VerifyReport::all_passed() const {
    for (const auto& suite : suites) {
        if (!suite.passed) return false;
    }
    return true;
}

VerifyReport run_verify(const VerifyOptions& options) {
    VerifyReport report;
    Rng rng(options.seed);
    report.suites.push_back(embedding_dynamics_suite(rng));
    report.suites.push_back(antilinear_identity_suite(rng));
    report.suites.push_back(compiler_soundness_suite(rng));
    report.suites.push_back(contraction_suite(rng, options.mitigation_exponent_offset));
    report.suites.push_back(path_equivalence_suite(rng));
    return report;
}

std::string format_verify_report(const VerifyReport& report) {
    std::string out;
    for (const auto& suite : report.suites) {
        char line[256];
        std::snprintf(line, sizeof(line), "[%s] %-22s worst=%.3e limit=%.0e  %s\n",
                      suite.passed ? "PASS" : "FAIL", suite.name.c_str(),
                      suite.worst_residual, suite.limit, suite.detail.c_str());
        out += line;
    }
    out += report.all_passed() ? "verification: all suites passed\n"
                               : "verification: FAILURES present\n";
    return out;
}

}  // namespace eqs
