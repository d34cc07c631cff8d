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
//
// Acceptance suite: one self-contained check per release criterion, one
// pass/fail line each, non-zero exit if anything fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "eqs/experiment.hpp"
#include "eqs/verify.hpp"
#include "oracles.hpp"

using eqs::Axis;
using eqs::GateSequence;
using eqs::PauliString;
using eqs::PauliSum;
using eqs::StateVector;

namespace {

int g_failures = 0;

struct Criterion {
    std::string label;
    bool passed = true;
    double worst = 0.0;
    double limit = 0.0;
    std::string note;

    void absorb(double residual) { worst = std::max(worst, residual); }
    void require(bool ok, const std::string& why) {
        if (!ok) {
            passed = false;
            if (!why.empty()) note = note.empty() ? why : note + "; " + why;
        }
    }
};

void run(const std::string& label, double limit, void (*body)(Criterion&)) {
    Criterion criterion;
    criterion.label = label;
    criterion.limit = limit;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(criterion);
        if (limit > 0.0 && criterion.worst > limit) criterion.passed = false;
    } catch (const std::exception& e) {
        criterion.passed = false;
        criterion.note = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!criterion.passed) ++g_failures;
    std::printf("[%s] %s", criterion.passed ? "PASS" : "FAIL", label.c_str());
    if (limit > 0.0) std::printf(" (worst %.3e, limit %.0e)", criterion.worst, limit);
    if (!criterion.note.empty()) std::printf(" [%s]", criterion.note.c_str());
    std::printf(" (%.1f s)\n", seconds);
    std::fflush(stdout);
}

StateVector random_state(std::mt19937_64& rng, int n) {
    return StateVector(n, oracle::random_state_vector(rng, n));
}

PauliSum ghz_enlarged() {
    PauliSum ht(4);
    ht.add(1.0, PauliString::parse("I_Y_I_I"));
    ht.add(1.0, PauliString::parse("I_I_Y_I"));
    ht.add(1.0, PauliString::parse("I_I_I_Y"));
    ht.add(-2.0, PauliString::parse("Y_X_X_X"));
    return ht;
}

// 1. Embedding dynamics identity.
void criterion_embedding_dynamics(Criterion& criterion) {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const PauliSum h = oracle::random_hermitian_sum(rng, n, 4);
        const StateVector psi0 = random_state(rng, n);
        const eqs::SpectralPropagator simulated(h);
        const eqs::SpectralPropagator enlarged(eqs::embed_hamiltonian(h));
        const StateVector enlarged0 = eqs::embed_state(psi0);
        for (double t : {0.1, 1.0, 3.0}) {
            criterion.absorb((eqs::project(enlarged.apply(enlarged0, t)) -
                              simulated.apply(psi0, t).amplitudes())
                                 .norm());
        }
    }
}

// 2. Antilinear-expectation identity.
void criterion_antilinear_identity(Criterion& criterion) {
    std::mt19937_64 rng(102);
    std::uniform_int_distribution<int> sign(0, 1);
    int done = 0;
    while (done < 1000) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const StateVector psi = random_state(rng, n);
        PauliSum theta(n);
        const int terms = 1 + static_cast<int>(rng() % 3);
        for (int k = 0; k < terms; ++k) {
            theta.add(sign(rng) ? 1.0 : -1.0, oracle::random_string(rng, n));
        }
        if (theta.term_count() == 0) continue;
        ++done;
        const eqs::complex embedded =
            eqs::antilinear_expectation(eqs::embed_state(psi), theta);
        const eqs::complex direct =
            oracle::antilinear_direct(psi.amplitudes(), oracle::dense_sum(theta));
        criterion.absorb(std::abs(embedded - direct));
    }
}

// 3. Compiler soundness, exhaustive over 2..5-qubit axis patterns.
void criterion_compiler_soundness(Criterion& criterion) {
    const double angle = 0.477;
    for (int n = 2; n <= 5; ++n) {
        for (int code = 0; code < (1 << (2 * n)); ++code) {
            std::vector<Axis> axes;
            int weight = 0;
            for (int q = 0; q < n; ++q) {
                const auto a = static_cast<Axis>((code >> (2 * q)) & 3);
                axes.push_back(a);
                weight += (a != Axis::I);
            }
            if (weight < 2) continue;
            const PauliString p(axes);
            const Eigen::MatrixXcd compiled =
                eqs::dense_unitary(eqs::compile_pauli_exponential(p, angle));
            const Eigen::MatrixXcd exact =
                oracle::expm_minus_i_ht(oracle::dense_string(p), angle);
            criterion.absorb(oracle::phase_distance(exact, compiled));
        }
    }
}

// 4. Measurement-protocol soundness (symbolic, no tolerance).
void criterion_protocol_soundness(Criterion& criterion) {
    // Full-support worked example: one evolution, head readout.
    const auto full = eqs::plan_measurement(PauliString::parse("Y_X_X_X"));
    criterion.require(full.generators.size() == 1 &&
                          full.generators[0].str() == "X_X_X_X" &&
                          full.observable.str() == "Z_I_I_I" && full.sign == 1.0,
                      "full-support worked example");

    // Padded even correlation: two commuting full-weight generators, each
    // anticommuting with the two-qubit readout, reproducing the target.
    const auto even = eqs::plan_measurement(PauliString::parse("Y_X_X_X_I_I"));
    bool even_ok = even.generators.size() == 2 &&
                   even.observable.str() == "Y_X_I_I_I_I" &&
                   eqs::commutes(even.generators[0], even.generators[1]);
    for (const auto& g : even.generators) {
        even_ok = even_ok && !eqs::commutes(g, even.observable) && g.weight() == 6;
    }
    even_ok = even_ok &&
              eqs::conjugated_observable(even) ==
                  PauliString(even.target.axes(), even.sign < 0 ? 2 : 0);
    criterion.require(even_ok, "padded even-correlation example");

    // The concurrence readouts: one YYY evolution, two head observables.
    const auto cz = eqs::plan_measurement(PauliString::parse("Z_Y_Y"));
    const auto cx = eqs::plan_measurement(PauliString::parse("X_Y_Y"));
    criterion.require(cz.generators.size() == 1 &&
                          cz.generators[0].str() == "Y_Y_Y" &&
                          cz.observable.str() == "X_I_I" &&
                          cx.generators.size() == 1 &&
                          cx.generators[0].str() == "Y_Y_Y" &&
                          cx.observable.str() == "Z_I_I",
                      "concurrence readout example");

    // Symbolic conjugation reproduces every random target exactly.
    std::mt19937_64 rng(104);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const PauliString target = oracle::random_string(rng, n);
        const auto plan = eqs::plan_measurement(target);
        if (plan.generators.empty()) {
            criterion.require(
                plan.observable == target.unphased() && target.weight() <= 2,
                "direct-readout shortcut");
            continue;
        }
        const PauliString conj = eqs::conjugated_observable(plan);
        const PauliString expected(target.axes(),
                                   target.iphase_power() + (plan.sign < 0 ? 2 : 0));
        criterion.require(conj == expected, "random-target conjugation");
    }
}

// 5. Monotone reference values through both exact paths.
void criterion_monotone_values(Criterion& criterion) {
    Eigen::VectorXcd bell_amp = Eigen::VectorXcd::Zero(4);
    bell_amp(0) = bell_amp(3) = 1.0 / std::sqrt(2.0);
    const StateVector bell(2, bell_amp);
    Eigen::VectorXcd ghz_amp = Eigen::VectorXcd::Zero(8);
    ghz_amp(0) = ghz_amp(7) = 1.0 / std::sqrt(2.0);
    const StateVector ghz(3, ghz_amp);
    Eigen::VectorXcd w_amp = Eigen::VectorXcd::Zero(8);
    w_amp(1) = w_amp(2) = w_amp(4) = 1.0 / std::sqrt(3.0);
    const StateVector w(3, w_amp);

    const auto conc = eqs::concurrence_spec();
    const auto tangle = eqs::three_tangle_spec();
    const struct {
        const StateVector* state;
        const eqs::MonotoneSpec* spec;
        double expected;
    } cases[] = {
        {&bell, &conc, 1.0}, {nullptr, &conc, 0.0},  // nullptr = |0...0>
        {&ghz, &tangle, 1.0}, {&w, &tangle, 0.0},    {nullptr, &tangle, 0.0},
    };
    for (const auto& c : cases) {
        const StateVector state =
            c.state != nullptr ? *c.state : StateVector(c.spec->qubit_count());
        criterion.absorb(std::abs(eqs::evaluate_direct(state, *c.spec) - c.expected));
        criterion.absorb(
            std::abs(eqs::evaluate_embedded_exact(eqs::embed_state(state), *c.spec) -
                     c.expected));
    }
}

// 6. Depolarizing contraction, mitigation, and the sampling budget.
void criterion_noise_mitigation(Criterion& criterion) {
    const GateSequence circuit = eqs::compile_evolution(ghz_enlarged(), 0.8, 5);
    const double eps = 0.97;
    const int n = circuit.gate_count({});
    eqs::NoiseModel model;
    model.epsilon = eps;

    eqs::DensityMatrix noisy(4), ideal(4);
    eqs::run_sequence(noisy, circuit, model);
    eqs::apply_sequence(ideal, circuit);

    const double scale = std::pow(eps, n);
    double worst_contraction = 0.0;
    double worst_mitigation = 0.0;
    for (int code = 1; code < 256; ++code) {  // every non-identity 4-qubit string
        std::vector<Axis> axes;
        for (int q = 0; q < 4; ++q) {
            axes.push_back(static_cast<Axis>((code >> (2 * q)) & 3));
        }
        const PauliString obs(axes);
        if (obs.is_identity()) continue;
        const double ideal_value = eqs::expectation(ideal, obs);
        const double noisy_value = eqs::expectation(noisy, obs);
        worst_contraction =
            std::max(worst_contraction, std::abs(noisy_value - scale * ideal_value));
        worst_mitigation =
            std::max(worst_mitigation,
                     std::abs(eqs::mitigate(noisy_value, eps, n) - ideal_value));
    }
    criterion.absorb(worst_contraction);
    criterion.require(worst_contraction <= 1e-10, "contraction law");
    criterion.require(worst_mitigation <= 1e-9, "mitigation recovery");

    // Sampling budget: shots = ceil(N_emb(k)) puts the mitigated estimate
    // within 4k of the ideal value in at least 95 of 100 seeded trials.
    const double k = 0.02;
    const auto shots =
        static_cast<std::uint64_t>(std::ceil(eqs::repetitions_embedding(k, eps, n)));
    const PauliString obs = PauliString::parse("Z_I_I_I");
    const double ideal_value = eqs::expectation(ideal, obs);
    int within = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto stats =
            eqs::sample_observable(noisy, obs, shots, eqs::mix_seed(106, trial));
        if (std::abs(eqs::mitigate(stats.mean, eps, n) - ideal_value) <= 4.0 * k) {
            ++within;
        }
    }
    criterion.require(within >= 95,
                      "sampling budget (" + std::to_string(within) + "/100)");
}

// 7. Repetition-cost ratio.
void criterion_cost_ratio(Criterion& criterion) {
    eqs::CostInputs inputs;
    inputs.k = 0.01;
    inputs.epsilon = 0.97;
    inputs.delta = 0.98;
    inputs.l = 2;
    double previous = 1e300;
    for (int nq = 2; nq <= 25; ++nq) {
        inputs.n_qubits = nq;
        inputs.n = nq;
        const double ratio = eqs::cost_ratio(inputs);
        criterion.require(ratio < 1.0, "ratio below one");
        criterion.require(ratio < previous, "strictly decreasing");
        previous = ratio;
        const double quotient =
            static_cast<double>(inputs.l) *
            eqs::repetitions_embedding(inputs.k, inputs.epsilon, nq) /
            eqs::repetitions_tomography(inputs.k, inputs.delta, nq, nq);
        criterion.absorb(std::abs(ratio / quotient - 1.0));
    }
}

// 8. Qualitative reproduction of the reference experiment family.
void criterion_experiment_family(Criterion& criterion) {
    eqs::RunOptions options;
    options.workers = 2;
    options.write_files = false;

    // (a) Noiseless five-step curve: oscillation, a first-order error bound
    // measured from the compiled state itself, improvement at twenty steps.
    eqs::ExperimentConfig config = eqs::preset_config("fig2a");
    config.epsilons = {1.0};
    const auto five = eqs::run_simulate(config, options);
    config.trotter_steps = 20;
    const auto twenty = eqs::run_simulate(config, options);

    double ideal_max = 0.0, ideal_min = 1e300;
    int direction_changes = 0;
    double previous_delta = 0.0;
    for (std::size_t k = 0; k < five.rows.size(); ++k) {
        ideal_max = std::max(ideal_max, five.rows[k].ideal);
        ideal_min = std::min(ideal_min, five.rows[k].ideal);
        if (k > 0) {
            const double delta = five.rows[k].ideal - five.rows[k - 1].ideal;
            if (delta * previous_delta < 0.0) ++direction_changes;
            if (delta != 0.0) previous_delta = delta;
        }
    }
    criterion.require(ideal_max >= 0.8 && ideal_min <= 1e-6 && direction_changes >= 4,
                      "oscillating reference curve");

    // |tau3(compiled) - tau3(exact)| <= 12 * ||state error|| for the
    // three-component absolute-sum-of-squares combine.
    const PauliSum ht = ghz_enlarged();
    const eqs::SpectralPropagator exact(ht);
    double err5 = 0.0, err20 = 0.0, bound5 = 0.0;
    for (const auto& row : five.rows) {
        StateVector compiled(4);
        eqs::apply_sequence(compiled,
                            eqs::compile_evolution(ht, row.t, row.trotter_steps));
        const double state_error =
            (compiled.amplitudes() - exact.apply(StateVector(4), row.t).amplitudes())
                .norm();
        bound5 = std::max(bound5, 12.0 * state_error + 1e-9);
        err5 = std::max(err5, std::abs(row.value - row.ideal));
    }
    for (const auto& row : twenty.rows) {
        err20 = std::max(err20, std::abs(row.value - row.ideal));
    }
    criterion.require(err5 <= bound5, "five-step curve within first-order error");
    criterion.require(err20 < err5, "twenty-step error strictly smaller");

    // (b) Depolarizing sweep: pure amplitude rescaling, ordered by fidelity.
    const auto sweep = eqs::run_simulate(eqs::preset_config("fig2a"), options);
    double previous_peak = 1e300;
    for (const auto& [eps, d] : sweep.distortion) {
        criterion.require(d <= 1e-9, "amplitude-only depolarizing shape");
        double peak = 0.0;
        for (const auto& row : sweep.rows) {
            if (row.noise == eps) peak = std::max(peak, row.value);
        }
        criterion.require(peak < previous_peak + 1e-12, "amplitude ordered by fidelity");
        previous_peak = peak;
    }

    // (c) Crosstalk sweep: the shape itself distorts, more for stronger
    // coupling to the neighbors.
    const auto cross = eqs::run_crosstalk(eqs::preset_config("fig2d"), options);
    double d001 = -1.0, d005 = -1.0, d0 = -1.0;
    for (const auto& [delta0, d] : cross.distortion) {
        if (delta0 == 0.0) d0 = d;
        if (delta0 == 0.01) d001 = d;
        if (delta0 == 0.05) d005 = d;
    }
    criterion.require(d0 >= 0.0 && d0 <= 1e-12, "zero crosstalk is shape-exact");
    criterion.require(d001 > 1e-9 && d005 > d001, "distortion grows with strength");
}

}  // namespace

int main() {
    std::printf("eqsim acceptance suite\n");
    run("criterion 1: embedding dynamics identity", 1e-10, criterion_embedding_dynamics);
    run("criterion 2: antilinear expectation identity", 1e-12,
        criterion_antilinear_identity);
    run("criterion 3: compiler soundness (exhaustive 2-5 qubits)", 1e-10,
        criterion_compiler_soundness);
    run("criterion 4: measurement-protocol soundness (symbolic)", 0.0,
        criterion_protocol_soundness);
    run("criterion 5: monotone reference values (both paths)", 1e-10,
        criterion_monotone_values);
    run("criterion 6: contraction, mitigation, sampling budget", 1e-10,
        criterion_noise_mitigation);
    run("criterion 7: repetition-cost ratio", 1e-12, criterion_cost_ratio);
    run("criterion 8: reference experiment family (a-c)", 0.0,
        criterion_experiment_family);
    if (g_failures == 0) {
        std::printf("acceptance: all 8 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return 1;
}
