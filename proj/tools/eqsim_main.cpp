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

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "eqs/experiment.hpp"
#include "eqs/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitCapacityError = 3;

struct CommonArgs {
    std::string config_path;
    std::string preset;
    std::optional<std::uint64_t> seed;
    std::string out;
    int workers = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "Experiment config file");
    cmd->add_option("--preset", args.preset,
                    "Built-in preset (fig2a, fig2b, fig2c, fig2d)");
    cmd->add_option("--seed", args.seed, "Override the config seed");
    cmd->add_option("--out", args.out, "Override the output path");
    cmd->add_option("--workers", args.workers, "Worker threads (0 = all cores)");
}

eqs::ExperimentConfig resolve_config(const CommonArgs& args, bool crosstalk_command) {
    if (args.config_path.empty() == args.preset.empty()) {
        throw eqs::ConfigError("give exactly one of --config or --preset");
    }
    eqs::ExperimentConfig config = args.preset.empty()
                                       ? eqs::load_experiment_config(args.config_path)
                                       : eqs::preset_config(args.preset);
    if (!args.preset.empty() &&
        eqs::is_crosstalk_preset(args.preset) != crosstalk_command) {
        throw eqs::ConfigError(std::string("preset '") + args.preset +
                               "' belongs to the " +
                               (eqs::is_crosstalk_preset(args.preset) ? "crosstalk"
                                                                      : "simulate") +
                               " subcommand");
    }
    if (args.seed) config.seed = *args.seed;
    if (!args.out.empty()) config.output_path = args.out;
    return config;
}

int dispatch(int argc, char** argv) {
    CLI::App app{
        "eqsim: embedded-register simulation of entanglement-monotone experiments "
        "on a trapped-ion gate set"};
    app.require_subcommand(1);

    CommonArgs sim_args, cross_args, compile_args;
    double compile_time = 1.0;
    bool compile_time_set = false;

    auto* simulate = app.add_subcommand(
        "simulate", "Fidelity sweep of a monotone time series (CSV)");
    add_common(simulate, sim_args);

    auto* crosstalk = app.add_subcommand(
        "crosstalk", "Crosstalk sweep of a monotone time series (CSV + distortion)");
    add_common(crosstalk, cross_args);

    auto* costs = app.add_subcommand(
        "costs", "Repetition-cost comparison against full tomography (CSV)");
    eqs::CostConfig cost_config;
    costs->add_option("--k", cost_config.k, "Target standard error")
        ->capture_default_str();
    costs->add_option("--epsilon", cost_config.epsilon, "Embedding per-gate fidelity")
        ->capture_default_str();
    costs->add_option("--delta", cost_config.delta, "One-to-one per-gate fidelity")
        ->capture_default_str();
    costs->add_option("--l", cost_config.l, "Enlarged-space observables per monotone")
        ->capture_default_str();
    costs->add_option("--nmax", cost_config.n_qubits_max, "Largest register size")
        ->capture_default_str();
    costs->add_option("--out", cost_config.output_path, "Output CSV path")
        ->capture_default_str();

    auto* verify = app.add_subcommand(
        "verify", "Run the cross-module invariant suites (exit 1 on failure)");
    eqs::VerifyOptions verify_options;
    verify->add_option("--seed", verify_options.seed, "Suite seed")
        ->capture_default_str();
    verify
        ->add_option("--inject-mitigation-offset",
                     verify_options.mitigation_exponent_offset,
                     "Self-test: corrupt the mitigation exponent by this much")
        ->capture_default_str();

    auto* compile = app.add_subcommand(
        "compile", "Dump the compiled enlarged-register gate sequence");
    add_common(compile, compile_args);
    compile->add_option("--time", compile_time, "Evolution time")
        ->each([&](const std::string&) { compile_time_set = true; });

    CLI11_PARSE(app, argc, argv);

    if (simulate->parsed()) {
        const auto config = resolve_config(sim_args, false);
        eqs::RunOptions options;
        options.workers = sim_args.workers;
        const auto result = eqs::run_simulate(config, options);
        std::printf("wrote %zu rows to %s\n", result.rows.size(),
                    config.output_path.c_str());
        return kExitOk;
    }
    if (crosstalk->parsed()) {
        const auto config = resolve_config(cross_args, true);
        eqs::RunOptions options;
        options.workers = cross_args.workers;
        const auto result = eqs::run_crosstalk(config, options);
        std::printf("wrote %zu rows to %s\n", result.rows.size(),
                    config.output_path.c_str());
        for (const auto& [delta0, d] : result.distortion) {
            std::printf("delta0=%g shape distortion D=%.6g\n", delta0, d);
        }
        std::printf("distortion table: %s.distortion.csv\n", config.output_path.c_str());
        return kExitOk;
    }
    if (costs->parsed()) {
        const auto result = eqs::run_costs(cost_config);
        if (result.crossover_n_qubits > 0) {
            std::printf("embedding wins (ratio < 1) from n_qubits=%d on\n",
                        result.crossover_n_qubits);
        } else {
            std::printf("no crossover up to n_qubits=%d\n", cost_config.n_qubits_max);
        }
        std::printf("wrote %s\n", cost_config.output_path.c_str());
        return kExitOk;
    }
    if (verify->parsed()) {
        const auto report = eqs::run_verify(verify_options);
        std::fputs(eqs::format_verify_report(report).c_str(), stdout);
        return report.all_passed() ? kExitOk : kExitVerifyFailure;
    }
    if (compile->parsed()) {
        const auto config = resolve_config(compile_args, false);
        const double t = compile_time_set ? compile_time : config.t_end;
        const auto sequence = eqs::compile_evolution(
            eqs::embed_hamiltonian(config.hamiltonian), t, config.trotter_steps);
        const std::string text = eqs::dump_gate_sequence(sequence);
        if (compile_args.out.empty()) {
            std::fputs(text.c_str(), stdout);
        } else {
            eqs::write_text_file(compile_args.out, text);
            std::printf("wrote %d ops (gate count %d) to %s\n",
                        static_cast<int>(sequence.ops().size()),
                        sequence.gate_count({}), compile_args.out.c_str());
        }
        return kExitOk;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const eqs::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const eqs::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacityError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailure;
    }
}
