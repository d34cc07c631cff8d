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

#include "eqs/monotones.hpp"

namespace eqs {

/// A config-driven time-series experiment: evolve the embedded model,
/// extract a monotone through the measurement protocol, compare with the
/// exact-evolution oracle.
struct ExperimentConfig {
    PauliSum hamiltonian = PauliSum(1);  // simulated space, Hermitian
    Eigen::VectorXcd initial_amplitudes; // simulated space, normalized
    double t_start = 0.0;
    double t_end = 1.0;
    int points = 2;
    int trotter_steps = 1;
    MonotoneSpec monotone;
    std::vector<double> epsilons = {1.0};  // depolarizing sweep (simulate)
    std::vector<double> delta0s = {0.0};   // crosstalk sweep (crosstalk)
    bool mitigate = false;
    bool exact_shots = true;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::string output_path = "out.csv";

    int qubit_count() const { return hamiltonian.qubit_count(); }
    void validate() const;
};

/// Parse the flat key-value config format (sections in brackets, one
/// `key = value` per line, '#' comments). Errors carry line numbers.
/// `base_dir` resolves relative monotone file references.
ExperimentConfig parse_experiment_config(const std::string& text,
                                         const std::string& base_dir = ".");
ExperimentConfig load_experiment_config(const std::string& path);

/// Built-in preset experiments; files with identical content ship under
/// presets/. fig2a/fig2b/fig2c sweep the gate fidelity at 5/10/20 product
/// steps; fig2d sweeps the crosstalk strength at 5 steps.
bool is_crosstalk_preset(const std::string& name);
ExperimentConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

struct TimeSeriesRow {
    double t = 0.0;
    double noise = 0.0;  // epsilon (simulate) or delta0 (crosstalk)
    int trotter_steps = 0;
    double value = 0.0;
    double stderr_of_mean = 0.0;
    double ideal = 0.0;  // exact-evolution direct-oracle reference
};

struct TimeSeriesResult {
    std::vector<TimeSeriesRow> rows;  // sorted by (noise, t)
    /// Shape distortion per swept noise value: the L2 distance between the
    /// curve (rescaled by its least-squares amplitude fit against the
    /// noiseless protocol curve) and that reference, normalized.
    std::vector<std::pair<double, double>> distortion;
    std::string csv;             // exactly what run() writes to output_path
    std::string distortion_csv;  // companion table (crosstalk runs)
};

struct RunOptions {
    int workers = 0;  // 0 = hardware concurrency
    bool write_files = true;
};

/// Fidelity sweep: depolarizing noise on the preparation circuit, fresh
/// compilation per grid point, protocol-path extraction, oracle column.
TimeSeriesResult run_simulate(const ExperimentConfig& config,
                              const RunOptions& options = {});

/// Crosstalk sweep: depolarizing disabled, unitary crosstalk enabled at
/// each delta0; also writes the shape-distortion table.
TimeSeriesResult run_crosstalk(const ExperimentConfig& config,
                               const RunOptions& options = {});

struct CostConfig {
    double k = 0.01;
    double epsilon = 0.97;
    double delta = 0.98;
    int l = 2;
    int n_qubits_max = 12;
    std::string output_path = "costs.csv";
};

struct CostResult {
    std::string csv;
    int crossover_n_qubits = -1;  // first register size with ratio < 1
};

/// Repetition-cost table over the register size, n = n_qubits coupling.
CostResult run_costs(const CostConfig& config, bool write_file = true);

/// Least-squares amplitude alignment distance between two curves.
double curve_distortion(const std::vector<double>& curve,
                        const std::vector<double>& reference);

std::string format_double_17(double value);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace eqs
