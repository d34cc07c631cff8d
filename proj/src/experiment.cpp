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

#include "eqs/experiment.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace eqs {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct ConfigEntry {
    int line;
    std::string section;
    std::string key;
    std::string value;
    mutable bool used = false;
};

std::vector<ConfigEntry> parse_entries(const std::string& text) {
    std::vector<ConfigEntry> entries;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']') {
                throw ConfigError("unterminated section header", line_no);
            }
            section = trim(body.substr(1, body.size() - 2));
            if (section.empty()) throw ConfigError("empty section name", line_no);
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected 'key = value'", line_no);
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line_no);
        if (section.empty()) {
            throw ConfigError("key '" + key + "' appears before any [section]", line_no);
        }
        entries.push_back({line_no, section, key, value});
    }
    return entries;
}

const ConfigEntry* find_entry(const std::vector<ConfigEntry>& entries,
                              const std::string& section, const std::string& key) {
    for (const auto& e : entries) {
        if (e.section == section && e.key == key) {
            e.used = true;
            return &e;
        }
    }
    return nullptr;
}

const ConfigEntry& require_entry(const std::vector<ConfigEntry>& entries,
                                 const std::string& section, const std::string& key) {
    const ConfigEntry* e = find_entry(entries, section, key);
    if (e == nullptr) {
        throw ConfigError("missing required key [" + section + "] " + key);
    }
    return *e;
}

double parse_number(const ConfigEntry& e) {
    try {
        std::size_t used = 0;
        const double v = std::stod(e.value, &used);
        if (trim(e.value.substr(used)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("expected a number for '" + e.key + "', got '" + e.value + "'",
                      e.line);
}

int parse_int(const ConfigEntry& e) {
    const double v = parse_number(e);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
        throw ConfigError("expected an integer for '" + e.key + "'", e.line);
    }
    return i;
}

std::vector<double> parse_number_list(const ConfigEntry& e) {
    std::vector<double> values;
    std::stringstream in(e.value);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("bad number '" + item + "' in '" + e.key + "'", e.line);
        }
    }
    if (values.empty()) throw ConfigError("empty list for '" + e.key + "'", e.line);
    return values;
}

bool parse_flag(const ConfigEntry& e) {
    if (e.value == "on" || e.value == "true" || e.value == "1") return true;
    if (e.value == "off" || e.value == "false" || e.value == "0") return false;
    throw ConfigError("expected on/off for '" + e.key + "', got '" + e.value + "'",
                      e.line);
}

Eigen::VectorXcd parse_initial_state(const std::vector<ConfigEntry>& entries,
                                     int qubit_count) {
    const ConfigEntry* basis = find_entry(entries, "initial", "state");
    const ConfigEntry* amps = find_entry(entries, "initial", "amplitudes");
    const Eigen::Index dim = Eigen::Index(1) << qubit_count;
    if (basis != nullptr && amps != nullptr) {
        throw ConfigError("give either [initial] state or amplitudes, not both",
                          amps->line);
    }
    if (basis != nullptr) {
        std::string bits = basis->value;
        if (!bits.empty() && bits.front() == '|') bits = bits.substr(1);
        if (!bits.empty() && bits.back() == '>') bits.pop_back();
        if (static_cast<int>(bits.size()) != qubit_count) {
            throw ConfigError("basis state needs exactly " +
                                  std::to_string(qubit_count) + " bits",
                              basis->line);
        }
        std::uint64_t index = 0;
        for (char c : bits) {
            if (c != '0' && c != '1') {
                throw ConfigError("basis state bits must be 0 or 1", basis->line);
            }
            index = (index << 1) | static_cast<std::uint64_t>(c - '0');
        }
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
        psi(static_cast<Eigen::Index>(index)) = 1.0;
        return psi;
    }
    if (amps != nullptr) {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
        std::stringstream in(amps->value);
        std::string pair_text;
        Eigen::Index k = 0;
        while (std::getline(in, pair_text, ';')) {
            pair_text = trim(pair_text);
            if (pair_text.empty()) continue;
            if (k >= dim) throw ConfigError("too many amplitudes", amps->line);
            const auto comma = pair_text.find(',');
            try {
                if (comma == std::string::npos) {
                    psi(k) = std::stod(pair_text);
                } else {
                    psi(k) = complex(std::stod(pair_text.substr(0, comma)),
                                     std::stod(pair_text.substr(comma + 1)));
                }
            } catch (const std::exception&) {
                throw ConfigError("bad amplitude '" + pair_text + "'", amps->line);
            }
            ++k;
        }
        if (k != dim) {
            throw ConfigError("expected " + std::to_string(dim) + " amplitudes, got " +
                                  std::to_string(k),
                              amps->line);
        }
        const double norm = psi.norm();
        if (std::abs(norm - 1.0) > 1e-8) {
            throw ConfigError("initial amplitudes are not normalized", amps->line);
        }
        return psi / norm;
    }
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi(0) = 1.0;
    return psi;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string dirname_of(const std::string& path) {
    const auto slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

struct JobResult {
    double value = 0.0;
    double stderr_of_mean = 0.0;
};

TimeSeriesResult run_time_series(const ExperimentConfig& config,
                                 const RunOptions& options, bool crosstalk_mode) {
    config.validate();
    const PauliSum enlarged_h = embed_hamiltonian(config.hamiltonian);
    const StateVector psi0(config.qubit_count(), config.initial_amplitudes);
    const StateVector enlarged0 = embed_state(psi0);
    const SpectralPropagator reference(config.hamiltonian);

    std::vector<double> grid(static_cast<std::size_t>(config.points));
    for (int k = 0; k < config.points; ++k) {
        grid[static_cast<std::size_t>(k)] =
            config.t_start + (config.t_end - config.t_start) * k / (config.points - 1);
    }
    std::vector<double> ideal(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        ideal[k] = evaluate_direct(reference.apply(psi0, grid[k]), config.monotone);
    }

    // One extra internal sweep slot holds the noiseless protocol curve the
    // distortion metric is measured against.
    const std::vector<double>& sweep = crosstalk_mode ? config.delta0s : config.epsilons;
    const std::size_t curves = sweep.size() + 1;
    const std::size_t jobs = curves * grid.size();
    std::vector<JobResult> results(jobs);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&]() {
        while (true) {
            const std::size_t j = next.fetch_add(1);
            if (j >= jobs) return;
            {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (failure) return;
            }
            try {
                const std::size_t curve = j / grid.size();
                const std::size_t point = j % grid.size();
                const GateSequence circuit =
                    compile_evolution(enlarged_h, grid[point], config.trotter_steps);
                NoiseModel model;
                ProtocolOptions popts;
                popts.initial = &enlarged0;
                popts.mitigate = config.mitigate;
                if (!config.exact_shots) {
                    popts.shots = ShotSpec::sampled(config.shots, 0);
                    popts.seed = mix_seed(config.seed, j);
                }
                if (curve < sweep.size()) {
                    if (crosstalk_mode) {
                        model.depolarizing_enabled = false;
                        model.crosstalk_enabled = true;
                        model.delta0 = sweep[curve];
                    } else {
                        model.depolarizing_enabled = true;
                        model.epsilon = sweep[curve];
                    }
                    popts.noise = &model;
                }
                const Estimate estimate =
                    evaluate_embedded_protocol(circuit, config.monotone, popts);
                results[j] = {estimate.value, estimate.stderr_of_mean};
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    int workers = options.workers > 0
                      ? options.workers
                      : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    workers = std::min<int>(workers, static_cast<int>(jobs));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& thread : pool) thread.join();
    if (failure) std::rethrow_exception(failure);

    TimeSeriesResult out;
    const std::size_t ref_offset = sweep.size() * grid.size();
    std::vector<double> ref_curve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        ref_curve[k] = results[ref_offset + k].value;
    }
    for (std::size_t curve = 0; curve < sweep.size(); ++curve) {
        std::vector<double> values(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const JobResult& r = results[curve * grid.size() + k];
            values[k] = r.value;
            out.rows.push_back({grid[k], sweep[curve], config.trotter_steps, r.value,
                                r.stderr_of_mean, ideal[k]});
        }
        out.distortion.emplace_back(sweep[curve], curve_distortion(values, ref_curve));
    }

    const char* noise_column = crosstalk_mode ? "delta0" : "epsilon";
    std::string csv = "# eqsim timeseries v1 rng=";
    csv += kRngAlgorithm;
    csv += " seed=" + std::to_string(config.seed);
    csv += config.exact_shots ? " shots=exact" : " shots=" + std::to_string(config.shots);
    csv += std::string(" mitigate=") + (config.mitigate ? "on" : "off") + "\n";
    csv += std::string("t,") + noise_column + ",trotter_steps,value,stderr,ideal_value\n";
    for (const auto& row : out.rows) {
        csv += format_double_17(row.t) + "," + format_double_17(row.noise) + "," +
               std::to_string(row.trotter_steps) + "," + format_double_17(row.value) +
               "," + format_double_17(row.stderr_of_mean) + "," +
               format_double_17(row.ideal) + "\n";
    }
    out.csv = std::move(csv);

    std::string dcsv = "# eqsim distortion v1\n";
    dcsv += std::string(noise_column) + ",distortion\n";
    for (const auto& [noise, d] : out.distortion) {
        dcsv += format_double_17(noise) + "," + format_double_17(d) + "\n";
    }
    out.distortion_csv = std::move(dcsv);

    if (options.write_files) {
        write_text_file(config.output_path, out.csv);
        if (crosstalk_mode) {
            write_text_file(config.output_path + ".distortion.csv", out.distortion_csv);
        }
    }
    return out;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (!hamiltonian.is_hermitian()) {
        throw ConfigError("hamiltonian must be Hermitian");
    }
    if (!(t_end > t_start)) throw ConfigError("time grid must be strictly increasing");
    if (points < 2) throw ConfigError("time grid needs at least 2 points");
    if (trotter_steps < 1) throw ConfigError("trotter_steps must be >= 1");
    if (initial_amplitudes.size() != (Eigen::Index(1) << hamiltonian.qubit_count())) {
        throw ConfigError("initial state dimension does not match the Hamiltonian");
    }
    monotone.validate();
    if (monotone.qubit_count() != hamiltonian.qubit_count()) {
        throw ConfigError("monotone register size does not match the Hamiltonian");
    }
    for (double eps : epsilons) {
        if (!(eps > 0.0) || eps > 1.0) {
            throw ConfigError("epsilon values must be in (0,1]");
        }
    }
    for (double d : delta0s) {
        if (d < 0.0 || d > 0.5) throw ConfigError("delta0 values must be in [0,0.5]");
    }
    if (!exact_shots && shots == 0) throw ConfigError("shots must be positive");
}

ExperimentConfig parse_experiment_config(const std::string& text,
                                         const std::string& base_dir) {
    const auto entries = parse_entries(text);
    ExperimentConfig config;

    const ConfigEntry& terms = require_entry(entries, "hamiltonian", "terms");
    try {
        config.hamiltonian = parse_pauli_sum(terms.value);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("hamiltonian: ") + e.what(), terms.line);
    }

    config.t_start = parse_number(require_entry(entries, "time", "start"));
    config.t_end = parse_number(require_entry(entries, "time", "end"));
    config.points = parse_int(require_entry(entries, "time", "points"));
    config.trotter_steps =
        parse_int(require_entry(entries, "evolution", "trotter_steps"));

    const ConfigEntry* preset = find_entry(entries, "monotone", "preset");
    const ConfigEntry* file = find_entry(entries, "monotone", "file");
    if ((preset == nullptr) == (file == nullptr)) {
        throw ConfigError("give exactly one of [monotone] preset or file");
    }
    if (preset != nullptr) {
        try {
            config.monotone = monotone_by_name(preset->value);
        } catch (const ConfigError& e) {
            throw ConfigError(e.what(), preset->line);
        }
    } else {
        config.monotone = parse_monotone_spec(read_file(base_dir + "/" + file->value));
    }

    if (const auto* e = find_entry(entries, "noise", "epsilon")) {
        config.epsilons = parse_number_list(*e);
    }
    if (const auto* e = find_entry(entries, "noise", "delta0")) {
        config.delta0s = parse_number_list(*e);
    }
    if (const auto* e = find_entry(entries, "noise", "mitigate")) {
        config.mitigate = parse_flag(*e);
    }
    if (const auto* e = find_entry(entries, "sampling", "shots")) {
        if (e->value == "exact") {
            config.exact_shots = true;
        } else {
            config.exact_shots = false;
            const int shots = parse_int(*e);
            if (shots <= 0) throw ConfigError("shots must be positive", e->line);
            config.shots = static_cast<std::uint64_t>(shots);
        }
    }
    if (const auto* e = find_entry(entries, "sampling", "seed")) {
        config.seed = static_cast<std::uint64_t>(parse_int(*e));
    }
    if (const auto* e = find_entry(entries, "output", "path")) {
        config.output_path = e->value;
    }
    config.initial_amplitudes =
        parse_initial_state(entries, config.hamiltonian.qubit_count());

    for (const auto& e : entries) {
        if (!e.used) {
            throw ConfigError("unknown key [" + e.section + "] " + e.key, e.line);
        }
    }
    config.validate();
    return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    return parse_experiment_config(read_file(path), dirname_of(path));
}

bool is_crosstalk_preset(const std::string& name) { return name == "fig2d"; }

std::vector<std::string> preset_names() { return {"fig2a", "fig2b", "fig2c", "fig2d"}; }

ExperimentConfig preset_config(const std::string& name) {
    ExperimentConfig config;
    config.hamiltonian = parse_pauli_sum("1 * Y_I_I + 1 * I_Y_I + 1 * I_I_Y + 2 * X_X_X");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
    psi(0) = 1.0;
    config.initial_amplitudes = psi;
    config.t_start = 0.0;
    config.t_end = kPi;
    config.points = 60;
    config.monotone = three_tangle_spec();
    config.seed = 20260809;
    config.output_path = name + ".csv";
    if (name == "fig2a") {
        config.trotter_steps = 5;
        config.epsilons = {1.0, 0.99, 0.97, 0.95};
    } else if (name == "fig2b") {
        config.trotter_steps = 10;
        config.epsilons = {1.0, 0.99, 0.97, 0.95};
    } else if (name == "fig2c") {
        config.trotter_steps = 20;
        config.epsilons = {1.0, 0.99, 0.97, 0.95};
    } else if (name == "fig2d") {
        config.trotter_steps = 5;
        config.epsilons = {1.0};
        config.delta0s = {0.0, 0.01, 0.03, 0.05};
    } else {
        throw ConfigError("unknown preset '" + name +
                          "' (available: fig2a fig2b fig2c fig2d)");
    }
    return config;
}

TimeSeriesResult run_simulate(const ExperimentConfig& config, const RunOptions& options) {
    return run_time_series(config, options, false);
}

TimeSeriesResult run_crosstalk(const ExperimentConfig& config,
                               const RunOptions& options) {
    return run_time_series(config, options, true);
}

CostResult run_costs(const CostConfig& config, bool write_file) {
    if (config.n_qubits_max < 1) throw ConfigError("nmax must be >= 1");
    CostResult out;
    std::string csv = "# eqsim costs v1\n";
    csv += "n_qubits,l,k,epsilon,delta,n_gates,N_emb,N_oto,ratio,tomo_observables\n";
    for (int nq = 1; nq <= config.n_qubits_max; ++nq) {
        CostInputs inputs;
        inputs.k = config.k;
        inputs.epsilon = config.epsilon;
        inputs.delta = config.delta;
        inputs.l = config.l;
        inputs.n_qubits = nq;
        inputs.n = nq;  // gates grow linearly with the register
        const double n_emb = repetitions_embedding(config.k, config.epsilon, inputs.n);
        const double n_oto =
            repetitions_tomography(config.k, config.delta, inputs.n, nq);
        const double ratio = cost_ratio(inputs);
        if (out.crossover_n_qubits < 0 && ratio < 1.0) out.crossover_n_qubits = nq;
        csv += std::to_string(nq) + "," + std::to_string(config.l) + "," +
               format_double_17(config.k) + "," + format_double_17(config.epsilon) +
               "," + format_double_17(config.delta) + "," + std::to_string(inputs.n) +
               "," + format_double_17(n_emb) + "," + format_double_17(n_oto) + "," +
               format_double_17(ratio) + "," +
               std::to_string(tomography_observable_count(nq)) + "\n";
    }
    out.csv = std::move(csv);
    if (write_file) write_text_file(config.output_path, out.csv);
    return out;
}

double curve_distortion(const std::vector<double>& curve,
                        const std::vector<double>& reference) {
    if (curve.size() != reference.size() || curve.empty()) {
        throw DimensionError("curve_distortion needs two equal-length curves");
    }
    double cc = 0.0, cr = 0.0, rr = 0.0;
    for (std::size_t k = 0; k < curve.size(); ++k) {
        cc += curve[k] * curve[k];
        cr += curve[k] * reference[k];
        rr += reference[k] * reference[k];
    }
    if (rr <= 0.0) return 0.0;
    if (cc <= 0.0) return 1.0;
    const double scale = cr / cc;  // least-squares amplitude fit
    double dist = 0.0;
    for (std::size_t k = 0; k < curve.size(); ++k) {
        const double d = scale * curve[k] - reference[k];
        dist += d * d;
    }
    return std::sqrt(dist / rr);
}

std::string format_double_17(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
    if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace eqs
