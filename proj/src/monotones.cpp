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

#include "eqs/monotones.hpp"

#include <cmath>
#include <sstream>

namespace eqs {

namespace {

complex direct_antilinear(const StateVector& psi, const PauliSum& theta) {
    // <psi|Theta|psi*> by explicit conjugation of the amplitudes.
    const Eigen::VectorXcd conj = psi.amplitudes().conjugate();
    complex acc = 0.0;
    for (const auto& t : theta.terms()) {
        acc += t.coeff *
               (psi.amplitudes().adjoint() * apply_string(PauliString(t.axes), conj))(0);
    }
    return acc;
}

struct Combined {
    double value = 0.0;
    double variance = 0.0;
};

// Combine component expectations; var_re/var_im are per-component
// variances of the real and imaginary parts (zero for exact paths).
Combined combine_components(const MonotoneSpec& spec, const std::vector<complex>& v,
                            const std::vector<double>& var_re,
                            const std::vector<double>& var_im) {
    Combined out;
    if (spec.combine == Combine::AbsValue) {
        const complex z = v[0];
        out.value = std::abs(z);
        if (out.value > 0.0) {
            const double dre = z.real() / out.value;
            const double dim = z.imag() / out.value;
            out.variance = dre * dre * var_re[0] + dim * dim * var_im[0];
        } else {
            out.variance = var_re[0] + var_im[0];
        }
        return out;
    }
    complex s = 0.0;
    for (std::size_t c = 0; c < v.size(); ++c) {
        s += spec.components[c].sign * v[c] * v[c];
    }
    out.value = std::abs(s);
    const double denom = out.value > 0.0 ? out.value : 1.0;
    for (std::size_t c = 0; c < v.size(); ++c) {
        const double sg = spec.components[c].sign;
        const double r = v[c].real();
        const double i = v[c].imag();
        // d|S|/dRe(v_c) and d|S|/dIm(v_c) for S = sum sg * v^2
        const double dr = (s.real() * 2.0 * sg * r + s.imag() * 2.0 * sg * i) / denom;
        const double di = (-s.real() * 2.0 * sg * i + s.imag() * 2.0 * sg * r) / denom;
        out.variance += dr * dr * var_re[c] + di * di * var_im[c];
    }
    return out;
}

}  // namespace

int MonotoneSpec::qubit_count() const {
    if (components.empty()) throw ContractError("monotone spec has no components");
    return components.front().theta.qubit_count();
}

void MonotoneSpec::validate() const {
    if (components.empty()) throw ContractError("monotone spec has no components");
    if (combine == Combine::AbsValue && components.size() != 1) {
        throw ContractError("abs_value requires exactly one component");
    }
    const int n = components.front().theta.qubit_count();
    for (const auto& c : components) {
        if (c.theta.qubit_count() != n) {
            throw DimensionError("monotone components act on different registers");
        }
        if (!c.theta.is_hermitian()) {
            throw ContractError("monotone component operator must be Hermitian");
        }
        if (c.sign != 1.0 && c.sign != -1.0) {
            throw ContractError("component sign must be +1 or -1");
        }
    }
}

MonotoneSpec concurrence_spec() {
    MonotoneSpec spec;
    spec.name = "concurrence";
    PauliSum yy(2);
    yy.add(1.0, PauliString::parse("Y_Y"));
    spec.components.push_back({yy, 1.0});
    spec.combine = Combine::AbsValue;
    return spec;
}

MonotoneSpec three_tangle_spec() {
    MonotoneSpec spec;
    spec.name = "three_tangle";
    spec.combine = Combine::AbsSumOfSquares;
    const struct {
        const char* axes;
        double sign;
    } rows[] = {{"I_Y_Y", -1.0}, {"X_Y_Y", 1.0}, {"Z_Y_Y", 1.0}};
    for (const auto& row : rows) {
        PauliSum theta(3);
        theta.add(1.0, PauliString::parse(row.axes));
        spec.components.push_back({theta, row.sign});
    }
    return spec;
}

MonotoneSpec monotone_by_name(const std::string& name) {
    if (name == "concurrence") return concurrence_spec();
    if (name == "three_tangle") return three_tangle_spec();
    throw ConfigError("unknown monotone preset '" + name +
                      "' (available: concurrence, three_tangle)");
}

MonotoneSpec parse_monotone_spec(const std::string& text) {
    MonotoneSpec spec;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool combine_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("expected 'key: value'", line_no);
        }
        std::string key = line.substr(first, colon - first);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        std::string value = line.substr(colon + 1);
        const auto vstart = value.find_first_not_of(" \t");
        value = vstart == std::string::npos ? "" : value.substr(vstart);
        while (!value.empty() && (value.back() == ' ' || value.back() == '\t' ||
                                  value.back() == '\r')) {
            value.pop_back();
        }
        if (key == "name") {
            spec.name = value;
        } else if (key == "combine") {
            if (value == "abs_value") spec.combine = Combine::AbsValue;
            else if (value == "abs_sum_of_squares") spec.combine = Combine::AbsSumOfSquares;
            else throw ConfigError("unknown combine rule '" + value + "'", line_no);
            combine_seen = true;
        } else if (key == "component") {
            if (value.rfind("sign=", 0) != 0) {
                throw ConfigError("component line must start with sign=", line_no);
            }
            const auto theta_pos = value.find("theta=");
            if (theta_pos == std::string::npos) {
                throw ConfigError("component line is missing theta=", line_no);
            }
            const std::string sign_text = value.substr(5, theta_pos - 5);
            double sign;
            try {
                sign = std::stod(sign_text);
            } catch (const std::exception&) {
                throw ConfigError("bad component sign '" + sign_text + "'", line_no);
            }
            MonotoneComponent component;
            component.sign = sign;
            try {
                component.theta = parse_pauli_sum(value.substr(theta_pos + 6));
            } catch (const ConfigError& e) {
                throw ConfigError(e.what(), line_no);
            }
            spec.components.push_back(std::move(component));
        } else {
            throw ConfigError("unknown key '" + key + "' in monotone spec", line_no);
        }
    }
    if (!combine_seen) throw ConfigError("monotone spec is missing 'combine:'");
    spec.validate();
    return spec;
}

std::string print_monotone_spec(const MonotoneSpec& spec) {
    std::string out = "name: " + spec.name + "\n";
    out += "combine: ";
    out += (spec.combine == Combine::AbsValue ? "abs_value" : "abs_sum_of_squares");
    out += "\n";
    for (const auto& c : spec.components) {
        out += "component: sign=";
        out += (c.sign < 0 ? "-1" : "+1");
        out += " theta= " + print_pauli_sum(c.theta) + "\n";
    }
    return out;
}

double evaluate_direct(const StateVector& psi, const MonotoneSpec& spec) {
    spec.validate();
    if (spec.qubit_count() != psi.qubit_count()) {
        throw DimensionError("evaluate_direct: register size mismatch");
    }
    std::vector<complex> v;
    for (const auto& c : spec.components) v.push_back(direct_antilinear(psi, c.theta));
    const std::vector<double> zeros(v.size(), 0.0);
    return combine_components(spec, v, zeros, zeros).value;
}

double evaluate_embedded_exact(const StateVector& enlarged, const MonotoneSpec& spec) {
    spec.validate();
    if (spec.qubit_count() + 1 != enlarged.qubit_count()) {
        throw DimensionError("evaluate_embedded_exact expects the enlarged register");
    }
    std::vector<complex> v;
    for (const auto& c : spec.components) {
        v.push_back(antilinear_expectation(enlarged, c.theta));
    }
    const std::vector<double> zeros(v.size(), 0.0);
    return combine_components(spec, v, zeros, zeros).value;
}

std::vector<EnlargedTarget> enlarged_targets(const MonotoneSpec& spec) {
    spec.validate();
    std::vector<EnlargedTarget> targets;
    for (std::size_t c = 0; c < spec.components.size(); ++c) {
        for (const auto& term : spec.components[c].theta.terms()) {
            const PauliString string(term.axes);
            targets.push_back({static_cast<int>(c), term.coeff.real(), false,
                               prepend_axis(Axis::Z, string)});
            targets.push_back({static_cast<int>(c), term.coeff.real(), true,
                               prepend_axis(Axis::X, string)});
        }
    }
    return targets;
}

Estimate evaluate_embedded_protocol(const GateSequence& preparation,
                                    const MonotoneSpec& spec,
                                    const ProtocolOptions& options) {
    spec.validate();
    if (preparation.qubit_count() != spec.qubit_count() + 1) {
        throw DimensionError("preparation sequence must act on the enlarged register");
    }
    const NoiseModel* noise =
        (options.noise != nullptr && !options.noise->trivial()) ? options.noise : nullptr;
    const bool density_path = noise != nullptr && noise->depolarizing_enabled &&
                              noise->epsilon < 1.0;
    const int n_prep = preparation.gate_count(options.counting);

    // Prepare once, measure every target on a copy.
    StateVector psi(preparation.qubit_count());
    if (options.initial != nullptr) {
        if (options.initial->qubit_count() != preparation.qubit_count()) {
            throw DimensionError("initial state must live on the enlarged register");
        }
        psi = *options.initial;
    }
    DensityMatrix rho(density_path ? preparation.qubit_count() : 1);
    if (density_path) {
        rho = DensityMatrix::from_state(psi);
        run_sequence(rho, preparation, *noise, options.counting);
    } else if (noise != nullptr) {
        run_sequence(psi, preparation, *noise, options.counting);
    } else {
        apply_sequence(psi, preparation);
    }

    const NoiseModel* plan_noise = options.noisy_measurement ? noise : nullptr;
    std::vector<complex> v(spec.components.size(), 0.0);
    std::vector<double> var_re(spec.components.size(), 0.0);
    std::vector<double> var_im(spec.components.size(), 0.0);
    std::uint64_t stream = 0;
    for (const auto& target : enlarged_targets(spec)) {
        const MeasurementPlan plan = plan_measurement(target.string, options.compile);
        ShotSpec shots = options.shots;
        if (!shots.exact) shots.seed = mix_seed(options.seed, stream);
        ++stream;
        MeasuredValue measured =
            density_path
                ? execute_plan(rho, plan, plan_noise, shots, options.counting)
                : execute_plan(psi, plan, plan_noise, shots, options.counting);
        double value = measured.value;
        double sigma = measured.stderr_of_mean;
        if (options.mitigate && noise != nullptr && noise->depolarizing_enabled &&
            noise->epsilon < 1.0 && !plan.target.is_identity()) {
            int n_total = n_prep;
            if (options.noisy_measurement) {
                for (const auto& u : plan.unitaries) {
                    n_total += u.gate_count(options.counting);
                }
            }
            const double scale = 1.0 / std::pow(noise->epsilon, n_total);
            value = mitigate(value, noise->epsilon, n_total, 0.0);
            sigma *= scale;
        }
        const auto c = static_cast<std::size_t>(target.component);
        if (target.imaginary_part) {
            v[c] += complex(0.0, -target.coefficient * value);
            var_im[c] += target.coefficient * target.coefficient * sigma * sigma;
        } else {
            v[c] += complex(target.coefficient * value, 0.0);
            var_re[c] += target.coefficient * target.coefficient * sigma * sigma;
        }
    }
    const Combined combined = combine_components(spec, v, var_re, var_im);
    return {combined.value, std::sqrt(combined.variance)};
}

}  // namespace eqs
