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

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "eqs/errors.hpp"

namespace eqs {

using complex = std::complex<double>;

/// Single-qubit Pauli axis. Qubit 0 is the leftmost tensor factor
/// everywhere in this library.
enum class Axis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char axis_char(Axis a);
Axis axis_from_char(char c);

/// An N-qubit tensor product of Pauli matrices together with a phase
/// from {1, i, -1, -i}. The phase is tracked symbolically as a power of
/// i so that products of strings stay exact.
class PauliString {
  public:
    explicit PauliString(std::vector<Axis> axes, int iphase_power = 0);

    /// Parse from axis letters separated by underscores, e.g. "Y_X_X".
    static PauliString parse(const std::string& text);

    /// Identity string on n qubits.
    static PauliString identity(int qubit_count);

    int qubit_count() const { return static_cast<int>(axes_.size()); }
    const std::vector<Axis>& axes() const { return axes_; }
    Axis axis(int qubit) const { return axes_.at(static_cast<std::size_t>(qubit)); }

    /// Phase as a power of i (0..3), and as a complex unit.
    int iphase_power() const { return iphase_; }
    complex phase() const;

    /// Number of non-identity sites.
    int weight() const;
    std::vector<int> support() const;
    bool is_identity() const;

    /// Count of Y axes (odd count means the dense matrix is purely
    /// imaginary, even count means purely real).
    int y_count() const;

    /// Same string with phase reset to +1.
    PauliString unphased() const;

    bool operator==(const PauliString& other) const {
        return axes_ == other.axes_ && iphase_ == other.iphase_;
    }

    /// Axis pattern as text, e.g. "Y_X_X" (phase not included).
    std::string str() const;

    /// Dense 2^n x 2^n matrix, phase included.
    Eigen::MatrixXcd to_dense() const;

  private:
    std::vector<Axis> axes_;
    std::uint8_t iphase_;  // phase = i^iphase_, exact
};

/// dense(result) == dense(p) * dense(q), with the phase tracked symbolically.
PauliString multiply(const PauliString& p, const PauliString& q);

/// True iff the dense matrices commute; equivalently the number of sites
/// where both strings are non-identity and different is even.
bool commutes(const PauliString& p, const PauliString& q);

/// A linear combination of Pauli strings on a fixed register.
/// Canonical form: string phases folded into the coefficients, terms
/// sorted lexicographically by axes, duplicates merged, coefficients
/// with magnitude <= 1e-15 dropped.
class PauliSum {
  public:
    struct Term {
        complex coeff;
        std::vector<Axis> axes;
    };

    explicit PauliSum(int qubit_count);
    PauliSum(int qubit_count, const std::vector<std::pair<complex, PauliString>>& terms);

    int qubit_count() const { return qubit_count_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    /// Add coeff * string (string phase folded in); re-canonicalizes.
    void add(complex coeff, const PauliString& string);

    PauliSum operator+(const PauliSum& other) const;
    PauliSum operator*(complex scalar) const;
    bool operator==(const PauliSum& other) const;

    /// Hermiticity test. Uses the dense matrix up to 8 qubits and the
    /// symbolic criterion (all canonical coefficients real) beyond.
    bool is_hermitian() const;

    Eigen::MatrixXcd to_dense() const;

  private:
    void canonicalize();

    int qubit_count_;
    std::vector<Term> terms_;
};

/// Split a Hermitian sum into its entrywise real and imaginary matrix
/// parts: dense(h) == dense(A) + i*dense(B) with dense(A), dense(B) real.
/// Terms with an even Y count land in A; odd-Y terms contribute their
/// string divided by i to B.
std::pair<PauliSum, PauliSum> split_real_imag(const PauliSum& h);

/// Map an N-qubit Hermitian Hamiltonian h = A + iB to its enlarged-space
/// image on N+1 qubits, with the extra qubit at index 0:
/// odd-Y terms keep their coefficient under an identity on qubit 0,
/// even-Y terms get a Y on qubit 0 and a negated coefficient.
/// The result has exactly as many terms as the input and satisfies
/// M * dense(result) == dense(h) * M for the projector M = (1, i) (x) I.
PauliSum embed_hamiltonian(const PauliSum& h);

/// Parse the textual sum notation used by config files and the CLI:
/// terms of the form `coeff * AXIS_AXIS_..._AXIS` joined by `+` or `-`,
/// e.g. "1.0 * Y_I_I + -2.0 * Y_X_X_X". Coefficients must be real.
PauliSum parse_pauli_sum(const std::string& text);

/// Canonical printer for the same notation; round-trips bit-exactly
/// through parse_pauli_sum. Requires real coefficients.
std::string print_pauli_sum(const PauliSum& sum);

}  // namespace eqs
