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
// Test-side oracles. Everything here rebuilds dense operators from
// scratch so that library code is checked against an independent path.

#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "eqs/pauli.hpp"

namespace oracle {

using complex = std::complex<double>;

inline Eigen::Matrix2cd pauli2(eqs::Axis a) {
    Eigen::Matrix2cd m;
    switch (a) {
        case eqs::Axis::I: m << 1, 0, 0, 1; break;
        case eqs::Axis::X: m << 0, 1, 1, 0; break;
        case eqs::Axis::Y: m << 0, complex(0, -1), complex(0, 1), 0; break;
        case eqs::Axis::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

/// Dense matrix of an axis pattern, qubit 0 leftmost, no phase.
inline Eigen::MatrixXcd dense_axes(const std::vector<eqs::Axis>& axes) {
    Eigen::MatrixXcd m = pauli2(axes.front());
    for (std::size_t k = 1; k < axes.size(); ++k) m = kron(m, pauli2(axes[k]));
    return m;
}

inline Eigen::MatrixXcd dense_string(const eqs::PauliString& p) {
    return p.phase() * dense_axes(p.axes());
}

inline Eigen::MatrixXcd dense_sum(const eqs::PauliSum& s) {
    const Eigen::Index dim = Eigen::Index(1) << s.qubit_count();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : s.terms()) m += t.coeff * dense_axes(t.axes);
    return m;
}

/// exp(-i h t) for Hermitian h, via a fresh eigendecomposition.
inline Eigen::MatrixXcd expm_minus_i_ht(const Eigen::MatrixXcd& h, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    Eigen::VectorXcd phases(solver.eigenvalues().size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases(k) = std::exp(complex(0, -solver.eigenvalues()(k) * t));
    }
    return solver.eigenvectors() * phases.asDiagonal() *
           solver.eigenvectors().adjoint();
}

/// <psi|Theta|psi*> by brute force.
inline complex antilinear_direct(const Eigen::VectorXcd& psi,
                                 const Eigen::MatrixXcd& theta) {
    return (psi.adjoint() * theta * psi.conjugate())(0);
}

inline double max_abs(const Eigen::MatrixXcd& m) {
    return m.cwiseAbs().maxCoeff();
}

/// Distance between unitaries modulo a global phase.
inline double phase_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::Index rmax = 0, cmax = 0;
    a.cwiseAbs().maxCoeff(&rmax, &cmax);
    const complex ref = a(rmax, cmax);
    const complex other = b(rmax, cmax);
    if (std::abs(other) < 1e-12) return max_abs(a - b);
    const complex phase = ref / other;
    return max_abs(a - phase * b);
}

inline std::vector<eqs::Axis> random_axes(std::mt19937_64& rng, int n,
                                          bool allow_identity = true) {
    std::uniform_int_distribution<int> dist(allow_identity ? 0 : 1, 3);
    std::vector<eqs::Axis> axes;
    for (int k = 0; k < n; ++k) axes.push_back(static_cast<eqs::Axis>(dist(rng)));
    return axes;
}

inline eqs::PauliString random_string(std::mt19937_64& rng, int n,
                                      bool allow_identity = true) {
    while (true) {
        auto axes = random_axes(rng, n, allow_identity);
        bool all_identity = true;
        for (auto a : axes) all_identity &= (a == eqs::Axis::I);
        if (!all_identity) return eqs::PauliString(axes);
    }
}

inline eqs::PauliSum random_hermitian_sum(std::mt19937_64& rng, int n, int terms) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    eqs::PauliSum sum(n);
    for (int k = 0; k < terms; ++k) {
        sum.add(coeff(rng), random_string(rng, n));
    }
    return sum;
}

inline Eigen::VectorXcd random_state_vector(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd psi(Eigen::Index(1) << n);
    for (Eigen::Index k = 0; k < psi.size(); ++k) {
        psi(k) = complex(gauss(rng), gauss(rng));
    }
    psi.normalize();
    return psi;
}

}  // namespace oracle
