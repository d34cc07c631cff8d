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

#include "eqs/pauli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace eqs {

namespace {

constexpr double kCoeffDropTolerance = 1e-15;

// Product table for single-qubit Paulis: sigma^a * sigma^b = i^k * sigma^c.
// Entries are (c, k) indexed by [a][b] with I=0, X=1, Y=2, Z=3.
struct SiteProduct {
    std::uint8_t axis;
    std::uint8_t ipow;
};

constexpr SiteProduct kSiteProduct[4][4] = {
    {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
    {{1, 0}, {0, 0}, {3, 1}, {2, 3}},
    {{2, 0}, {3, 3}, {0, 0}, {1, 1}},
    {{3, 0}, {2, 1}, {1, 3}, {0, 0}},
};

const Eigen::Matrix2cd& axis_matrix(Axis a) {
    static const Eigen::Matrix2cd mats[4] = {
        (Eigen::Matrix2cd() << 1, 0, 0, 1).finished(),
        (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
        (Eigen::Matrix2cd() << 0, complex(0, -1), complex(0, 1), 0).finished(),
        (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(),
    };
    return mats[static_cast<int>(a)];
}

complex ipow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

void require_same_register(const PauliString& p, const PauliString& q) {
    if (p.qubit_count() != q.qubit_count()) {
        throw DimensionError("Pauli strings act on different register sizes: " +
                             std::to_string(p.qubit_count()) + " vs " +
                             std::to_string(q.qubit_count()));
    }
}

std::string format_coeff(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

}  // namespace

char axis_char(Axis a) {
    switch (a) {
        case Axis::I: return 'I';
        case Axis::X: return 'X';
        case Axis::Y: return 'Y';
        default: return 'Z';
    }
}

Axis axis_from_char(char c) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
        case 'I': return Axis::I;
        case 'X': return Axis::X;
        case 'Y': return Axis::Y;
        case 'Z': return Axis::Z;
        default:
            throw ConfigError(std::string("invalid Pauli axis letter '") + c + "'");
    }
}

PauliString::PauliString(std::vector<Axis> axes, int iphase_power)
    : axes_(std::move(axes)),
      iphase_(static_cast<std::uint8_t>(((iphase_power % 4) + 4) % 4)) {
    if (axes_.empty()) {
        throw DimensionError("Pauli string needs at least one qubit");
    }
}

PauliString PauliString::parse(const std::string& text) {
    std::vector<Axis> axes;
    for (char c : text) {
        if (c == '_' || std::isspace(static_cast<unsigned char>(c))) continue;
        axes.push_back(axis_from_char(c));
    }
    if (axes.empty()) {
        throw ConfigError("empty Pauli string '" + text + "'");
    }
    return PauliString(std::move(axes));
}

PauliString PauliString::identity(int qubit_count) {
    if (qubit_count < 1) {
        throw DimensionError("register size must be positive");
    }
    return PauliString(std::vector<Axis>(static_cast<std::size_t>(qubit_count), Axis::I));
}

complex PauliString::phase() const { return ipow(iphase_); }

int PauliString::weight() const {
    int w = 0;
    for (Axis a : axes_) w += (a != Axis::I);
    return w;
}

std::vector<int> PauliString::support() const {
    std::vector<int> sites;
    for (int k = 0; k < qubit_count(); ++k) {
        if (axes_[static_cast<std::size_t>(k)] != Axis::I) sites.push_back(k);
    }
    return sites;
}

bool PauliString::is_identity() const { return weight() == 0; }

int PauliString::y_count() const {
    int c = 0;
    for (Axis a : axes_) c += (a == Axis::Y);
    return c;
}

PauliString PauliString::unphased() const { return PauliString(axes_, 0); }

std::string PauliString::str() const {
    std::string s;
    for (std::size_t k = 0; k < axes_.size(); ++k) {
        if (k) s.push_back('_');
        s.push_back(axis_char(axes_[k]));
    }
    return s;
}

Eigen::MatrixXcd PauliString::to_dense() const {
    Eigen::MatrixXcd m = axis_matrix(axes_[0]);
    for (std::size_t k = 1; k < axes_.size(); ++k) {
        const Eigen::Matrix2cd& f = axis_matrix(axes_[k]);
        Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                next.block(2 * r, 2 * c, 2, 2) = m(r, c) * f;
            }
        }
        m.swap(next);
    }
    return phase() * m;
}

PauliString multiply(const PauliString& p, const PauliString& q) {
    require_same_register(p, q);
    std::vector<Axis> axes(p.axes().size());
    int ip = p.iphase_power() + q.iphase_power();
    for (std::size_t k = 0; k < axes.size(); ++k) {
        const SiteProduct sp =
            kSiteProduct[static_cast<int>(p.axes()[k])][static_cast<int>(q.axes()[k])];
        axes[k] = static_cast<Axis>(sp.axis);
        ip += sp.ipow;
    }
    return PauliString(std::move(axes), ip);
}

bool commutes(const PauliString& p, const PauliString& q) {
    require_same_register(p, q);
    int anticommuting_sites = 0;
    for (std::size_t k = 0; k < p.axes().size(); ++k) {
        Axis a = p.axes()[k];
        Axis b = q.axes()[k];
        if (a != Axis::I && b != Axis::I && a != b) ++anticommuting_sites;
    }
    return anticommuting_sites % 2 == 0;
}

PauliSum::PauliSum(int qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count < 1) {
        throw DimensionError("register size must be positive");
    }
}

PauliSum::PauliSum(int qubit_count,
                   const std::vector<std::pair<complex, PauliString>>& terms)
    : PauliSum(qubit_count) {
    for (const auto& [coeff, string] : terms) add(coeff, string);
}

void PauliSum::add(complex coeff, const PauliString& string) {
    if (string.qubit_count() != qubit_count_) {
        throw DimensionError("term register size " + std::to_string(string.qubit_count()) +
                             " does not match sum register size " +
                             std::to_string(qubit_count_));
    }
    terms_.push_back(Term{coeff * string.phase(), string.axes()});
    canonicalize();
}

void PauliSum::canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.axes < b.axes; });
    std::vector<Term> merged;
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().axes == t.axes) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(std::move(t));
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Term& t) {
                                    return std::abs(t.coeff) <= kCoeffDropTolerance;
                                }),
                 merged.end());
    terms_ = std::move(merged);
}

PauliSum PauliSum::operator+(const PauliSum& other) const {
    if (other.qubit_count_ != qubit_count_) {
        throw DimensionError("cannot add sums on different register sizes");
    }
    PauliSum out = *this;
    for (const auto& t : other.terms_) {
        out.terms_.push_back(t);
    }
    out.canonicalize();
    return out;
}

PauliSum PauliSum::operator*(complex scalar) const {
    PauliSum out(qubit_count_);
    for (const auto& t : terms_) {
        out.terms_.push_back(Term{scalar * t.coeff, t.axes});
    }
    out.canonicalize();
    return out;
}

bool PauliSum::operator==(const PauliSum& other) const {
    if (qubit_count_ != other.qubit_count_ || terms_.size() != other.terms_.size()) {
        return false;
    }
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        if (terms_[k].axes != other.terms_[k].axes) return false;
        if (terms_[k].coeff != other.terms_[k].coeff) return false;
    }
    return true;
}

bool PauliSum::is_hermitian() const {
    if (qubit_count_ <= 8) {
        Eigen::MatrixXcd m = to_dense();
        return (m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-12;
    }
    for (const auto& t : terms_) {
        if (std::abs(t.coeff.imag()) > 1e-12) return false;
    }
    return true;
}

Eigen::MatrixXcd PauliSum::to_dense() const {
    const Eigen::Index dim = Eigen::Index(1) << qubit_count_;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : terms_) {
        m += t.coeff * PauliString(t.axes).to_dense();
    }
    return m;
}

std::pair<PauliSum, PauliSum> split_real_imag(const PauliSum& h) {
    if (!h.is_hermitian()) {
        throw ContractError("split_real_imag requires a Hermitian sum");
    }
    PauliSum real_part(h.qubit_count());
    PauliSum imag_part(h.qubit_count());
    for (const auto& t : h.terms()) {
        PauliString string(t.axes);
        if (string.y_count() % 2 == 0) {
            real_part.add(t.coeff, string);
        } else {
            // c*P = i * (c*P/i); P/i has a real dense matrix here.
            imag_part.add(t.coeff * complex(0, -1), string);
        }
    }
    return {real_part, imag_part};
}

PauliSum embed_hamiltonian(const PauliSum& h) {
    if (!h.is_hermitian()) {
        throw ContractError("embed_hamiltonian requires a Hermitian sum");
    }
    PauliSum out(h.qubit_count() + 1);
    for (const auto& t : h.terms()) {
        PauliString string(t.axes);
        std::vector<Axis> enlarged;
        enlarged.reserve(t.axes.size() + 1);
        if (string.y_count() % 2 == 1) {
            enlarged.push_back(Axis::I);
            enlarged.insert(enlarged.end(), t.axes.begin(), t.axes.end());
            out.add(t.coeff, PauliString(std::move(enlarged)));
        } else {
            enlarged.push_back(Axis::Y);
            enlarged.insert(enlarged.end(), t.axes.begin(), t.axes.end());
            out.add(-t.coeff, PauliString(std::move(enlarged)));
        }
    }
    return out;
}

PauliSum parse_pauli_sum(const std::string& text) {
    // Terms look like "coeff * AXES"; a sign at a term boundary starts the
    // next term. Boundaries are recognized after the axes block so that
    // exponent signs inside coefficients (1e-3) are left alone.
    struct RawTerm {
        double coeff;
        std::string axes;
    };
    std::vector<RawTerm> raw;
    std::size_t pos = 0;
    const std::size_t n = text.size();
    auto skip_ws = [&] {
        while (pos < n && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    if (pos >= n) throw ConfigError("empty Pauli sum");
    bool first = true;
    while (pos < n) {
        double sign = 1.0;
        skip_ws();
        if (!first) {
            if (text[pos] == '+') {
                ++pos;
            } else if (text[pos] == '-') {
                sign = -1.0;
                ++pos;
            } else {
                throw ConfigError("expected '+' or '-' between Pauli terms near '" +
                                  text.substr(pos, 12) + "'");
            }
            skip_ws();
        }
        first = false;
        const char* start = text.c_str() + pos;
        char* end = nullptr;
        double coeff = std::strtod(start, &end);
        if (end == start) {
            throw ConfigError("expected a coefficient near '" + text.substr(pos, 12) + "'");
        }
        pos += static_cast<std::size_t>(end - start);
        skip_ws();
        if (pos >= n || text[pos] != '*') {
            throw ConfigError("expected '*' after coefficient in Pauli term");
        }
        ++pos;
        skip_ws();
        std::string axes;
        while (pos < n) {
            char c = text[pos];
            if (c == '_' || std::isalpha(static_cast<unsigned char>(c))) {
                axes.push_back(c);
                ++pos;
            } else {
                break;
            }
        }
        if (axes.empty()) {
            throw ConfigError("expected axis letters after '*' in Pauli term");
        }
        raw.push_back(RawTerm{sign * coeff, axes});
        skip_ws();
    }
    PauliString first_string = PauliString::parse(raw.front().axes);
    PauliSum sum(first_string.qubit_count());
    for (const auto& t : raw) {
        sum.add(t.coeff, PauliString::parse(t.axes));
    }
    return sum;
}

std::string print_pauli_sum(const PauliSum& sum) {
    if (sum.terms().empty()) {
        return "0 * " + PauliString::identity(sum.qubit_count()).str();
    }
    std::string out;
    for (std::size_t k = 0; k < sum.terms().size(); ++k) {
        const auto& t = sum.terms()[k];
        if (std::abs(t.coeff.imag()) > 1e-12) {
            throw ContractError("text notation supports real coefficients only");
        }
        if (k) out += " + ";
        out += format_coeff(t.coeff.real());
        out += " * ";
        out += PauliString(t.axes).str();
    }
    return out;
}

}  // namespace eqs
