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

#include <stdexcept>
#include <string>

namespace eqs {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operands act on registers of different sizes, or on an invalid size.
struct DimensionError : Error {
    explicit DimensionError(const std::string& what) : Error(what) {}
};

/// A requested simulation exceeds the supported register sizes.
struct CapacityError : Error {
    explicit CapacityError(const std::string& what) : Error(what) {}
};

/// A documented precondition was violated (e.g. non-Hermitian input).
struct ContractError : Error {
    explicit ContractError(const std::string& what) : Error(what) {}
};

/// Malformed configuration or data file. Carries a 1-based line number
/// when the failing line is known (0 otherwise).
struct ConfigError : Error {
    ConfigError(const std::string& what, int line_number = 0)
        : Error(line_number > 0 ? "line " + std::to_string(line_number) + ": " + what
                                : what),
          line(line_number) {}
    int line;
};

}  // namespace eqs
