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
#include <vector>

namespace eqs {

struct VerifySuiteResult {
    std::string name;
    bool passed = false;
    double worst_residual = 0.0;
    double limit = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifySuiteResult> suites;
    bool all_passed() const;
};

struct VerifyOptions {
    std::uint64_t seed = 20260809;
    /// Self-test knob: shifts the gate-count exponent used by the
    /// mitigation check. Any non-zero value must make that suite fail.
    int mitigation_exponent_offset = 0;
};

/// Run the cross-module invariant suites (embedding dynamics, antilinear
/// identity, compiler soundness, depolarizing contraction + mitigation,
/// monotone path equivalence) and report per-suite worst residuals.
VerifyReport run_verify(const VerifyOptions& options = {});

std::string format_verify_report(const VerifyReport& report);

}  // namespace eqs
