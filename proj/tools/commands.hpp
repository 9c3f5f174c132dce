// Copyright 2026 The prophetcomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROPHETCOMP_TOOLS_COMMANDS_HPP_
#define PROPHETCOMP_TOOLS_COMMANDS_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "prophetcomp/distribution.hpp"
#include "prophetcomp/instance.hpp"

namespace prophetcomp::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kUsageError = 2,
};

// Mass p used when `atomwc:auto` expands to certificate constants.
inline constexpr double kAutoAtomMass = 1e-3;

inline constexpr const char* kDistGrammar =
    "uniform:LO,HI | exp:RATE | pareto:SHAPE,SCALE | "
    "table:U0/V0,U1/V1,... | atomwc:A,B,P | atomwc:auto";

// Parses `name:p1,p2[,p3]`. `atomwc:auto` needs the instance. Throws
// std::invalid_argument with the grammar on malformed input.
DistributionSpec parse_distribution(
    const std::string& text,
    const std::optional<SelectionInstance>& inst = std::nullopt);

// Full command-line entry point; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace prophetcomp::cli

#endif  // PROPHETCOMP_TOOLS_COMMANDS_HPP_
