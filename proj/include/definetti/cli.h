// Copyright 2026 The definetti Authors
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

#ifndef DEFINETTI_CLI_H
#define DEFINETTI_CLI_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "definetti/format.h"
#include "definetti/sector_basis.h"

namespace definetti {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
    kExitPass = 0,
    kExitFail = 1,
    kExitUsage = 2,
    kExitIo = 3,
};

enum class Command { kBoundTable, kDistance, kProofChain, kFockVerify, kSphere };
enum class OutputFormat { kCsv, kJson };

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    Command command = Command::kBoundTable;
    std::optional<Range> n;
    std::optional<Range> k;
    std::optional<Range> p;
    /// Use this many log-spaced n and p values across the ranges instead of
    /// every integer (0 = every integer).
    std::size_t log_grid = 0;
    /// Mean photon number override for `distance`, as "a/b" or a decimal.
    std::optional<std::string> x;
    double tail_eps = 1e-12;
    /// Relative slack tolerance for proof-chain inequalities.
    double chain_tolerance = 1e-12;
    /// Invariance / unitarity tolerance for fock-verify.
    double fock_tolerance = 1e-9;
    std::uint64_t seed = 1;
    std::uint64_t seeds = 100;
    /// Monte Carlo samples for `sphere` (0 disables the estimate).
    std::uint64_t samples = 0;
    OutputFormat format = OutputFormat::kCsv;
    std::optional<std::string> out_path;
    ResourceLimits limits;
    unsigned threads = 0;

    /// Throws UsageError.
    void validate() const;
};

struct RunResult {
    int exit_code = kExitPass;
    std::string output;
    std::size_t records = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
};

/// Runs the verification and renders the report. Does not touch the file
/// system; the caller writes `output`.
RunResult run(const RunConfig &config);

/// Parses argv, runs, writes the report to --out or `out`, and returns the
/// exit status. Diagnostics go to `err`.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// Column order of the CSV output of each command.
const std::vector<std::string> &csv_columns(Command command);

const char *command_name(Command command);

}  // namespace definetti

#endif
