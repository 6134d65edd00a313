#pragma once

#include "coflat/exec.hpp"
#include "coflat/report.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace coflat {

struct RunOptions {
    std::string command; // check | pencil | chain | casimir | restrict | project | kdv
    std::string input;   // structure file; optional for kdv
    std::string output;  // JSON report path; empty writes none
    int max_degree = 2;  // casimir search bound
    int samples = 16;    // sampling fallback size
    std::uint64_t seed = 0;
    std::optional<int> depth; // chain depth override; default follows the file / Casimir degree
    ExecMode mode = ExecMode::parallel;

    // kdv flag overrides; file values (when an input is given) fill the gaps.
    std::optional<int> kdv_n;
    std::optional<std::string> kdv_dt;
    std::optional<int> kdv_steps;
    std::optional<std::string> kdv_u0;
};

/// Executes one command, prints the human summary to os, optionally writes
/// the JSON report, and returns the exit code: 0 all checks pass, 1 any
/// fail, 3 no fail but indeterminate present. Usage and input problems
/// throw (ParseError, StructureError, ...); the binary maps those to 2.
int run_command(const RunOptions& opt, std::ostream& os);

} // namespace coflat
