#pragma once

#include "coflat/verdict.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace coflat {

inline constexpr const char* tool_version = "coflat 0.1.0";
inline constexpr int report_version = 1;

struct TimedCheck {
    CheckResult result;
    double timing_ms = 0;
};

/// Machine-readable run report. Serialization is canonical (sorted keys),
/// so two reports agree byte-for-byte exactly when their contents agree;
/// timings can be excluded for that comparison.
struct Report {
    std::string command;
    std::string input_digest;
    nlohmann::json params = nlohmann::json::object(); // flags that affect results
    std::vector<TimedCheck> checks;
    nlohmann::json data = nlohmann::json::object(); // command-specific payload
    std::vector<std::string> notices;

    void add(CheckResult r, double ms = 0);
    void extend(const CheckReport& rep);

    Status overall() const;

    /// 0 all pass, 1 any fail, 3 no fail but indeterminate present.
    /// (2 is reserved for usage and parse errors, decided by the caller.)
    int exit_code() const;

    nlohmann::json to_json(bool include_timing = true) const;
    std::string render(bool include_timing = true) const;

    /// One line per check plus a summary, for terminal output.
    std::string summary_text() const;
};

} // namespace coflat
