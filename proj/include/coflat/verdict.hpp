#pragma once

#include <string>
#include <vector>

namespace coflat {

/// Three-valued check outcome. Sampling-based evidence can at best be
/// indeterminate; pass is reserved for exact verification.
enum class Status { pass, fail, indeterminate };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        default: return "indeterminate";
    }
}

struct CheckResult {
    std::string name;
    Status status = Status::pass;
    std::string witness; // rendered counterexample, empty on pass
    std::string detail;  // free-form context (ranks, magnitudes, notes)
};

inline CheckResult check_pass(std::string name, std::string detail = "") {
    return CheckResult{std::move(name), Status::pass, "", std::move(detail)};
}

inline CheckResult check_fail(std::string name, std::string witness, std::string detail = "") {
    return CheckResult{std::move(name), Status::fail, std::move(witness), std::move(detail)};
}

inline CheckResult check_indeterminate(std::string name, std::string detail) {
    return CheckResult{std::move(name), Status::indeterminate, "", std::move(detail)};
}

/// Ordered list of check results with an aggregate verdict: fail dominates,
/// then indeterminate, else pass.
struct CheckReport {
    std::vector<CheckResult> checks;

    void add(CheckResult r) { checks.push_back(std::move(r)); }
    void extend(const CheckReport& o) {
        checks.insert(checks.end(), o.checks.begin(), o.checks.end());
    }

    Status overall() const {
        bool indet = false;
        for (const auto& c : checks) {
            if (c.status == Status::fail) return Status::fail;
            if (c.status == Status::indeterminate) indet = true;
        }
        return indet ? Status::indeterminate : Status::pass;
    }

    bool all_pass() const { return overall() == Status::pass; }

    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

} // namespace coflat
