#include "coflat/report.hpp"

#include <sstream>

namespace coflat {

void Report::add(CheckResult r, double ms) { checks.push_back(TimedCheck{std::move(r), ms}); }

void Report::extend(const CheckReport& rep) {
    for (const auto& c : rep.checks) add(c);
}

Status Report::overall() const {
    bool indet = false;
    for (const auto& c : checks) {
        if (c.result.status == Status::fail) return Status::fail;
        if (c.result.status == Status::indeterminate) indet = true;
    }
    return indet ? Status::indeterminate : Status::pass;
}

int Report::exit_code() const {
    switch (overall()) {
        case Status::fail: return 1;
        case Status::indeterminate: return 3;
        default: return 0;
    }
}

nlohmann::json Report::to_json(bool include_timing) const {
    nlohmann::json checks_json = nlohmann::json::array();
    int npass = 0, nfail = 0, nindet = 0;
    for (const auto& c : checks) {
        nlohmann::json j{{"name", c.result.name}, {"status", to_string(c.result.status)}};
        if (!c.result.witness.empty()) j["witness"] = c.result.witness;
        if (!c.result.detail.empty()) j["detail"] = c.result.detail;
        if (include_timing) j["timing_ms"] = c.timing_ms;
        checks_json.push_back(std::move(j));
        switch (c.result.status) {
            case Status::pass: ++npass; break;
            case Status::fail: ++nfail; break;
            default: ++nindet; break;
        }
    }
    nlohmann::json out{
        {"report_version", report_version},
        {"tool", tool_version},
        {"command", command},
        {"input_digest", input_digest},
        {"params", params},
        {"checks", std::move(checks_json)},
        {"summary",
         {{"pass", npass},
          {"fail", nfail},
          {"indeterminate", nindet},
          {"overall", to_string(overall())}}},
    };
    if (!data.empty()) out["data"] = data;
    if (!notices.empty()) out["notices"] = notices;
    return out;
}

std::string Report::render(bool include_timing) const {
    return to_json(include_timing).dump(2) + "\n";
}

std::string Report::summary_text() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << "[" << to_string(c.result.status) << "] " << c.result.name;
        if (!c.result.witness.empty()) os << "  witness: " << c.result.witness;
        if (!c.result.detail.empty()) os << "  (" << c.result.detail << ")";
        os << "\n";
    }
    for (const auto& n : notices) os << "note: " << n << "\n";
    os << "overall: " << to_string(overall()) << "\n";
    return os.str();
}

} // namespace coflat
