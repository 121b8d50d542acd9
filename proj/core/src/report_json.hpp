#pragma once

// Build-internal JSON conversion for reports; keeps the json dependency
// out of the public headers.

#include <nlohmann/json.hpp>

#include "graphcurv/checks.hpp"

namespace graphcurv::detail {

inline nlohmann::ordered_json report_to_json(const CheckReport& r) {
    nlohmann::ordered_json j;
    j["check"] = r.check;
    j["graph"] = r.graph;
    j["params"] = r.params;
    j["statement"] = r.statement;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["margin"] = r.margin;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["skipped"] = r.skipped;
    if (r.skipped) j["skip_reason"] = r.skip_reason;
    if (r.indicative) j["indicative"] = true;
    if (r.expected_fail) {
        j["expected_fail"] = true;
        j["expectation_met"] = r.expectation_met;
    }
    if (!r.details.empty()) {
        nlohmann::ordered_json d;
        for (const auto& [key, value] : r.details) d[key] = value;
        j["details"] = std::move(d);
    }
    return j;
}

} // namespace graphcurv::detail
