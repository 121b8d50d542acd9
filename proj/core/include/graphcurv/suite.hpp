#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "graphcurv/checks.hpp"

namespace graphcurv {

struct FamilySpec {
    std::string name;
    /// One entry per instance; arity depends on the family
    /// (n | d | [d, r] | [degree, r]).
    std::vector<std::vector<int>> sizes;
    std::string measure = "normalized";
};

struct CheckSpec {
    std::string name;          // buser | cheeger-bound | pseudo-poincare |
                               // semigroup | dgg | indicator-bound
    std::string mode = "finite";  // buser only
    bool expect_fail = false;
    double curvature_shift = 0.0;  // tightness probes shift K upward
    std::vector<double> times;     // empty = per-check defaults
    int samples = 0;               // 0 = per-check default
    std::vector<std::string> families;  // empty = all applicable
};

struct SuiteConfig {
    std::vector<FamilySpec> families;
    std::vector<std::uint64_t> seeds = {1};
    std::vector<CheckSpec> checks;
    std::map<std::string, double> tolerances;  // per-check overrides
    int enumeration_cap = kDefaultEnumerationCap;
    int vertex_cap = kDefaultVertexCap;
};

/// The shipped configuration: every generated family, every check.
SuiteConfig default_config();

SuiteConfig parse_config(const std::string& json);
std::string to_json_string(const SuiteConfig& config);

struct SuiteReport {
    std::vector<CheckReport> reports;
    int total = 0;
    int passed = 0;
    int failed = 0;
    int skipped = 0;
    int expected_fails = 0;    // probes that failed as expected
    int unexpected = 0;        // probes that passed although expected to fail
    bool all_passed = false;   // no plain failures and no unexpected outcomes
    double total_ms = 0.0;
};

/// Runs every configured check over every configured graph instance and
/// seed. Deterministic for a fixed config: the report order and all
/// non-timing values are reproducible bit for bit.
SuiteReport run_suite(const SuiteConfig& config);

/// Timing values live under the separate "timings" key so reports can be
/// compared byte-for-byte after dropping it.
std::string to_json_string(const SuiteReport& report);

} // namespace graphcurv
