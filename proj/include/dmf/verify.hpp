#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmf/field.hpp"

namespace dmf {

struct RunConfig {
    uint32_t p = 3;
    uint32_t r = 1;
    std::vector<uint32_t> modulus;  // optional explicit modulus for r > 1
    int64_t prec = 0;               // 0 = per-suite default
    uint64_t seed = 0x5eed;
    int64_t degree_limit = 100000;
    std::string format = "json";    // "json" | "text"
    // optional prime/range overrides, canonical text encoding
    std::string P, P1, P2, Q;
    int64_t kmax = 0;

    FieldPtr make_field() const;
    uint32_t q() const;
};

struct CheckResult {
    std::string name;
    std::string label;    // the claim being machine-checked
    bool pass = false;
    std::string witness;  // first failing datum, empty on pass
    int64_t certified_prec = 0;
};

struct SuiteReport {
    std::string suite;
    RunConfig config;
    std::vector<CheckResult> checks;
    int64_t elapsed_ms = 0;

    bool all_pass() const;
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// runs one named suite; throws value_error for unknown names
SuiteReport run_suite(const std::string& name, const RunConfig& cfg);

std::string report_to_json(const SuiteReport& report);  // deterministic field order
std::string report_to_text(const SuiteReport& report);

}  // namespace dmf
