#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nlh {

struct CheckRecord {
    std::string name;
    std::string anchor;       ///< short tag of the verified statement
    bool pass = false;
    double value = 0.0;       ///< measured quantity (worst case over the check)
    double tolerance = 0.0;
    double runtime_ms = 0.0;
    std::map<std::string, double> details;
};

struct VerifyConfig {
    int nodes = 256;
    double map_scale = 1.0;
    int kmax = 6;
    double tol_residual = 1e-6;
    std::uint64_t seed = 42;
};

struct VerificationReport {
    std::string version;
    VerifyConfig config;
    std::vector<CheckRecord> checks;
    bool all_pass() const;
};

/// Run the full verification suite. Deterministic for a fixed config.
/// Numerical failures inside a check are caught and recorded as fail.
VerificationReport run_verification_suite(const VerifyConfig& config);

/// Serialize the report; format is "json" or "csv".
/// Unknown formats throw std::invalid_argument; I/O failures std::runtime_error.
void emit_report(const VerificationReport& report, const std::string& format,
                 const std::string& path);

std::string report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const std::string& text);
std::string report_to_csv(const VerificationReport& report);

inline const char* version_string() { return "0.1.0"; }

} // namespace nlh
