#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sector_heat {

/// One named check. Positive violation means the inequality is broken.
struct VerificationReport {
    std::string name;
    double violation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string fingerprint;
    /// Extra measured quantities, kept in insertion order.
    std::vector<std::pair<std::string, double>> metrics;
    std::string note;

    static VerificationReport make(std::string name, double violation, double tolerance,
                                   std::string fingerprint = {});
    void add(std::string key, double value) { metrics.emplace_back(std::move(key), value); }
    double metric(const std::string& key) const;
};

/// Structured key-value text, one [check] record per report.
std::string serialize_reports(const std::vector<VerificationReport>& reports);
std::vector<VerificationReport> parse_reports(const std::string& text);

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
std::string fingerprint(const std::string& text);

/// %.17g formatting that round-trips through strtod.
std::string format_double(double v);

}  // namespace sector_heat
