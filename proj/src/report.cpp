#include "sector_heat/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "sector_heat/errors.hpp"

namespace sector_heat {

VerificationReport VerificationReport::make(std::string name, double violation, double tolerance,
                                            std::string fp) {
    VerificationReport r;
    r.name = std::move(name);
    r.violation = violation;
    r.tolerance = tolerance;
    r.pass = violation <= tolerance;
    r.fingerprint = std::move(fp);
    return r;
}

double VerificationReport::metric(const std::string& key) const {
    for (const auto& [k, v] : metrics)
        if (k == key) return v;
    throw std::out_of_range("no metric " + key + " in report " + name);
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fingerprint(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string serialize_reports(const std::vector<VerificationReport>& reports) {
    std::ostringstream os;
    for (const auto& r : reports) {
        os << "[check]\n";
        os << "name = " << r.name << "\n";
        os << "violation = " << format_double(r.violation) << "\n";
        os << "tolerance = " << format_double(r.tolerance) << "\n";
        os << "pass = " << (r.pass ? "true" : "false") << "\n";
        os << "fingerprint = " << r.fingerprint << "\n";
        for (const auto& [k, v] : r.metrics) os << "metric." << k << " = " << format_double(v) << "\n";
        if (!r.note.empty()) os << "note = " << r.note << "\n";
        os << "\n";
    }
    return os.str();
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& s) {
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw ConfigError("bad number in report: " + s);
    return v;
}

}  // namespace

std::vector<VerificationReport> parse_reports(const std::string& text) {
    std::vector<VerificationReport> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line == "[check]") {
            out.emplace_back();
            continue;
        }
        if (out.empty()) throw ConfigError("report record before [check]");
        // Keys never contain spaces, names and metric keys may contain '='.
        const auto eq = line.find(" =");
        if (eq == std::string::npos) throw ConfigError("malformed report line: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 2));
        auto& r = out.back();
        if (key == "name")
            r.name = val;
        else if (key == "violation")
            r.violation = parse_number(val);
        else if (key == "tolerance")
            r.tolerance = parse_number(val);
        else if (key == "pass")
            r.pass = val == "true";
        else if (key == "fingerprint")
            r.fingerprint = val;
        else if (key == "note")
            r.note = val;
        else if (key.rfind("metric.", 0) == 0)
            r.add(key.substr(7), parse_number(val));
    }
    return out;
}

}  // namespace sector_heat
