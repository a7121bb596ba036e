#include "sector_heat/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "sector_heat/errors.hpp"
#include "sector_heat/report.hpp"

namespace sector_heat {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    errno = 0;
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0' || errno == ERANGE)
        throw ConfigError(key + ": not a number: '" + v + "'");
    return d;
}

long long to_integer(const std::string& key, const std::string& v) {
    errno = 0;
    char* end = nullptr;
    const long long d = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || *end != '\0' || errno == ERANGE)
        throw ConfigError(key + ": not an integer: '" + v + "'");
    return d;
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const auto& s : split_list(v)) out.push_back(to_double(key, s));
    return out;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
    return s;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
}

struct Binding {
    const char* key;
    const char* doc;
    std::function<std::string(const RunConfig&)> get;
    std::function<void(RunConfig&, const std::string&)> set;
};

#define REAL(k, field, doc)                                                                   \
    Binding {                                                                                 \
        k, doc, [](const RunConfig& c) { return format_double(c.field); },                   \
            [](RunConfig& c, const std::string& v) { c.field = to_double(k, v); }             \
    }
#define INT(k, field, doc)                                                                    \
    Binding {                                                                                 \
        k, doc, [](const RunConfig& c) { return std::to_string(c.field); },                  \
            [](RunConfig& c, const std::string& v) {                                          \
                c.field = static_cast<decltype(c.field)>(to_integer(k, v));                   \
            }                                                                                 \
    }
#define TEXT(k, field, doc)                                                                   \
    Binding {                                                                                 \
        k, doc, [](const RunConfig& c) { return c.field; },                                  \
            [](RunConfig& c, const std::string& v) { c.field = v; }                           \
    }
#define REALS(k, field, doc)                                                                  \
    Binding {                                                                                 \
        k, doc, [](const RunConfig& c) { return join(c.field); },                            \
            [](RunConfig& c, const std::string& v) { c.field = to_doubles(k, v); }            \
    }

const std::vector<Binding>& bindings() {
    static const std::vector<Binding> table = {
        INT("domain.N", spec.N, "ambient dimension"),
        INT("domain.m", spec.m, "Dirichlet axes; 0 is the free-space validation mode"),
        REAL("domain.gamma", spec.gamma, "0 < gamma < N"),
        REAL("domain.alpha", spec.alpha, "absorption exponent"),
        REAL("grid.h", solver.h, "spacing, length units"),
        REAL("grid.radius", solver.radius, "truncation radius per axis"),
        Binding{"solver.order", "strang | lie",
                [](const RunConfig& c) {
                    return std::string(c.solver.order == Splitting::Strang ? "strang" : "lie");
                },
                [](RunConfig& c, const std::string& v) {
                    if (v == "strang")
                        c.solver.order = Splitting::Strang;
                    else if (v == "lie")
                        c.solver.order = Splitting::Lie;
                    else
                        throw ConfigError("solver.order must be strang or lie");
                }},
        REAL("solver.dt0", solver.dt0, "first step, time units; keep >= 2 h^2"),
        REAL("solver.growth", solver.growth, "geometric growth of the step"),
        REAL("solver.dt_max", solver.dt_max, "largest step"),
        REAL("solver.dt_rel", solver.dt_rel, "step cap relative to t (inf disables)"),
        REALS("solver.snapshots", solver.snapshots, "increasing output times"),
        REAL("solver.cutoff", solver.kernel_cutoff, "kernel support in units of sqrt(tau)"),
        TEXT("solver.absorption", absorption, "power | exponential"),
        TEXT("data.profile", profile, "psi0 | truncated | log_periodic | constant | gamma_prime_tail"),
        REAL("data.scale", scale, "multiplier of the profile"),
        REAL("data.rho", rho, "truncation radius"),
        TEXT("data.keep", keep, "inner | outer part kept by the truncation"),
        REAL("data.amplitude", amplitude, "log-periodic amplitude in [0,1)"),
        REAL("data.omega", omega, "log-periodic angular frequency"),
        REAL("data.phase", phase, "log-periodic phase"),
        REAL("data.A", A, "antisymmetric constant"),
        REAL("data.gamma_prime", gamma_prime, "tail exponent, gamma < gamma' < N"),
        REAL("data.tail_cutoff", tail_cutoff, "tail support |x| > cutoff"),
        Binding{"experiment.suites", "comma separated check suites",
                [](const RunConfig& c) { return join(c.suites); },
                [](RunConfig& c, const std::string& v) { c.suites = split_list(v); }},
        REALS("experiment.times", times, "times of the ladder checks"),
        REALS("experiment.ladder", ladder, "dilation ladder"),
        REALS("experiment.covariance_lambdas", covariance_lambdas, "lambdas of the covariance checks"),
        REAL("experiment.window", window, "comparison box [0,w]^m x [-w,w]^(N-m)"),
        REAL("experiment.window_h", window_h, "spacing of the comparison box"),
        REAL("experiment.kato_scale", kato_scale, "second data of the comparison is scale * data"),
        INT("experiment.samples", samples, "random samples of the kernel domination check"),
        REAL("profile.h", profile_h, "spacing of the constant-data runs"),
        REAL("profile.radius", profile_radius, "radius of the constant-data runs"),
        REAL("profile.dt0", profile_dt0, "first step of the constant-data runs"),
        REALS("profile.ladder", profile_ladder, "increasing constants A"),
        REAL("eigen.h", eigen_h, "eigenvalue grid spacing"),
        TEXT("eigen.boundary", eigen_boundary, "ghost | mask"),
        REAL("elliptic.h", elliptic_h, "finite-difference step"),
        INT("elliptic.order", elliptic_order, "stencil order, 2 or 4"),
        REAL("elliptic.sample_spacing", elliptic_spacing, "sample lattice spacing, 0 means h"),
        INT("seed", seed, "seed of randomized sampling"),
        TEXT("output.dir", out_dir, "output directory"),
    };
    return table;
}

#undef REAL
#undef INT
#undef TEXT
#undef REALS

const std::vector<std::string> kSuites = {"kernel",   "bounds",    "generalized", "kato",  "lower",
                                          "elliptic", "splitting", "regime",      "covariance"};

}  // namespace

void RunConfig::validate() const {
    try {
        spec.validate();
        solver.validate();
        initial_data().validate(spec);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (absorption != "power" && absorption != "exponential")
        throw ConfigError("solver.absorption must be power or exponential");
    if (keep != "inner" && keep != "outer") throw ConfigError("data.keep must be inner or outer");
    for (const auto& s : suites)
        if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end())
            throw ConfigError("unknown suite '" + s + "'");
    auto positive = [](const std::vector<double>& v, const char* key, bool increasing) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!(v[i] > 0.0) || !std::isfinite(v[i])) throw ConfigError(std::string(key) + " must be positive");
            if (increasing && i && !(v[i] > v[i - 1]))
                throw ConfigError(std::string(key) + " must be increasing");
        }
    };
    positive(times, "experiment.times", true);
    positive(ladder, "experiment.ladder", true);
    positive(covariance_lambdas, "experiment.covariance_lambdas", false);
    positive(profile_ladder, "profile.ladder", true);
    if (!(window > 0.0) || !(window_h > 0.0) || window_h > window)
        throw ConfigError("experiment.window needs 0 < window_h <= window");
    if (!(profile_h > 0.0) || !(profile_radius > profile_h) || !(profile_dt0 > 0.0))
        throw ConfigError("profile grid parameters must be positive");
    if (!(eigen_h > 0.0)) throw ConfigError("eigen.h must be positive");
    if (eigen_boundary != "ghost" && eigen_boundary != "mask")
        throw ConfigError("eigen.boundary must be ghost or mask");
    if (!(elliptic_h > 0.0)) throw ConfigError("elliptic.h must be positive");
    if (elliptic_order != 2 && elliptic_order != 4) throw ConfigError("elliptic.order must be 2 or 4");
    if (elliptic_spacing < 0.0) throw ConfigError("elliptic.sample_spacing must be >= 0");
    if (!(kato_scale >= 0.0)) throw ConfigError("experiment.kato_scale must be >= 0");
    if (out_dir.empty()) throw ConfigError("output.dir is empty");
}

ProfileSpec RunConfig::initial_data() const {
    ProfileSpec p;
    if (profile == "psi0")
        p = ProfileSpec::psi0(scale);
    else if (profile == "truncated")
        p = ProfileSpec::truncated(rho, keep == "inner" ? Keep::Inner : Keep::Outer, scale);
    else if (profile == "log_periodic") {
        p = ProfileSpec::log_periodic(amplitude, omega, phase);
        p.scale = scale;
    } else if (profile == "constant") {
        p = ProfileSpec::constant(A);
        p.scale = scale;
    } else if (profile == "gamma_prime_tail") {
        p = ProfileSpec::gamma_prime_tail(gamma_prime, tail_cutoff);
        p.scale = scale;
    } else {
        throw ConfigError("unknown data.profile '" + profile + "'");
    }
    return p;
}

BallBoundary RunConfig::ball_boundary() const {
    return eigen_boundary == "mask" ? BallBoundary::Mask : BallBoundary::Ghost;
}

std::string RunConfig::serialize() const {
    std::string out;
    for (const auto& b : bindings())
        out += std::string("# ") + b.doc + "\n" + b.key + " = " + b.get(*this) + "\n";
    return out;
}

RunConfig RunConfig::parse(const std::string& text) {
    RunConfig c;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    std::vector<std::string> seen;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto& table = bindings();
        const auto it = std::find_if(table.begin(), table.end(),
                                     [&](const Binding& b) { return key == b.key; });
        if (it == table.end())
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (std::find(seen.begin(), seen.end(), key) != seen.end())
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        seen.push_back(key);
        try {
            it->set(c, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return c;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

// The output directory does not change results, so it stays out of the fingerprint.
std::string RunConfig::fingerprint() const {
    RunConfig c = *this;
    c.out_dir = "out";
    return sector_heat::fingerprint(c.serialize());
}

}  // namespace sector_heat
