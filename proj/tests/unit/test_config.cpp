#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sector_heat/cli.hpp"
#include "sector_heat/config.hpp"
#include "sector_heat/errors.hpp"

using namespace sector_heat;
namespace fs = std::filesystem;

TEST_CASE("config serialization round trip") {
    RunConfig c;
    c.spec = {2, 2, 0.3, 0.7};
    c.solver.dt0 = 0.1 + 0.2;
    c.solver.snapshots = {0.25, 1.0 / 3.0};
    c.profile = "log_periodic";
    c.omega = 2.0 * 3.141592653589793 / std::log(2.0);
    c.suites = {"kernel", "bounds"};
    c.eigen_boundary = "mask";
    c.seed = 42;
    const std::string text = c.serialize();
    const RunConfig back = RunConfig::parse(text);
    CHECK(back.serialize() == text);
    CHECK(back.fingerprint() == c.fingerprint());
    CHECK(back.solver.dt0 == c.solver.dt0);
    CHECK(back.omega == c.omega);
    CHECK(back.seed == 42);
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(RunConfig::parse("domain.N = 2\nbogus = 1\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::parse("domain.N = 2\ndomain.N = 3\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::parse("domain.N = two\n"), ConfigError);
    RunConfig bad = RunConfig::parse("domain.N = 1\ndomain.m = 1\ndomain.gamma = 1.5\n");
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    RunConfig suites = RunConfig::parse("experiment.suites = kernel, nope\n");
    CHECK_THROWS_AS(suites.validate(), ConfigError);
    CHECK(RunConfig::parse("# comment only\n\n").serialize() == RunConfig{}.serialize());
}

TEST_CASE("malformed config exits 2 without outputs") {
    const fs::path dir = fs::temp_directory_path() / "sector_heat_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        std::ofstream(dir / "bad.cfg") << "domain.N = 1\ndomain.gamma = 3\n";
    }
    std::ostringstream log, err;
    const int code = run_cli("eigen", (dir / "bad.cfg").string(), (dir / "out").string(), 1, log, err);
    CHECK(code == kExitConfig);
    CHECK_FALSE(fs::exists(dir / "out"));
    CHECK(run_cli("bogus", "", "", 1, log, err) == kExitConfig);
}

TEST_CASE("eigen subcommand writes fingerprinted tables deterministically") {
    const fs::path dir = fs::temp_directory_path() / "sector_heat_cli_eigen";
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        std::ofstream(dir / "e.cfg") << "domain.N = 1\ndomain.m = 1\ndomain.gamma = 0.5\neigen.h = 0.01\n";
    }
    std::ostringstream log, err;
    REQUIRE(run_cli("eigen", (dir / "e.cfg").string(), (dir / "a").string(), 1, log, err) == kExitOk);
    REQUIRE(run_cli("eigen", (dir / "e.cfg").string(), (dir / "b").string(), 1, log, err) == kExitOk);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    };
    const std::string a = slurp(dir / "a" / "eigen_field.csv");
    CHECK(a == slurp(dir / "b" / "eigen_field.csv"));
    CHECK(a.rfind("# fingerprint=", 0) == 0);
    CHECK(a.find("x1,value,time") != std::string::npos);
    CHECK(run_cli("report", "", (dir / "a").string(), 1, log, err) == kExitOk);
    CHECK(fs::exists(dir / "a" / "report_summary.csv"));
}
