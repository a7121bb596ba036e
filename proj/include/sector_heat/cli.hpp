#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sector_heat/config.hpp"
#include "sector_heat/domain.hpp"
#include "sector_heat/report.hpp"

namespace sector_heat {

enum ExitCode { kExitOk = 0, kExitFailedChecks = 1, kExitConfig = 2, kExitNumerical = 3 };

/// Field table: `# fingerprint=...`, header x1..xN,value,time, then one row per node.
void write_field_table(const Field& f, const std::filesystem::path& path, const std::string& fp);

/// Per-check summary table with the same fingerprint line.
void write_summary_table(const std::vector<VerificationReport>& reports,
                         const std::filesystem::path& path, const std::string& fp);

/// Experiments behind each subcommand. They write their tables into `out` and return the
/// reports; exceptions propagate.
std::vector<VerificationReport> run_solve(const RunConfig& cfg, const std::filesystem::path& out,
                                          std::ostream& log);
std::vector<VerificationReport> run_verify(const RunConfig& cfg, const std::filesystem::path& out,
                                           std::ostream& log);
std::vector<VerificationReport> run_asymptotics(const RunConfig& cfg, const std::filesystem::path& out,
                                                std::ostream& log);
std::vector<VerificationReport> run_eigen(const RunConfig& cfg, const std::filesystem::path& out,
                                          std::ostream& log);
/// Collects every *_reports.txt in `out` into report_summary.csv.
std::vector<VerificationReport> run_report(const std::filesystem::path& out, std::ostream& log);

/// Full driver: load and validate the config (exit 2 before anything is written), run the
/// subcommand, write `<subcommand>_reports.txt` and `<subcommand>_summary.csv`, and map the
/// outcome to an exit code. `jobs` <= 0 falls back to SECTOR_HEAT_JOBS.
int run_cli(const std::string& subcommand, const std::string& config_path, const std::string& out_dir,
            int jobs, std::ostream& log, std::ostream& err);

}  // namespace sector_heat
