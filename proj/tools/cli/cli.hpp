#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "nisbound/bounds.hpp"
#include "nisbound/oracle.hpp"

namespace nisbound::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitRuntime = 4;

inline constexpr int kSchemaVersion = 1;

/// Entry point shared by the binary and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// ---- config -----------------------------------------------------------------

/// key=value lines, '#' starts a comment. Keys are the HcOptimizerConfig
/// field names. Throws ParseError on unknown keys or malformed values.
HcOptimizerConfig parse_hc_config(std::string_view text, HcOptimizerConfig base = {});
HcOptimizerConfig load_hc_config(const std::filesystem::path& path);

// ---- bounds -----------------------------------------------------------------

nlohmann::ordered_json bounds_json(const BoundsReport& r);
void write_bounds_text(std::ostream& os, const BoundsReport& r);

// ---- curve ------------------------------------------------------------------

struct CurveRow {
  double a = 0.0;
  double mc_lb = 0.0;
  double mc_ub = 0.0;
  double hc_lb = 0.0;
  double hc_ub = 0.0;
  double ours_lb = 0.0;
  double ours_ub = 0.0;
  std::optional<double> sym_subcube;
  std::optional<double> antisym_subcube;
};

struct CurveDataset {
  double rho = 0.0;
  std::vector<CurveRow> rows;
};

/// 50 log-spaced points in [0.02, 0.5] plus 2^-i for i = 1..5, sorted.
std::vector<double> default_curve_grid();
/// Symmetric case a = b. Throws DomainError for rho outside (0, 1) or a
/// outside (0, 1/2].
CurveDataset build_curve(double rho, std::vector<double> grid, const HcOptimizerConfig& cfg = {});
void write_curve_csv(std::ostream& os, const CurveDataset& data);

// ---- oracle -----------------------------------------------------------------

nlohmann::ordered_json oracle_json(const OracleResult& r, bool with_timing);

// ---- verify -----------------------------------------------------------------

struct IdentityOutcome {
  std::string name;
  std::uint64_t instances = 0;
  std::uint64_t failures = 0;
  double max_error = 0.0;
  std::vector<std::string> details;  // first few failures
};

struct VerifyReport {
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<int> dims;
  std::vector<IdentityOutcome> families;

  bool passed() const;
};

/// Names of the identity families checked by run_verify.
std::vector<std::string> identity_families();

/// Checks every identity family on `trials` random code pairs for each
/// n in {4, 6, 8, 10}. `inject_fault` names a family whose left-hand side is
/// perturbed, to exercise the failure path.
VerifyReport run_verify(std::uint64_t seed, int trials, const std::string& inject_fault = "");
void write_verify_report(std::ostream& os, const VerifyReport& r);

}  // namespace nisbound::cli
