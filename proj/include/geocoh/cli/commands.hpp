#pragma once

// Subcommands of the `geocoh` tool. Each returns a process exit code; the
// executable is a thin wrapper around run().

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "geocoh/cli/state_file.hpp"
#include "geocoh/coherence.hpp"
#include "geocoh/oracle.hpp"

namespace geocoh::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitValidation = 2,
  kExitFileNotFound = 3,
  kExitParse = 4,
  kExitBadParameter = 5,
};

enum class OracleMode { Auto, On, Off };

/// Largest dimension for which OracleMode::Auto runs the optimizer.
inline constexpr int kAutoOracleMaxDim = 8;

struct AnalysisReport {
  std::string label;
  int dim = 0;
  double purity = 0.0;
  double c_l1 = 0.0;
  double c_rel = 0.0;
  BoundsReport bounds;
  std::optional<double> oracle_cg;
  std::optional<bool> oracle_converged;
  double m_linear = 0.0;
  double m_geometric = 0.0;
  double tradeoff_l1_budget = 0.0;
  std::optional<double> tradeoff_g_budget;  // needs an exact or oracle C_g
  double elapsed_ms = 0.0;
};

/// Throws geocoh::Error if the matrix is not a valid density matrix.
AnalysisReport analyze(const StateFile& state, OracleMode mode, const ValidationConfig& validation,
                       const OracleConfig& oracle);

std::string report_json(const AnalysisReport& r);
std::string report_csv(const AnalysisReport& r);

struct SweepRecord {
  int d = 0;
  double p = 0.0;
  double lower = 0.0;
  double upper_diag = 0.0;
  double upper_sqrt = 0.0;
  double exact_cg = 0.0;
  std::optional<double> oracle_cg;
};

inline constexpr const char* kSweepHeader = "d,p,lower,upper_diag,upper_sqrt,exact_cg,oracle_cg";

/// Evenly spaced p in [p_min, p_max] (p_min alone when steps == 1).
/// Throws geocoh::Error(BadParameter).
std::vector<SweepRecord> mcms_sweep(int d, double p_min, double p_max, int steps, bool with_oracle,
                                    const OracleConfig& oracle);

std::string sweep_csv(const std::vector<SweepRecord>& records);

struct EnsembleOptions {
  int d = 2;
  int count = 100;
  int rank = 0;  // 0 means full rank
  std::uint64_t seed = 1;
  int threads = 0;  // 0 means hardware concurrency
  OracleConfig oracle;
};

struct EnsembleRow {
  int index = 0;
  double lower = 0.0;
  double upper = 0.0;
  double oracle_cg = 0.0;
  double gap_lower = 0.0;  // oracle_cg - lower
  double gap_upper = 0.0;  // upper - oracle_cg
  double l1_budget = 0.0;
  double g_budget = 0.0;
  std::optional<double> exact_cg;
  bool oracle_converged = true;
  bool violation = false;
};

struct EnsembleSummary {
  int count = 0;
  double mean_gap_lower = 0.0;
  double max_gap_lower = 0.0;
  double mean_gap_upper = 0.0;
  double max_gap_upper = 0.0;
  double max_exact_error = 0.0;  // max |oracle_cg - exact_cg| over rows with an exact value
  int unconverged = 0;
  int violation_count = 0;
};

struct EnsembleResult {
  std::vector<EnsembleRow> rows;  // ordered by index
  EnsembleSummary summary;
};

/// Tolerances a row must meet; anything else counts as a violation.
inline constexpr double kEnsembleLowerTol = 1e-8;
inline constexpr double kEnsembleUpperTol = 1e-6;
inline constexpr double kEnsembleExactTol = 1e-6;
inline constexpr double kEnsembleL1BudgetTol = 1e-8;
inline constexpr double kEnsembleGBudgetTol = 1e-6;

/// Throws geocoh::Error(BadParameter) for invalid options.
EnsembleResult run_ensemble(const EnsembleOptions& opts);

std::string ensemble_csv(const EnsembleResult& result);

/// Dispatches `args` (without the program name) to a subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geocoh::cli
