#include "geocoh/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "geocoh/states.hpp"
#include "geocoh/tradeoff.hpp"

namespace geocoh::cli {
namespace {

using nlohmann::json;

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string optional_csv(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

bool oracle_enabled(OracleMode mode, int dim) {
  switch (mode) {
    case OracleMode::On: return true;
    case OracleMode::Off: return false;
    case OracleMode::Auto: return dim <= kAutoOracleMaxDim;
  }
  return false;
}

// Writes to `path`, or to `out` when the path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw FileNotFound("cannot write " + path);
  file << text;
  if (!file) throw FileNotFound("write failed for " + path);
}

StateFile to_state_file(const DensityMatrix& rho, std::string label) {
  return {std::move(label), rho.matrix()};
}

EnsembleRow ensemble_row(const EnsembleOptions& opts, int index) {
  const int rank = opts.rank == 0 ? opts.d : opts.rank;
  const DensityMatrix rho =
      random_density(opts.d, rank, derive_seed(opts.seed, static_cast<std::uint64_t>(index)));
  const BoundsReport bounds = cg_bounds(rho);
  const OracleResult oracle = maximize_over_simplex(rho, Objective::Fidelity, opts.oracle);

  EnsembleRow row;
  row.index = index;
  row.lower = bounds.lower;
  row.upper = bounds.upper;
  row.oracle_cg = std::max(0.0, 1.0 - oracle.value);
  row.oracle_converged = oracle.converged;
  row.gap_lower = row.oracle_cg - row.lower;
  row.gap_upper = row.upper - row.oracle_cg;
  row.exact_cg = bounds.exact;
  row.l1_budget = check_l1_tradeoff(rho).budget;
  row.g_budget = check_geometric_tradeoff(rho, bounds.exact.value_or(row.oracle_cg)).budget;
  row.violation = row.gap_lower < -kEnsembleLowerTol || row.gap_upper < -kEnsembleUpperTol ||
                  row.l1_budget > 1.0 + kEnsembleL1BudgetTol ||
                  row.g_budget > 1.0 + kEnsembleGBudgetTol ||
                  (row.exact_cg && std::abs(row.oracle_cg - *row.exact_cg) > kEnsembleExactTol);
  return row;
}

}  // namespace

AnalysisReport analyze(const StateFile& state, OracleMode mode, const ValidationConfig& validation,
                       const OracleConfig& oracle) {
  const auto start = std::chrono::steady_clock::now();
  const DensityMatrix rho = validate_density(state.matrix, validation);

  AnalysisReport r;
  r.label = state.label;
  r.dim = rho.dim();
  r.purity = purity(rho);
  r.c_l1 = c_l1(rho);
  r.c_rel = c_rel(rho);
  r.bounds = cg_bounds(rho);
  if (oracle_enabled(mode, rho.dim())) {
    const OracleResult o = maximize_over_simplex(rho, Objective::Fidelity, oracle);
    r.oracle_cg = std::max(0.0, 1.0 - o.value);
    r.oracle_converged = o.converged;
  }
  r.m_linear = m_linear(rho);
  r.m_geometric = m_geometric(rho);
  r.tradeoff_l1_budget = check_l1_tradeoff(rho).budget;
  if (const auto cg = r.bounds.exact ? r.bounds.exact : r.oracle_cg) {
    r.tradeoff_g_budget = check_geometric_tradeoff(rho, *cg).budget;
  }
  r.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string report_json(const AnalysisReport& r) {
  json doc = {
      {"label", r.label},
      {"dim", r.dim},
      {"purity", r.purity},
      {"c_l1", r.c_l1},
      {"c_rel", r.c_rel},
      {"lower", r.bounds.lower},
      {"upper_diag", r.bounds.upper_diag},
      {"upper_sqrt", r.bounds.upper_sqrt},
      {"upper", r.bounds.upper},
      {"exact_cg", optional_json(r.bounds.exact)},
      {"exact_provenance", std::string(to_string(r.bounds.exact_provenance))},
      {"oracle_cg", optional_json(r.oracle_cg)},
      {"oracle_converged", r.oracle_converged ? json(*r.oracle_converged) : json(nullptr)},
      {"m_linear", r.m_linear},
      {"m_geometric", r.m_geometric},
      {"tradeoff_l1_budget", r.tradeoff_l1_budget},
      {"tradeoff_g_budget", optional_json(r.tradeoff_g_budget)},
      {"elapsed_ms", r.elapsed_ms},
  };
  return doc.dump(2) + "\n";
}

std::string report_csv(const AnalysisReport& r) {
  std::ostringstream out;
  out << "label,dim,purity,c_l1,c_rel,lower,upper_diag,upper_sqrt,upper,exact_cg,"
         "exact_provenance,oracle_cg,oracle_converged,m_linear,m_geometric,"
         "tradeoff_l1_budget,tradeoff_g_budget,elapsed_ms\n";
  out << csv_escape(r.label) << ',' << r.dim << ',' << format_double(r.purity) << ','
      << format_double(r.c_l1) << ',' << format_double(r.c_rel) << ','
      << format_double(r.bounds.lower) << ',' << format_double(r.bounds.upper_diag) << ','
      << format_double(r.bounds.upper_sqrt) << ',' << format_double(r.bounds.upper) << ','
      << optional_csv(r.bounds.exact) << ',' << to_string(r.bounds.exact_provenance) << ','
      << optional_csv(r.oracle_cg) << ','
      << (r.oracle_converged ? (*r.oracle_converged ? "true" : "false") : "") << ','
      << format_double(r.m_linear) << ',' << format_double(r.m_geometric) << ','
      << format_double(r.tradeoff_l1_budget) << ',' << optional_csv(r.tradeoff_g_budget) << ','
      << format_double(r.elapsed_ms) << '\n';
  return out.str();
}

std::vector<SweepRecord> mcms_sweep(int d, double p_min, double p_max, int steps, bool with_oracle,
                                    const OracleConfig& oracle) {
  if (d < 2) throw Error(ErrorKind::BadParameter, "--d must be at least 2");
  if (!(p_min > 0.0 && p_min <= p_max && p_max <= 1.0)) {
    throw Error(ErrorKind::BadParameter, "need 0 < p-min <= p-max <= 1");
  }
  if (steps < 1) throw Error(ErrorKind::BadParameter, "--p-steps must be at least 1");

  std::vector<SweepRecord> records;
  records.reserve(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    const double p = steps == 1 ? p_min : p_min + k * (p_max - p_min) / (steps - 1);
    const DensityMatrix rho = mcms({d, p});
    SweepRecord rec;
    rec.d = d;
    rec.p = p;
    rec.lower = cg_lower(rho);
    rec.upper_diag = cg_upper_diag(rho);
    rec.upper_sqrt = cg_upper_sqrt(rho);
    rec.exact_cg = cg_exact_mcms(d, p);
    if (with_oracle) rec.oracle_cg = cg_reference(rho, oracle);
    records.push_back(rec);
  }
  return records;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  out << kSweepHeader << '\n';
  for (const SweepRecord& r : records) {
    out << r.d << ',' << format_double(r.p) << ',' << format_double(r.lower) << ','
        << format_double(r.upper_diag) << ',' << format_double(r.upper_sqrt) << ','
        << format_double(r.exact_cg) << ',' << optional_csv(r.oracle_cg) << '\n';
  }
  return out.str();
}

EnsembleResult run_ensemble(const EnsembleOptions& opts) {
  if (opts.d < 2) throw Error(ErrorKind::BadParameter, "--d must be at least 2");
  if (opts.count < 1) throw Error(ErrorKind::BadParameter, "--count must be at least 1");
  if (opts.rank < 0 || opts.rank > opts.d) {
    throw Error(ErrorKind::BadParameter, "--rank must lie in 1..d");
  }

  EnsembleResult result;
  result.rows.resize(static_cast<std::size_t>(opts.count));
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers =
      std::min(opts.count, opts.threads > 0 ? opts.threads : static_cast<int>(hw));

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (int i = next++; i < opts.count; i = next++) {
      try {
        result.rows[static_cast<std::size_t>(i)] = ensemble_row(opts, i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  EnsembleSummary& s = result.summary;
  s.count = opts.count;
  s.max_gap_lower = -std::numeric_limits<double>::infinity();
  s.max_gap_upper = -std::numeric_limits<double>::infinity();
  for (const EnsembleRow& row : result.rows) {
    s.mean_gap_lower += row.gap_lower / opts.count;
    s.mean_gap_upper += row.gap_upper / opts.count;
    s.max_gap_lower = std::max(s.max_gap_lower, row.gap_lower);
    s.max_gap_upper = std::max(s.max_gap_upper, row.gap_upper);
    if (row.exact_cg) {
      s.max_exact_error = std::max(s.max_exact_error, std::abs(row.oracle_cg - *row.exact_cg));
    }
    if (!row.oracle_converged) ++s.unconverged;
    if (row.violation) ++s.violation_count;
  }
  return result;
}

std::string ensemble_csv(const EnsembleResult& result) {
  std::ostringstream out;
  out << "index,lower,upper,oracle_cg,gap_lower,gap_upper,l1_budget,g_budget,exact_cg\n";
  for (const EnsembleRow& r : result.rows) {
    out << r.index << ',' << format_double(r.lower) << ',' << format_double(r.upper) << ','
        << format_double(r.oracle_cg) << ',' << format_double(r.gap_lower) << ','
        << format_double(r.gap_upper) << ',' << format_double(r.l1_budget) << ','
        << format_double(r.g_budget) << ',' << optional_csv(r.exact_cg) << '\n';
  }
  const EnsembleSummary& s = result.summary;
  out << "summary_fields,count,mean_gap_lower,max_gap_lower,mean_gap_upper,max_gap_upper,"
         "max_exact_error,unconverged,violation_count\n";
  out << "summary," << s.count << ',' << format_double(s.mean_gap_lower) << ','
      << format_double(s.max_gap_lower) << ',' << format_double(s.mean_gap_upper) << ','
      << format_double(s.max_gap_upper) << ',' << format_double(s.max_exact_error) << ','
      << s.unconverged << ',' << s.violation_count << '\n';
  return out.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometric measure of coherence: bounds, reference optimizer, trade-offs",
               "geocoh"};
  app.require_subcommand(1);

  ValidationConfig validation;
  OracleConfig oracle;
  auto add_oracle_options = [&](CLI::App* cmd) {
    cmd->add_option("--starts", oracle.n_starts, "Random simplex starts")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-iters", oracle.max_iters, "Ascent iterations per start")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--objective-tol", oracle.objective_tol, "Stop when a step gains less")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--oracle-seed", oracle.seed, "Seed for random starts");
  };

  // analyze
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Report measures and bounds for a state file");
  std::string state_path;
  std::string analyze_oracle = "auto";
  bool as_json = false;
  bool as_csv = false;
  analyze_cmd->add_option("state", state_path, "State file (JSON)")->required();
  analyze_cmd->add_option("--oracle", analyze_oracle, "Run the reference optimizer")
      ->check(CLI::IsMember({"on", "off", "auto"}));
  auto* json_flag = analyze_cmd->add_flag("--json", as_json, "JSON report (default)");
  analyze_cmd->add_flag("--csv", as_csv, "CSV report")->excludes(json_flag);
  analyze_cmd->add_option("--herm-tol", validation.hermitian_tol, "Hermiticity tolerance")
      ->check(CLI::NonNegativeNumber);
  analyze_cmd->add_option("--psd-tol", validation.negative_eigenvalue_tol,
                          "Negative-eigenvalue clamp tolerance")
      ->check(CLI::NonNegativeNumber);
  analyze_cmd->add_option("--trace-tol", validation.trace_tol, "Trace tolerance")
      ->check(CLI::NonNegativeNumber);
  add_oracle_options(analyze_cmd);

  // mcms-sweep
  CLI::App* sweep_cmd = app.add_subcommand("mcms-sweep", "Bounds and exact C_g along the MCMS family");
  int sweep_d = 3;
  double p_min = 0.05;
  double p_max = 1.0;
  int p_steps = 20;
  std::string sweep_oracle = "on";
  std::string sweep_out;
  sweep_cmd->add_option("--d", sweep_d, "Dimension");
  sweep_cmd->add_option("--p-min", p_min, "Smallest mixing parameter");
  sweep_cmd->add_option("--p-max", p_max, "Largest mixing parameter");
  sweep_cmd->add_option("--p-steps", p_steps, "Number of points");
  sweep_cmd->add_option("--oracle", sweep_oracle, "Fill the oracle_cg column")
      ->check(CLI::IsMember({"on", "off"}));
  sweep_cmd->add_option("--out", sweep_out, "CSV output path (stdout if omitted)");
  add_oracle_options(sweep_cmd);

  // ensemble
  CLI::App* ensemble_cmd = app.add_subcommand("ensemble", "Check the bounds on random states");
  EnsembleOptions ens;
  std::string ensemble_out;
  ensemble_cmd->add_option("--d", ens.d, "Dimension")->required();
  ensemble_cmd->add_option("--count", ens.count, "Number of states");
  ensemble_cmd->add_option("--rank", ens.rank, "Rank of the random states (default d)");
  ensemble_cmd->add_option("--seed", ens.seed, "Ensemble seed");
  ensemble_cmd->add_option("--threads", ens.threads, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  ensemble_cmd->add_option("--out", ensemble_out, "CSV output path (stdout if omitted)");
  add_oracle_options(ensemble_cmd);

  // gen
  CLI::App* gen_cmd = app.add_subcommand("gen", "Write a state file");
  std::string kind;
  int gen_d = 0;
  double gen_p = 1.0;
  int gen_rank = 0;
  std::uint64_t gen_seed = 1;
  std::vector<double> probs;
  std::string gen_label;
  std::string gen_out;
  gen_cmd->add_option("--kind", kind, "State family")
      ->required()
      ->check(CLI::IsMember({"mcms", "random", "pure", "maxcoherent", "incoherent"}));
  gen_cmd->add_option("--d", gen_d, "Dimension");
  gen_cmd->add_option("--p", gen_p, "MCMS mixing parameter");
  gen_cmd->add_option("--rank", gen_rank, "Rank for --kind random (default d)");
  gen_cmd->add_option("--seed", gen_seed, "Seed for random kinds");
  gen_cmd->add_option("--probs", probs, "Diagonal for --kind incoherent")->delimiter(',');
  gen_cmd->add_option("--label", gen_label, "Label stored in the file");
  gen_cmd->add_option("--out", gen_out, "Output path (stdout if omitted)");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("geocoh");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadParameter;
  }

  try {
    if (analyze_cmd->parsed()) {
      StateFile state;
      try {
        state = read_state_file(state_path);
      } catch (const FileNotFound& e) {
        err << "FileNotFound: " << e.what() << '\n';
        return kExitFileNotFound;
      } catch (const ParseError& e) {
        err << "ParseError: " << e.what() << '\n';
        return kExitParse;
      }
      const OracleMode mode = analyze_oracle == "on"    ? OracleMode::On
                              : analyze_oracle == "off" ? OracleMode::Off
                                                        : OracleMode::Auto;
      AnalysisReport report;
      try {
        report = analyze(state, mode, validation, oracle);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::BadParameter) throw;
        err << "ValidationError: " << e.what() << '\n';
        return kExitValidation;
      }
      out << (as_csv ? report_csv(report) : report_json(report));
      return kExitOk;
    }
    if (sweep_cmd->parsed()) {
      const auto records = mcms_sweep(sweep_d, p_min, p_max, p_steps, sweep_oracle == "on", oracle);
      emit(sweep_out, sweep_csv(records), out);
      return kExitOk;
    }
    if (ensemble_cmd->parsed()) {
      ens.oracle = oracle;
      const EnsembleResult result = run_ensemble(ens);
      emit(ensemble_out, ensemble_csv(result), out);
      const EnsembleSummary& s = result.summary;
      if (!ensemble_out.empty()) {
        json summary = {{"count", s.count},
                        {"mean_gap_lower", s.mean_gap_lower},
                        {"max_gap_lower", s.max_gap_lower},
                        {"mean_gap_upper", s.mean_gap_upper},
                        {"max_gap_upper", s.max_gap_upper},
                        {"max_exact_error", s.max_exact_error},
                        {"unconverged", s.unconverged},
                        {"violation_count", s.violation_count}};
        out << summary.dump() << '\n';
      }
      if (s.violation_count > 0) {
        err << "ensemble: " << s.violation_count << " state(s) violate the bounds\n";
        return kExitCheckFailed;
      }
      return kExitOk;
    }
    if (gen_cmd->parsed()) {
      StateFile state;
      std::ostringstream label;
      if (kind == "mcms") {
        state = to_state_file(mcms({gen_d, gen_p}), "");
        label << "mcms d=" << gen_d << " p=" << format_double(gen_p);
      } else if (kind == "random") {
        const int rank = gen_rank == 0 ? gen_d : gen_rank;
        state = to_state_file(random_density(gen_d, rank, gen_seed), "");
        label << "random d=" << gen_d << " rank=" << rank << " seed=" << gen_seed;
      } else if (kind == "pure") {
        state = to_state_file(random_pure(gen_d, gen_seed), "");
        label << "pure d=" << gen_d << " seed=" << gen_seed;
      } else if (kind == "maxcoherent") {
        state = to_state_file(max_coherent_state(gen_d), "");
        label << "maxcoherent d=" << gen_d;
      } else {
        if (probs.empty()) throw Error(ErrorKind::BadParameter, "--probs is required");
        state = to_state_file(incoherent(ProbabilityVector(probs)), "");
        label << "incoherent d=" << probs.size();
      }
      state.label = gen_label.empty() ? label.str() : gen_label;
      emit(gen_out, serialize_state(state), out);
      return kExitOk;
    }
  } catch (const FileNotFound& e) {
    err << "IoError: " << e.what() << '\n';
    return kExitFileNotFound;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitBadParameter;
  }
  return kExitBadParameter;
}

}  // namespace geocoh::cli
