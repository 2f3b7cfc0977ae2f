// commands.hpp — implementations behind the CLI subcommands.
//
// The direct tool commands (bp solve, bp certify, oracle two-spike, moment
// recover, prune atoms, prune psd, spline solve) parse JSON/CSV payloads and
// return JSON results; the experiment commands run a full pipeline and
// return an ExperimentReport whose checks drive the process exit code.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "report.hpp"

namespace spikes::cli {

// Invalid parameter combinations (exit code 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- direct tool commands -------------------------------------------------

nlohmann::json run_bp_solve(int fc, const std::string& y_path, std::int64_t grid, bool polish,
                            double feas_tol, bool include_meta);

// Returns the certificate report; `pass` receives verdict == certified.
nlohmann::json run_bp_certify(const std::string& measure_path, const std::string& dual_path,
                              const std::string& y_path, double tol, std::int64_t n_check,
                              bool* pass);

nlohmann::json run_oracle_two_spike(int fc, double h);
std::string oracle_table_csv(int fc, double h);

nlohmann::json run_moment_recover(const std::string& y_path, bool charge, double t0);

nlohmann::json run_prune_atoms(const std::string& instance_path);
nlohmann::json run_prune_psd(const std::string& instance_path);

nlohmann::json run_spline_solve(int order, const std::string& samples_path, std::int64_t grid,
                                const std::string& eval_csv_path);

// ---- experiment commands ----------------------------------------------------

ExperimentReport cmd_two_spike_experiment(int fc, double h, std::int64_t grid,
                                          std::uint64_t seed, double gap_tol,
                                          const std::string& csv_prefix);

ExperimentReport cmd_toeplitz_roundtrip(int fc, int r, std::uint64_t seed);

ExperimentReport cmd_prune_bench(std::size_t m, std::size_t r, int trials, std::uint64_t seed);

}  // namespace spikes::cli
