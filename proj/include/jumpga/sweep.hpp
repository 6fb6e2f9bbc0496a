#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jumpga/engine.hpp"

namespace jumpga {

/// Population size rule used throughout the experiments:
/// mu = round(4e ln n), at least 2.
int derive_mu(int n);

/// One-axis sweep over a base configuration.
struct SweepSpec {
    GaConfig base;
    std::string axis;                // one of: n, k, chi, mechanism
    std::vector<std::string> values; // parsed according to the axis
    int replications = 100;
    std::uint64_t master_seed = 1;
    bool mu_from_n = false; // when sweeping n, set mu = derive_mu(n)
};

/// Fully expanded list of grid points; the unit the runner executes.
struct GridSpec {
    std::vector<GaConfig> points;
    int replications = 100;
    std::uint64_t master_seed = 1;
};

GridSpec expand(const SweepSpec& spec);

struct RunRow {
    int grid_index;
    int replication;
    GaConfig config;
    std::uint64_t seed;
    RunRecord record;
};

struct SummaryRow {
    int grid_index;
    GaConfig config;
    int replications;
    int completed;
    int timeouts;
    // Statistics over completed runs only.
    double mean = 0, median = 0, std_dev = 0, min = 0, max = 0, q1 = 0, q3 = 0;
};

struct SweepResult {
    std::vector<RunRow> raw;
    std::vector<SummaryRow> summary;
};

/// Runs every (grid point, replication) pair on a worker pool. Per-run
/// seeds derive from (master_seed, grid index, replication), so results
/// are independent of scheduling.
SweepResult run_grid(const GridSpec& grid, int threads);

std::vector<SummaryRow> summarize(const std::vector<RunRow>& raw, const GridSpec& grid);

void write_raw_csv(std::ostream& out, const std::vector<RunRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

/// Expands, runs and writes raw.csv + summary.csv under out_dir.
/// Output files are opened before any run starts.
SweepResult run_sweep_to_files(const GridSpec& grid, const std::string& out_dir, int threads);

/// Mechanism comparison at fixed (n, k, p_c, chi): one grid point per
/// tie-breaking rule, plus the island model and an optional high-mutation
/// baseline.
GridSpec make_mechanism_comparison(const GaConfig& base, const std::vector<Mechanism>& rules,
                                   std::optional<int> island_mu,
                                   std::optional<double> baseline_chi, int replications,
                                   std::uint64_t master_seed);

std::vector<std::string> preset_names();
GridSpec make_preset(const std::string& name); // throws on unknown preset

/// Flat key=value config file for `sweep`; '#' starts a comment.
SweepSpec parse_sweep_file(const std::string& path);

/// JUMPGA_THREADS, or hardware concurrency when unset.
int worker_count_from_env();

/// Oracle verification suites ("oracles", "transitions", "equivalence").
/// Prints one line per check; returns false if any check fails and
/// throws std::invalid_argument for an unknown suite name.
bool run_verify_suite(const std::string& suite, std::ostream& out);

} // namespace jumpga
