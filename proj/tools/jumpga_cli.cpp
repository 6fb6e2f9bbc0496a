#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "jumpga/analytics.hpp"
#include "jumpga/island.hpp"
#include "jumpga/sweep.hpp"

namespace {

using namespace jumpga;

void add_config_options(CLI::App* app, GaConfig& cfg, std::string& mechanism) {
    app->add_option("--n", cfg.n, "problem size")->required();
    app->add_option("--k", cfg.k, "gap length");
    app->add_option("--mu", cfg.mu, "population size (0 = derive from n)");
    app->add_option("--pc", cfg.p_c, "crossover probability");
    app->add_option("--chi", cfg.chi, "mutation intensity (per-bit rate chi/n)");
    app->add_option("--mechanism", mechanism,
                    "uniform|dup-elim|dup-min|det-crowding|convex-hull|total-hamming|"
                    "fitness-sharing|island");
    app->add_option("--sigma", cfg.sharing_sigma, "fitness sharing radius (0 = 2k)");
    app->add_option("--alpha", cfg.sharing_alpha, "fitness sharing exponent");
    app->add_option("--budget", cfg.max_evaluations, "evaluation budget");
    app->add_option("--seed", cfg.seed, "random seed");
    app->add_flag("--no-receiver-mutation", [&cfg](std::int64_t) {
        cfg.island_receiver_mutation = false;
    }, "island model: skip mutation after receiver crossover");
}

int resolve_mechanism(GaConfig& cfg, const std::string& name) {
    if (name.empty()) return 0;
    const auto m = parse_mechanism(name);
    if (!m) {
        std::cerr << "unknown mechanism: " << name << "\n";
        return 2;
    }
    cfg.mechanism = *m;
    return 0;
}

int cmd_run(GaConfig cfg, const std::string& mechanism, const std::string& trajectory_path) {
    if (const int rc = resolve_mechanism(cfg, mechanism)) return rc;
    if (cfg.mu == 0) cfg.mu = derive_mu(cfg.n);
    cfg.record_trajectory = !trajectory_path.empty();
    cfg.validate();

    const RunRecord rec = run_configured(cfg);
    std::cout << "mechanism=" << mechanism_name(cfg.mechanism) << " n=" << cfg.n << " k=" << cfg.k
              << " mu=" << cfg.mu << " p_c=" << cfg.p_c << " chi=" << cfg.chi
              << " seed=" << cfg.seed << "\n";
    if (rec.evaluations_to_optimum)
        std::cout << "optimum after " << *rec.evaluations_to_optimum << " evaluations\n";
    else
        std::cout << "budget exhausted after " << rec.evaluations_used << " evaluations\n";
    if (rec.plateau_arrival_evaluation)
        std::cout << "plateau reached at evaluation " << *rec.plateau_arrival_evaluation << "\n";
    if (cfg.mechanism == Mechanism::Island)
        std::cout << "optimum produced by receiver: " << (rec.optimum_on_receiver ? "yes" : "no")
                  << "\n";
    std::cout << "population digest: " << rec.final_population_digest << "\n";

    if (!trajectory_path.empty()) {
        std::ofstream out(trajectory_path);
        if (!out) {
            std::cerr << "cannot open " << trajectory_path << "\n";
            return 2;
        }
        out << "evaluation,largest_species,distinct_species\n";
        for (const auto& p : rec.trajectory)
            out << p.evaluation << ',' << p.largest_species << ',' << p.distinct_species << '\n';
    }
    return rec.evaluations_to_optimum ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady-state (mu+1) GA on Jump_k with diversity-preserving tie-breaking"};
    app.require_subcommand(1);

    // run
    GaConfig run_cfg;
    std::string run_mechanism;
    std::string trajectory_path;
    auto* run = app.add_subcommand("run", "execute a single configured run");
    add_config_options(run, run_cfg, run_mechanism);
    run->add_option("--trajectory", trajectory_path, "write largest-species trajectory CSV");

    // sweep
    std::string sweep_file;
    std::string sweep_axis;
    std::vector<std::string> sweep_values;
    std::string sweep_out = "sweep-out";
    std::string sweep_preset;
    int sweep_reps = 0;
    std::uint64_t sweep_master = 0;
    bool sweep_mu_from_n = false;
    GaConfig sweep_base;
    std::string sweep_mechanism;
    auto* sweep = app.add_subcommand("sweep", "run a one-axis sweep or a preset grid");
    sweep->add_option("--config", sweep_file, "sweep spec file (key = value lines)");
    sweep->add_option("--preset", sweep_preset, "built-in preset name");
    sweep->add_option("--axis", sweep_axis, "n|k|chi|mechanism");
    sweep->add_option("--values", sweep_values, "axis values (or start:stop:step)");
    sweep->add_option("--out", sweep_out, "output directory");
    sweep->add_option("--reps", sweep_reps, "replications per grid point");
    sweep->add_option("--master-seed", sweep_master, "master seed");
    sweep->add_flag("--mu-from-n", sweep_mu_from_n, "derive mu = round(4e ln n) per point");
    sweep->add_option("--n", sweep_base.n, "base n");
    sweep->add_option("--k", sweep_base.k, "base k");
    sweep->add_option("--mu", sweep_base.mu, "base mu");
    sweep->add_option("--pc", sweep_base.p_c, "base p_c");
    sweep->add_option("--chi", sweep_base.chi, "base chi");
    sweep->add_option("--budget", sweep_base.max_evaluations, "evaluation budget");
    sweep->add_option("--mechanism", sweep_mechanism, "base mechanism");

    // compare
    GaConfig cmp_base;
    std::vector<std::string> cmp_mechanisms;
    std::string cmp_out = "compare-out";
    int cmp_reps = 30;
    std::uint64_t cmp_master = 1;
    int cmp_island_mu = 2;
    double cmp_baseline_chi = 0.0;
    auto* cmp = app.add_subcommand("compare", "mechanism comparison at a fixed configuration");
    cmp->add_option("--n", cmp_base.n, "problem size")->required();
    cmp->add_option("--k", cmp_base.k, "gap length");
    cmp->add_option("--mu", cmp_base.mu, "population size (0 = derive from n)");
    cmp->add_option("--pc", cmp_base.p_c, "crossover probability");
    cmp->add_option("--chi", cmp_base.chi, "mutation intensity");
    cmp->add_option("--budget", cmp_base.max_evaluations, "evaluation budget");
    cmp->add_option("--mechanisms", cmp_mechanisms, "tie-breaking rules to compare");
    cmp->add_option("--island-mu", cmp_island_mu, "island count (0 = skip the island model)");
    cmp->add_option("--baseline-chi", cmp_baseline_chi,
                    "add a uniform-rule high-mutation baseline (0 = skip)");
    cmp->add_option("--reps", cmp_reps, "replications per mechanism");
    cmp->add_option("--master-seed", cmp_master, "master seed");
    cmp->add_option("--out", cmp_out, "output directory");

    // verify
    std::string suite;
    auto* verify = app.add_subcommand("verify", "run an oracle verification suite");
    verify->add_option("suite", suite, "oracles|transitions|equivalence")->required();

    // presets
    auto* presets = app.add_subcommand("presets", "list built-in presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_cfg, run_mechanism, trajectory_path);

        if (sweep->parsed()) {
            GridSpec grid;
            if (!sweep_preset.empty()) {
                grid = make_preset(sweep_preset);
            } else {
                SweepSpec spec;
                if (!sweep_file.empty()) spec = parse_sweep_file(sweep_file);
                else spec.base = sweep_base;
                if (!sweep_axis.empty()) spec.axis = sweep_axis;
                if (!sweep_values.empty()) spec.values = sweep_values;
                if (sweep_mu_from_n) spec.mu_from_n = true;
                if (sweep_reps > 0) spec.replications = sweep_reps;
                if (sweep_master != 0) spec.master_seed = sweep_master;
                if (const int rc = resolve_mechanism(spec.base, sweep_mechanism)) return rc;
                grid = expand(spec);
            }
            if (sweep_reps > 0) grid.replications = sweep_reps;
            if (sweep_master != 0) grid.master_seed = sweep_master;
            run_sweep_to_files(grid, sweep_out, worker_count_from_env());
            std::cout << "wrote " << sweep_out << "/raw.csv and " << sweep_out
                      << "/summary.csv\n";
            return 0;
        }

        if (cmp->parsed()) {
            if (cmp_base.mu == 0) cmp_base.mu = derive_mu(cmp_base.n);
            std::vector<Mechanism> rules;
            if (cmp_mechanisms.empty()) {
                rules = {Mechanism::UniformRandom,       Mechanism::DuplicateElimination,
                         Mechanism::DuplicateMinimization, Mechanism::DeterministicCrowding,
                         Mechanism::ConvexHullMax,       Mechanism::TotalHammingMax,
                         Mechanism::FitnessSharing};
            } else {
                for (const auto& name : cmp_mechanisms) {
                    const auto m = parse_mechanism(name);
                    if (!m || *m == Mechanism::Island) {
                        std::cerr << "unknown tie-breaking rule: " << name << "\n";
                        return 2;
                    }
                    rules.push_back(*m);
                }
            }
            const GridSpec grid = make_mechanism_comparison(
                cmp_base, rules, cmp_island_mu > 0 ? std::optional<int>(cmp_island_mu) : std::nullopt,
                cmp_baseline_chi > 0 ? std::optional<double>(cmp_baseline_chi) : std::nullopt,
                cmp_reps, cmp_master);
            run_sweep_to_files(grid, cmp_out, worker_count_from_env());
            std::cout << "wrote " << cmp_out << "/raw.csv and " << cmp_out << "/summary.csv\n";
            return 0;
        }

        if (verify->parsed()) return run_verify_suite(suite, std::cout) ? 0 : 1;

        if (presets->parsed()) {
            for (const auto& name : preset_names()) std::cout << name << "\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
