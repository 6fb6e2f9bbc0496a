#include "jumpga/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "jumpga/island.hpp"
#include "jumpga/stats.hpp"

namespace jumpga {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string fmt_stat(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

int parse_int(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("invalid integer for ") + what + ": " + text);
    }
}

double parse_double(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("invalid number for ") + what + ": " + text);
    }
}

} // namespace

int derive_mu(int n) {
    if (n < 2) throw std::invalid_argument("derive_mu: requires n >= 2");
    const double mu = 4.0 * std::exp(1.0) * std::log(static_cast<double>(n));
    return std::max(2, static_cast<int>(std::lround(mu)));
}

GridSpec expand(const SweepSpec& spec) {
    if (spec.values.empty()) throw std::invalid_argument("sweep: empty values list");
    if (spec.replications < 1) throw std::invalid_argument("sweep: replications must be >= 1");

    GridSpec grid;
    grid.replications = spec.replications;
    grid.master_seed = spec.master_seed;
    grid.points.reserve(spec.values.size());
    for (const std::string& value : spec.values) {
        GaConfig cfg = spec.base;
        if (spec.axis == "n") {
            cfg.n = parse_int(value, "n");
            if (spec.mu_from_n) cfg.mu = derive_mu(cfg.n);
        } else if (spec.axis == "k") {
            cfg.k = parse_int(value, "k");
        } else if (spec.axis == "chi") {
            cfg.chi = parse_double(value, "chi");
        } else if (spec.axis == "mechanism") {
            const auto m = parse_mechanism(value);
            if (!m) throw std::invalid_argument("sweep: unknown mechanism: " + value);
            cfg.mechanism = *m;
        } else {
            throw std::invalid_argument("sweep: unknown axis: " + spec.axis);
        }
        cfg.validate();
        grid.points.push_back(cfg);
    }
    return grid;
}

SweepResult run_grid(const GridSpec& grid, int threads) {
    if (grid.points.empty()) throw std::invalid_argument("run_grid: empty grid");
    if (grid.replications < 1) throw std::invalid_argument("run_grid: replications must be >= 1");
    for (const auto& cfg : grid.points) cfg.validate();

    const std::size_t jobs = grid.points.size() * static_cast<std::size_t>(grid.replications);
    std::vector<RunRow> raw(jobs);
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        while (true) {
            const std::size_t job = next.fetch_add(1);
            if (job >= jobs) return;
            const int grid_index = static_cast<int>(job / grid.replications);
            const int replication = static_cast<int>(job % grid.replications);
            GaConfig cfg = grid.points[grid_index];
            cfg.seed = RandomSource::derive(grid.master_seed,
                                            static_cast<std::uint64_t>(grid_index),
                                            static_cast<std::uint64_t>(replication));
            cfg.record_trajectory = false;
            RunRow row;
            row.grid_index = grid_index;
            row.replication = replication;
            row.config = cfg;
            row.seed = cfg.seed;
            row.record = run_configured(cfg);
            raw[job] = std::move(row);
        }
    };

    const int pool_size = std::max(1, std::min<int>(threads, static_cast<int>(jobs)));
    if (pool_size == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(pool_size);
        for (int t = 0; t < pool_size; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    SweepResult result;
    result.raw = std::move(raw);
    result.summary = summarize(result.raw, grid);
    return result;
}

std::vector<SummaryRow> summarize(const std::vector<RunRow>& raw, const GridSpec& grid) {
    std::vector<SummaryRow> rows;
    rows.reserve(grid.points.size());
    for (std::size_t g = 0; g < grid.points.size(); ++g) {
        SummaryRow row;
        row.grid_index = static_cast<int>(g);
        row.config = grid.points[g];
        row.replications = grid.replications;
        std::vector<double> completed;
        for (const auto& r : raw) {
            if (static_cast<std::size_t>(r.grid_index) != g) continue;
            if (r.record.evaluations_to_optimum)
                completed.push_back(static_cast<double>(*r.record.evaluations_to_optimum));
        }
        row.completed = static_cast<int>(completed.size());
        row.timeouts = grid.replications - row.completed;
        if (!completed.empty()) {
            row.mean = mean(completed);
            row.median = median(completed);
            row.std_dev = sample_std(completed);
            row.min = min_value(completed);
            row.max = max_value(completed);
            row.q1 = quantile(completed, 0.25);
            row.q3 = quantile(completed, 0.75);
        }
        rows.push_back(row);
    }
    return rows;
}

void write_raw_csv(std::ostream& out, const std::vector<RunRow>& rows) {
    out << "grid_index,replication,mechanism,n,k,mu,p_c,chi,sigma,alpha,budget,seed,"
           "evaluations,success,plateau_arrival,receiver_optimum\n";
    for (const auto& r : rows) {
        const GaConfig& c = r.config;
        out << r.grid_index << ',' << r.replication << ',' << mechanism_name(c.mechanism) << ','
            << c.n << ',' << c.k << ',' << c.mu << ',' << fmt(c.p_c) << ',' << fmt(c.chi) << ',';
        if (c.mechanism == Mechanism::FitnessSharing) {
            const SharingParams sp = c.resolved_sharing();
            out << fmt(sp.sigma) << ',' << fmt(sp.alpha) << ',';
        } else {
            out << ",,";
        }
        out << c.max_evaluations << ',' << r.seed << ',';
        const bool success = r.record.evaluations_to_optimum.has_value();
        out << (success ? *r.record.evaluations_to_optimum : r.record.evaluations_used) << ','
            << (success ? 1 : 0) << ',';
        if (r.record.plateau_arrival_evaluation) out << *r.record.plateau_arrival_evaluation;
        out << ',';
        if (c.mechanism == Mechanism::Island) out << (r.record.optimum_on_receiver ? 1 : 0);
        out << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << "grid_index,mechanism,n,k,mu,p_c,chi,replications,completed,timeouts,"
           "mean,median,std,min,max,q1,q3\n";
    for (const auto& r : rows) {
        const GaConfig& c = r.config;
        out << r.grid_index << ',' << mechanism_name(c.mechanism) << ',' << c.n << ',' << c.k
            << ',' << c.mu << ',' << fmt(c.p_c) << ',' << fmt(c.chi) << ',' << r.replications
            << ',' << r.completed << ',' << r.timeouts << ',';
        if (r.completed > 0) {
            out << fmt_stat(r.mean) << ',' << fmt_stat(r.median) << ',' << fmt_stat(r.std_dev)
                << ',' << fmt_stat(r.min) << ',' << fmt_stat(r.max) << ',' << fmt_stat(r.q1)
                << ',' << fmt_stat(r.q3);
        } else {
            out << ",,,,,,";
        }
        out << '\n';
    }
}

SweepResult run_sweep_to_files(const GridSpec& grid, const std::string& out_dir, int threads) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const fs::path raw_path = fs::path(out_dir) / "raw.csv";
    const fs::path summary_path = fs::path(out_dir) / "summary.csv";
    std::ofstream raw_file(raw_path);
    std::ofstream summary_file(summary_path);
    if (!raw_file || !summary_file)
        throw std::runtime_error("cannot open output files under " + out_dir);

    SweepResult result = run_grid(grid, threads);
    write_raw_csv(raw_file, result.raw);
    write_summary_csv(summary_file, result.summary);
    if (!raw_file.flush() || !summary_file.flush())
        throw std::runtime_error("failed writing output files under " + out_dir);
    return result;
}

GridSpec make_mechanism_comparison(const GaConfig& base, const std::vector<Mechanism>& rules,
                                   std::optional<int> island_mu,
                                   std::optional<double> baseline_chi, int replications,
                                   std::uint64_t master_seed) {
    if (rules.empty() && !island_mu && !baseline_chi)
        throw std::invalid_argument("mechanism comparison: empty mechanism list");
    GridSpec grid;
    grid.replications = replications;
    grid.master_seed = master_seed;
    for (Mechanism m : rules) {
        GaConfig cfg = base;
        cfg.mechanism = m;
        cfg.validate();
        grid.points.push_back(cfg);
    }
    if (island_mu) {
        GaConfig cfg = base;
        cfg.mechanism = Mechanism::Island;
        cfg.mu = *island_mu;
        cfg.validate();
        grid.points.push_back(cfg);
    }
    if (baseline_chi) {
        GaConfig cfg = base;
        cfg.mechanism = Mechanism::UniformRandom;
        cfg.chi = *baseline_chi;
        cfg.validate();
        grid.points.push_back(cfg);
    }
    return grid;
}

std::vector<std::string> preset_names() {
    return {"fig1-desk", "fig2-desk", "fig3-desk", "fig4-desk"};
}

GridSpec make_preset(const std::string& name) {
    GridSpec grid;
    grid.master_seed = 1;
    if (name == "fig1-desk") {
        grid.replications = 30;
        for (int n = 50; n <= 150; n += 10)
            for (int k : {2, 3})
                for (double p_c : {0.0, 1.0}) {
                    GaConfig cfg;
                    cfg.n = n;
                    cfg.k = k;
                    cfg.mu = derive_mu(n);
                    cfg.p_c = p_c;
                    cfg.chi = 1.0;
                    cfg.max_evaluations = 100'000'000;
                    grid.points.push_back(cfg);
                }
        return grid;
    }
    if (name == "fig2-desk") {
        grid.replications = 20;
        for (int n : {60, 80, 100})
            for (int k : {3, 4}) {
                GaConfig cfg;
                cfg.n = n;
                cfg.k = k;
                cfg.mu = derive_mu(n);
                cfg.p_c = 1.0;
                cfg.chi = 1.0;
                cfg.max_evaluations = 100'000'000;
                grid.points.push_back(cfg);
            }
        return grid;
    }
    if (name == "fig3-desk") {
        grid.replications = 30;
        for (int k : {2, 3})
            for (int step = 0; step <= 37; ++step) {
                GaConfig cfg;
                cfg.n = 100;
                cfg.k = k;
                cfg.mu = derive_mu(100);
                cfg.p_c = 1.0;
                cfg.chi = (6.0 + 2.0 * step) / 10.0; // 0.6 .. 8.0 step 0.2
                cfg.max_evaluations = 100'000'000;
                grid.points.push_back(cfg);
            }
        return grid;
    }
    if (name == "fig4-desk") {
        GaConfig base;
        base.n = 100;
        base.k = 4;
        base.mu = derive_mu(100);
        base.p_c = 1.0;
        base.chi = 1.0;
        base.max_evaluations = 100'000'000;
        const std::vector<Mechanism> rules = {
            Mechanism::UniformRandom,      Mechanism::DuplicateElimination,
            Mechanism::DuplicateMinimization, Mechanism::DeterministicCrowding,
            Mechanism::ConvexHullMax,      Mechanism::TotalHammingMax,
            Mechanism::FitnessSharing,
        };
        return make_mechanism_comparison(base, rules, 2, 2.6, 30, 1);
    }
    throw std::invalid_argument("unknown preset: " + name);
}

SweepSpec parse_sweep_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sweep file: " + path);

    SweepSpec spec;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string{};
            const auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("sweep file line " + std::to_string(line_no) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "n") spec.base.n = parse_int(value, "n");
        else if (key == "k") spec.base.k = parse_int(value, "k");
        else if (key == "mu") spec.base.mu = parse_int(value, "mu");
        else if (key == "p_c") spec.base.p_c = parse_double(value, "p_c");
        else if (key == "chi") spec.base.chi = parse_double(value, "chi");
        else if (key == "sigma") spec.base.sharing_sigma = parse_double(value, "sigma");
        else if (key == "alpha") spec.base.sharing_alpha = parse_double(value, "alpha");
        else if (key == "budget") spec.base.max_evaluations = std::stoll(value);
        else if (key == "mechanism") {
            const auto m = parse_mechanism(value);
            if (!m) throw std::invalid_argument("sweep file: unknown mechanism: " + value);
            spec.base.mechanism = *m;
        } else if (key == "axis") spec.axis = value;
        else if (key == "replications") spec.replications = parse_int(value, "replications");
        else if (key == "master_seed") spec.master_seed = std::stoull(value);
        else if (key == "mu_from_n") spec.mu_from_n = value == "1" || value == "true";
        else if (key == "values") {
            std::stringstream ss(value);
            std::string token;
            while (std::getline(ss, token, ',')) {
                token = trim(token);
                if (token.empty()) continue;
                const std::size_t c1 = token.find(':');
                if (c1 == std::string::npos) {
                    spec.values.push_back(token);
                    continue;
                }
                const std::size_t c2 = token.find(':', c1 + 1);
                if (c2 == std::string::npos)
                    throw std::invalid_argument("sweep file: range needs start:stop:step");
                const double start = parse_double(token.substr(0, c1), "range start");
                const double stop = parse_double(token.substr(c1 + 1, c2 - c1 - 1), "range stop");
                const double step = parse_double(token.substr(c2 + 1), "range step");
                if (step <= 0) throw std::invalid_argument("sweep file: range step must be > 0");
                for (double v = start; v <= stop + 1e-9; v += step) spec.values.push_back(fmt(v));
            }
        } else {
            throw std::invalid_argument("sweep file: unknown key: " + key);
        }
    }
    return spec;
}

int worker_count_from_env() {
    if (const char* env = std::getenv("JUMPGA_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace jumpga
