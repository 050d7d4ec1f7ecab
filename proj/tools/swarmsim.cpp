// Command-line front end: single runs, parameter sweeps, and verification
// of a finished run against the independent oracles.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "swl/oracles.hpp"
#include "swl/pipeline.hpp"

namespace {

constexpr int kExitTimeout = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitIo = 4;

struct RunSpec {
    int n = 30;
    std::uint64_t seed = 1;
    int latency = 1;
    bool disk = false;
    bool online_checks = false;
    long budget = -1;
};

int do_run(const RunSpec& spec, const std::string& scenario_in,
           const std::string& scenario_out, const std::string& trace_path,
           const std::string& csv_path) {
    swl::Scenario sc;
    try {
        if (!scenario_in.empty()) {
            std::ifstream in(scenario_in);
            if (!in) {
                std::cerr << "cannot open " << scenario_in << "\n";
                return kExitIo;
            }
            std::stringstream ss;
            ss << in.rdbuf();
            sc = swl::scenario_from_json(ss.str());
        } else {
            sc = swl::generate_scenario(spec.n, spec.seed, swl::default_params());
        }
        if (!scenario_out.empty()) {
            std::ofstream out(scenario_out);
            if (!out) {
                std::cerr << "cannot write " << scenario_out << "\n";
                return kExitIo;
            }
            out << swl::scenario_to_json(sc) << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "scenario error: " << e.what() << "\n";
        return kExitIo;
    }

    swl::SimOptions opts;
    opts.latency_max = spec.latency;
    opts.disk_mode = spec.disk;
    opts.online_checks = spec.online_checks;

    std::ofstream trace_file;
    std::unique_ptr<swl::TraceSink> sink;
    std::string tp = trace_path;
    if (tp.empty()) {
        if (const char* env = std::getenv("SWARM_LOG")) tp = env;
    }
    if (!tp.empty()) {
        trace_file.open(tp);
        if (!trace_file) {
            std::cerr << "cannot write " << tp << "\n";
            return kExitIo;
        }
        sink = std::make_unique<swl::JsonlSink>(trace_file);
    }

    swl::World w = swl::make_world(sc, opts, sink.get());
    const swl::RunResult res = swl::run_full(w, spec.budget);

    if (w.failed) {
        std::cerr << "invariant violated: " << w.failure << "\n";
        return kExitInvariant;
    }
    if (!res.stopped) {
        std::cerr << "tick budget exhausted after " << res.ticks_used << " ticks\n";
        return kExitTimeout;
    }
    if (!swl::chain_sorted(w)) {
        std::cerr << "finished but the chain is not sorted\n";
        return kExitInvariant;
    }

    std::cout << "n=" << sc.n << " seed=" << sc.seed << " ticks=" << w.metrics.ticks_total
              << " messages=" << w.metrics.messages_total
              << " waves=" << w.metrics.waves_used << " swaps=" << w.metrics.swaps_performed
              << " travel=" << w.metrics.travel_total << "\n";
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) {
            std::cerr << "cannot write " << csv_path << "\n";
            return kExitIo;
        }
        out << swl::export_csv({w.metrics});
    }
    return 0;
}

int do_sweep(int n_min, int n_max, int n_step, int seeds, int latency,
             const std::string& csv_path) {
    std::vector<std::pair<int, std::uint64_t>> jobs;
    for (int n = n_min; n <= n_max; n += n_step)
        for (int s = 1; s <= seeds; ++s) jobs.emplace_back(n, static_cast<std::uint64_t>(s));

    std::vector<swl::RunMetrics> rows(jobs.size());
    std::vector<int> status(jobs.size(), 0);

#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(jobs.size()); ++i) {
        const auto [n, seed] = jobs[i];
        swl::SimOptions opts;
        opts.latency_max = latency;
        swl::World w = swl::make_world(swl::generate_scenario(n, seed, swl::default_params()),
                                       opts, nullptr);
        const swl::RunResult res = swl::run_full(w);
        if (w.failed)
            status[i] = kExitInvariant;
        else if (!res.stopped)
            status[i] = kExitTimeout;
        else if (!swl::chain_sorted(w))
            status[i] = kExitInvariant;
        rows[i] = w.metrics;
    }

    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (status[i] != 0) {
            std::cerr << "run n=" << jobs[i].first << " seed=" << jobs[i].second
                      << " failed with status " << status[i] << "\n";
            return status[i];
        }
    }

    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) {
            std::cerr << "cannot write " << csv_path << "\n";
            return kExitIo;
        }
        out << swl::export_csv(rows);
    }

    std::vector<double> ns, ticks, msgs_per_n2, travel_per_nd;
    for (const auto& m : rows) {
        ns.push_back(m.n);
        ticks.push_back(static_cast<double>(m.ticks_total));
        msgs_per_n2.push_back(static_cast<double>(m.messages_total) / (double(m.n) * m.n));
        travel_per_nd.push_back(m.travel_total / (m.n * m.diameter));
    }
    const swl::LinFit fit = swl::least_squares(ns, ticks);
    std::cout << "runs=" << rows.size() << "\n";
    std::cout << "ticks ~ " << fit.slope << " * n + " << fit.intercept
              << "  (R^2 = " << fit.r2 << ")\n";
    auto spread = [](const std::vector<double>& v) {
        double lo = v[0], hi = v[0];
        for (double x : v) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        return std::pair{lo, hi};
    };
    const auto [m_lo, m_hi] = spread(msgs_per_n2);
    const auto [t_lo, t_hi] = spread(travel_per_nd);
    std::cout << "messages/n^2 in [" << m_lo << ", " << m_hi << "]\n";
    std::cout << "travel/(n*D) in [" << t_lo << ", " << t_hi << "]\n";
    return 0;
}

int do_verify(const RunSpec& spec) {
    const swl::Scenario sc = swl::generate_scenario(spec.n, spec.seed, swl::default_params());
    swl::SimOptions opts;
    opts.latency_max = spec.latency;
    swl::World w = swl::make_world(sc, opts, nullptr);
    const swl::RunResult res = swl::run_full(w, spec.budget);
    if (w.failed) {
        std::cerr << "invariant violated: " << w.failure << "\n";
        return kExitInvariant;
    }
    if (!res.stopped) {
        std::cerr << "tick budget exhausted\n";
        return kExitTimeout;
    }
    if (!swl::chain_sorted(w)) {
        std::cerr << "chain not sorted\n";
        return kExitInvariant;
    }
    const std::vector<swl::Point2> targets = swl::target_positions(sc);
    const double tol = sc.params.robot_radius;
    for (const swl::RobotState& r : w.robots) {
        if (swl::dist(r.pos, targets[r.index]) > tol) {
            std::cerr << "robot " << r.index << " is " << swl::dist(r.pos, targets[r.index])
                      << " m from its slot\n";
            return kExitInvariant;
        }
    }
    std::cout << "ok: sorted line, all robots within " << tol << " m of their slots\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tick-driven swarm line-formation simulator"};
    app.require_subcommand(1);

    RunSpec spec;
    std::string scenario_in, scenario_out, trace_path, csv_path;

    CLI::App* run = app.add_subcommand("run", "simulate one scenario to completion");
    run->add_option("-n,--robots", spec.n, "swarm size");
    run->add_option("-s,--seed", spec.seed, "scenario seed");
    run->add_option("-l,--latency", spec.latency, "max message latency in ticks")
        ->check(CLI::PositiveNumber);
    run->add_option("-b,--budget", spec.budget, "tick budget (default 200n+20000)");
    run->add_flag("--disk", spec.disk, "enable the disk collision heuristic");
    run->add_flag("--check", spec.online_checks, "per-tick connectivity checks");
    run->add_option("--scenario-in", scenario_in, "load scenario json instead of generating");
    run->add_option("--scenario-out", scenario_out, "dump the scenario json");
    run->add_option("--trace", trace_path, "write a jsonl event trace (or set SWARM_LOG)");
    run->add_option("--csv", csv_path, "write the metrics row as csv");

    int n_min = 15, n_max = 130, n_step = 5, seeds = 8;
    CLI::App* sweep = app.add_subcommand("sweep", "scaling sweep over n and seeds");
    sweep->add_option("--n-min", n_min);
    sweep->add_option("--n-max", n_max);
    sweep->add_option("--step", n_step)->check(CLI::PositiveNumber);
    sweep->add_option("--seeds", seeds)->check(CLI::PositiveNumber);
    sweep->add_option("-l,--latency", spec.latency)->check(CLI::PositiveNumber);
    sweep->add_option("--csv", csv_path, "write one metrics row per run");

    CLI::App* verify = app.add_subcommand("verify", "run and check the final formation");
    verify->add_option("-n,--robots", spec.n);
    verify->add_option("-s,--seed", spec.seed);
    verify->add_option("-l,--latency", spec.latency)->check(CLI::PositiveNumber);
    verify->add_option("-b,--budget", spec.budget);

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return do_run(spec, scenario_in, scenario_out, trace_path, csv_path);
    if (sweep->parsed()) return do_sweep(n_min, n_max, n_step, seeds, spec.latency, csv_path);
    return do_verify(spec);
}
