#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "smsim/bench.hpp"
#include "smsim/config.hpp"
#include "smsim/difftest.hpp"
#include "smsim/sim.hpp"
#include "smsim/stats.hpp"
#include "smsim/trace.hpp"
#include "smsim/workload.hpp"

using namespace smsim;

namespace {

int cmd_run(const std::string& config_path, const std::vector<std::string>& workload_paths,
            const std::string& stats_path, const std::string& trace_path) {
    SystemConfig cfg = load_config(config_path);
    if (workload_paths.size() != cfg.n_pes) {
        std::cerr << "error: config has " << cfg.n_pes << " pes but "
                  << workload_paths.size() << " workloads given\n";
        return 1;
    }
    std::vector<WorkloadProgram> progs;
    for (const auto& p : workload_paths) progs.push_back(load_workload(p));

    System sys(cfg, std::move(progs));
    RunResult res = sys.run(!trace_path.empty());

    if (!stats_path.empty()) {
        std::ofstream f(stats_path);
        if (!f) {
            std::cerr << "error: cannot write " << stats_path << "\n";
            return 1;
        }
        emit_stats(res.stats, f);
    }
    if (!trace_path.empty()) write_trace_file(res.trace, trace_path);

    std::cout << "cycles_simulated " << res.stats.cycles_simulated << "\n";
    std::cout << "transactions " << res.stats.transactions() << "\n";
    for (size_t p = 0; p < res.stats.pe_outcome.size(); ++p) {
        std::cout << "pe" << p << " " << pe_outcome_name(res.stats.pe_outcome[p])
                  << " at cycle " << res.stats.pe_completion_cycle[p];
        if (!res.failures[p].empty()) std::cout << " (" << res.failures[p] << ")";
        std::cout << "\n";
    }
    if (!res.all_done) {
        std::cerr << "run failed\n";
        return 1;
    }
    return 0;
}

int cmd_difftest(uint64_t seed, uint64_t ops) {
    DiffReport rep = difftest(make_difftest_config(), seed, ops);
    std::cout << rep.to_string();
    return rep.pass ? 0 : 1;
}

int cmd_bench(const std::string& cfg1_path, const std::string& cfg4_path, uint64_t ops,
              uint64_t seed) {
    SystemConfig cfg1 = load_config(cfg1_path);
    SystemConfig cfg4 = load_config(cfg4_path);
    BenchReport rep = run_bench(cfg1, cfg4, ops, seed);
    std::cout << rep.to_string();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"smsim -- cycle-accurate dynamic shared-memory subsystem simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run workloads on a configured system");
    std::string config_path, stats_path, trace_path;
    std::vector<std::string> workload_paths;
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--workload", workload_paths, "workload file, one per pe")->required();
    run->add_option("--stats", stats_path, "write stats CSV here");
    run->add_option("--trace", trace_path, "write binary trace here");

    auto* diff = app.add_subcommand("difftest", "differential test against the reference oracle");
    uint64_t seed = 1, ops = 10000;
    diff->add_option("--seed", seed, "rng seed");
    diff->add_option("--ops", ops, "number of operations");

    auto* bench = app.add_subcommand("bench", "compare 4 pes / 1 memory vs 4 pes / 4 memories");
    std::string cfg1_path, cfg4_path;
    uint64_t bench_ops = 100000, bench_seed = 1;
    bench->add_option("--config1", cfg1_path, "1-memory config")->required();
    bench->add_option("--config4", cfg4_path, "4-memory config")->required();
    bench->add_option("--ops", bench_ops, "total transactions per side");
    bench->add_option("--seed", bench_seed, "workload seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, workload_paths, stats_path, trace_path);
        if (diff->parsed()) return cmd_difftest(seed, ops);
        if (bench->parsed()) return cmd_bench(cfg1_path, cfg4_path, bench_ops, bench_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
