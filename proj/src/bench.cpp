#include "smsim/bench.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "smsim/sim.hpp"

namespace smsim {

namespace {

Instruction txn(InstrKind kind, uint8_t mem) {
    Instruction ins;
    ins.kind = kind;
    ins.mem = mem;
    return ins;
}

}  // namespace

std::vector<WorkloadProgram> gen_bench_workloads(uint32_t n_pes, uint32_t n_mems,
                                                 uint64_t total_ops, uint64_t seed) {
    // 6 transactions per block: alloc, warr, rarr, write, read, free
    uint64_t per_pe = (total_ops + n_pes - 1) / n_pes;
    uint64_t blocks = (per_pe + 5) / 6;
    const uint32_t dims[3] = {1, 4, 8};

    std::vector<WorkloadProgram> progs(n_pes);
    for (uint32_t pe = 0; pe < n_pes; ++pe) {
        std::mt19937_64 rng(seed + pe);
        uint8_t mem = static_cast<uint8_t>(pe % n_mems);
        WorkloadProgram& p = progs[pe];

        for (uint64_t b = 0; b < blocks; ++b) {
            uint32_t dim = dims[b % 3];

            Instruction alloc = txn(InstrKind::ALLOC, mem);
            alloc.var = "b";
            alloc.dim = 16;
            alloc.type = ElemType::U32;
            p.instrs.push_back(alloc);

            Instruction warr = txn(InstrKind::WARR, mem);
            warr.addr = {"b", 0};
            warr.dim = dim;
            for (uint32_t i = 0; i < dim; ++i)
                warr.words.push_back(static_cast<uint32_t>(rng()));
            p.instrs.push_back(warr);

            Instruction rarr = txn(InstrKind::RARR, mem);
            rarr.vars = {"r"};
            rarr.addr = {"b", 0};
            rarr.dim = dim;
            p.instrs.push_back(rarr);

            Instruction chk;
            chk.kind = InstrKind::ASSERT;
            chk.var = "r";
            chk.words.push_back(warr.words[0]);
            p.instrs.push_back(chk);

            uint32_t value = static_cast<uint32_t>(rng());
            Instruction write = txn(InstrKind::WRITE, mem);
            write.addr = {"b", 32};
            write.words.push_back(value);
            p.instrs.push_back(write);

            Instruction read = txn(InstrKind::READ, mem);
            read.var = "s";
            read.addr = {"b", 32};
            p.instrs.push_back(read);

            Instruction chk2;
            chk2.kind = InstrKind::ASSERT;
            chk2.var = "s";
            chk2.words.push_back(value);
            p.instrs.push_back(chk2);

            Instruction fr = txn(InstrKind::FREE, mem);
            fr.addr = {"b", 0};
            p.instrs.push_back(fr);
        }
        Instruction end;
        end.kind = InstrKind::END;
        p.instrs.push_back(end);
    }
    return progs;
}

static BenchSide run_side(const SystemConfig& cfg, uint64_t total_ops, uint64_t seed,
                          int reps) {
    BenchSide side;
    side.mems = cfg.n_mems;
    for (int i = 0; i < reps; ++i) {
        auto progs = gen_bench_workloads(cfg.n_pes, cfg.n_mems, total_ops, seed);
        System sys(cfg, std::move(progs));
        RunResult res = sys.run(false);
        if (res.any_failed) {
            for (const auto& f : res.failures)
                if (!f.empty()) throw std::runtime_error("bench workload failed: " + f);
        }
        if (i == 0) {
            side.cycles = res.stats.cycles_simulated;
            side.transactions = res.stats.transactions();
            side.wall_seconds = res.stats.wall_time_seconds;
        } else {
            if (res.stats.cycles_simulated != side.cycles)
                throw std::runtime_error("bench: nondeterministic cycle count");
            side.wall_seconds = std::min(side.wall_seconds, res.stats.wall_time_seconds);
        }
    }
    side.cycles_per_second = side.wall_seconds > 0.0 ? side.cycles / side.wall_seconds : 0.0;
    return side;
}

BenchReport run_bench(const SystemConfig& cfg1, const SystemConfig& cfg4,
                      uint64_t total_ops, uint64_t seed, int reps) {
    if (cfg1.n_pes != 4 || cfg4.n_pes != 4)
        throw std::invalid_argument("bench: both configs need pes = 4");
    if (reps < 1) throw std::invalid_argument("bench: reps must be >= 1");

    BenchReport rep;
    rep.one_mem = run_side(cfg1, total_ops, seed, reps);
    rep.four_mem = run_side(cfg4, total_ops, seed, reps);
    if (rep.one_mem.cycles_per_second > 0.0)
        rep.degradation_pct = (rep.one_mem.cycles_per_second - rep.four_mem.cycles_per_second) /
                              rep.one_mem.cycles_per_second * 100.0;
    return rep;
}

std::string BenchReport::to_string() const {
    std::ostringstream ss;
    char buf[160];
    snprintf(buf, sizeof buf,
             "config1 (%u mem): %llu cycles, %llu txns, %.3f s, %.0f cycles/s\n",
             one_mem.mems, (unsigned long long)one_mem.cycles,
             (unsigned long long)one_mem.transactions, one_mem.wall_seconds,
             one_mem.cycles_per_second);
    ss << buf;
    snprintf(buf, sizeof buf,
             "config4 (%u mem): %llu cycles, %llu txns, %.3f s, %.0f cycles/s\n",
             four_mem.mems, (unsigned long long)four_mem.cycles,
             (unsigned long long)four_mem.transactions, four_mem.wall_seconds,
             four_mem.cycles_per_second);
    ss << buf;
    snprintf(buf, sizeof buf, "simulation speed degradation: %.1f%%\n", degradation_pct);
    ss << buf;
    return ss.str();
}

}  // namespace smsim
