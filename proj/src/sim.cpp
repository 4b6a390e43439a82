#include "smsim/sim.hpp"

#include <chrono>
#include <stdexcept>

namespace smsim {

System::System(SystemConfig cfg, std::vector<WorkloadProgram> programs)
    : cfg_(std::move(cfg)), xbar_(cfg_.n_pes, cfg_.n_mems) {
    cfg_.resize_per_module();
    if (programs.size() != cfg_.n_pes)
        throw std::invalid_argument("workload count must equal pes");
    pes_.reserve(cfg_.n_pes);
    for (uint32_t i = 0; i < cfg_.n_pes; ++i)
        pes_.emplace_back(static_cast<uint8_t>(i), std::move(programs[i]));
    wrappers_.reserve(cfg_.n_mems);
    for (uint32_t m = 0; m < cfg_.n_mems; ++m)
        wrappers_.push_back(std::make_unique<Wrapper>(
            cfg_.capacity_bytes[m], cfg_.endianness[m], cfg_.delays));
}

RunResult System::run(bool collect_trace) {
    RunResult res;
    const uint32_t n_pes = cfg_.n_pes;
    const uint32_t n_mems = cfg_.n_mems;

    std::vector<BusFeedback> feedback(n_pes);
    std::vector<MasterSignals> outputs(n_pes);
    std::vector<SlaveSignals> slave(n_mems);
    std::vector<bool> acked(n_mems, false);

    auto t0 = std::chrono::steady_clock::now();
    uint64_t cycle = 0;
    for (; cycle < cfg_.max_cycles; ++cycle) {
        for (uint32_t p = 0; p < n_pes; ++p) {
            auto out = pes_[p].step(feedback[p], cycle);
            outputs[p] = out ? *out : MasterSignals{};
            feedback[p] = BusFeedback{};
        }

        auto arb = xbar_.arbitrate(outputs, cycle);

        for (uint32_t m = 0; m < n_mems; ++m) {
            MasterSignals in;
            if (auto o = xbar_.owner(m)) in = outputs[*o];
            slave[m] = wrappers_[m]->tick(in, cycle);
            acked[m] = slave[m].ack;
        }

        for (uint32_t p = 0; p < n_pes; ++p) {
            feedback[p].granted = arb[p] == GrantOutcome::GRANTED;
            feedback[p].rejected = arb[p] == GrantOutcome::REJECTED;
        }
        for (uint32_t m = 0; m < n_mems; ++m)
            if (auto o = xbar_.owner(m)) feedback[*o].slave = slave[m];

        // bookkeeping: wrapper acks in module order, then rejections
        for (uint32_t m = 0; m < n_mems; ++m) {
            if (!acked[m]) continue;
            const CompletedTxn& txn = *wrappers_[m]->last_completed();
            res.stats.op_counts[static_cast<size_t>(txn.request.opcode)]++;
            res.stats.status_counts[static_cast<size_t>(txn.response.status)]++;
            if (collect_trace) {
                TraceRecord rec;
                rec.kind = TraceRecord::WRAPPER_TXN;
                rec.sample_cycle = txn.sample_cycle;
                rec.ack_cycle = txn.ack_cycle;
                rec.request_words = encode_request(txn.request);
                rec.status = txn.response.status;
                rec.vptr_out = txn.response.vptr_out;
                rec.data_out = txn.response.data_out;
                res.trace.push_back(std::move(rec));
            }
        }
        for (uint32_t p = 0; p < n_pes; ++p) {
            if (arb[p] != GrantOutcome::REJECTED) continue;
            res.stats.op_counts[static_cast<size_t>(outputs[p].request.opcode)]++;
            res.stats.status_counts[static_cast<size_t>(Status::ERR_BADOP)]++;
            if (collect_trace) {
                TraceRecord rec;
                rec.kind = TraceRecord::XBAR_REJECT;
                rec.sample_cycle = cycle;
                rec.ack_cycle = cycle;
                rec.request_words = encode_request(outputs[p].request);
                rec.status = Status::ERR_BADOP;
                res.trace.push_back(std::move(rec));
            }
        }

        xbar_.tick(cycle, acked);

        bool all_finished = true;
        for (const auto& pe : pes_)
            if (!pe.finished()) {
                all_finished = false;
                break;
            }
        if (all_finished) {
            ++cycle;
            break;
        }
    }
    auto t1 = std::chrono::steady_clock::now();

    Stats& st = res.stats;
    st.cycles_simulated = cycle;
    st.wall_time_seconds = std::chrono::duration<double>(t1 - t0).count();
    st.high_water.resize(n_mems);
    st.type_mismatches.resize(n_mems);
    for (uint32_t m = 0; m < n_mems; ++m) {
        st.high_water[m] = wrappers_[m]->high_water();
        st.type_mismatches[m] = wrappers_[m]->type_mismatch_count();
    }
    st.pe_completion_cycle.resize(n_pes);
    st.pe_outcome.resize(n_pes);
    res.failures.resize(n_pes);
    res.all_done = true;
    for (uint32_t p = 0; p < n_pes; ++p) {
        const PeClient& pe = pes_[p];
        if (pe.phase() == PePhase::DONE) {
            st.pe_outcome[p] = PeOutcome::DONE;
            st.pe_completion_cycle[p] = pe.completion_cycle();
        } else if (pe.phase() == PePhase::FAILED) {
            st.pe_outcome[p] = PeOutcome::FAILED;
            st.pe_completion_cycle[p] = pe.completion_cycle();
            res.failures[p] = pe.fail_reason();
            res.any_failed = true;
            res.all_done = false;
        } else {
            st.pe_outcome[p] = PeOutcome::TIMEOUT;
            st.pe_completion_cycle[p] = st.cycles_simulated;
            res.failures[p] = "timeout: pe still running at max_cycles";
            res.all_done = false;
        }
    }
    return res;
}

}  // namespace smsim
