#include "smsim/difftest.hpp"

#include <memory>
#include <sstream>

#include "smsim/oracle.hpp"
#include "smsim/wrapper.hpp"

namespace smsim {

SystemConfig make_difftest_config() {
    SystemConfig cfg;
    cfg.n_pes = 4;
    cfg.n_mems = 2;
    cfg.capacity_bytes = {4096, 4096};
    cfg.endianness = {Endianness::LITTLE, Endianness::BIG};
    return cfg;
}

RequestGenerator::RequestGenerator(const SystemConfig& cfg, uint64_t seed)
    : cfg_(cfg), rng_(seed) {
    cfg_.resize_per_module();
    live_.resize(cfg_.n_mems);
    used_.assign(cfg_.n_mems, 0);
}

uint32_t RequestGenerator::pick_addr(uint32_t module, bool want_invalid) {
    const auto& live = live_[module];
    if (want_invalid || live.empty()) {
        // wild address; occasionally a misaligned poke into a live range
        if (!live.empty() && roll(2) == 0) {
            const Live& a = live[roll(live.size())];
            return a.vptr + static_cast<uint32_t>(roll(a.dim * data_size(a.type))) + 1;
        }
        return 0x40000000u + static_cast<uint32_t>(roll(1 << 20));
    }
    const Live& a = live[roll(live.size())];
    uint32_t elem = static_cast<uint32_t>(roll(a.dim));
    return a.vptr + elem * data_size(a.type);
}

Request RequestGenerator::next() {
    Request r;
    r.pe_id = static_cast<uint8_t>(roll(cfg_.n_pes));
    bool bad_module = roll(100) < 2;
    uint32_t module = static_cast<uint32_t>(roll(cfg_.n_mems));
    r.sm_addr = static_cast<uint8_t>(bad_module ? cfg_.n_mems + roll(3) : module);

    uint64_t w = roll(100);
    bool invalid_addr = roll(100) < 10;

    if (w < 20) {  // ALLOC; half of them probe the capacity limit, which
                   // biases ~10% of all operations toward OOM pressure
        r.opcode = Opcode::ALLOC;
        r.elem_type = static_cast<ElemType>(roll(kNumElemTypes));
        if (roll(100) < 50) {
            // capacity pressure: aim just around the remaining budget so
            // some of these succeed and some are denied
            uint64_t remaining = cfg_.capacity_bytes[module] - used_[module];
            int64_t dim = static_cast<int64_t>(remaining / data_size(r.elem_type)) +
                          static_cast<int64_t>(roll(5)) - 2;
            r.dim = dim < 1 ? 1 : static_cast<uint32_t>(dim);
        } else {
            r.dim = static_cast<uint32_t>(roll(16)) + 1;
        }
    } else if (w < 36) {  // READ
        r.opcode = Opcode::READ;
        r.vptr = pick_addr(module, invalid_addr);
    } else if (w < 52) {  // WRITE
        r.opcode = Opcode::WRITE;
        r.vptr = pick_addr(module, invalid_addr);
        r.data.push_back(static_cast<uint32_t>(rng_()));
    } else if (w < 64) {  // FREE
        r.opcode = Opcode::FREE;
        r.vptr = pick_addr(module, invalid_addr);
    } else if (w < 72) {  // READ_ARR
        r.opcode = Opcode::READ_ARR;
        r.vptr = pick_addr(module, invalid_addr);
        r.dim = static_cast<uint32_t>(roll(8)) + 1;
    } else if (w < 80) {  // WRITE_ARR
        r.opcode = Opcode::WRITE_ARR;
        r.vptr = pick_addr(module, invalid_addr);
        r.dim = static_cast<uint32_t>(roll(8)) + 1;
        for (uint32_t i = 0; i < r.dim; ++i)
            r.data.push_back(static_cast<uint32_t>(rng_()));
    } else if (w < 90) {  // RESERVE
        r.opcode = Opcode::RESERVE;
        r.vptr = pick_addr(module, invalid_addr);
    } else {  // RELEASE
        r.opcode = Opcode::RELEASE;
        r.vptr = pick_addr(module, invalid_addr);
    }
    return r;
}

void RequestGenerator::observe(const Request& r, const Response& resp) {
    if (resp.status != Status::OK || r.sm_addr >= cfg_.n_mems) return;
    auto& live = live_[r.sm_addr];
    if (r.opcode == Opcode::ALLOC) {
        live.push_back({resp.vptr_out, r.dim, r.elem_type});
        used_[r.sm_addr] += static_cast<uint64_t>(r.dim) * data_size(r.elem_type);
    } else if (r.opcode == Opcode::FREE) {
        for (size_t i = 0; i < live.size(); ++i) {
            if (live[i].vptr == r.vptr) {
                used_[r.sm_addr] -=
                    static_cast<uint64_t>(live[i].dim) * data_size(live[i].type);
                live.erase(live.begin() + i);
                break;
            }
        }
    }
}

namespace {

std::string show_response(const Response& r) {
    std::ostringstream ss;
    ss << "status=" << status_name(r.status) << " vptr_out=" << r.vptr_out << " data=[";
    for (size_t i = 0; i < r.data_out.size(); ++i) {
        if (i) ss << " ";
        ss << "0x" << std::hex << r.data_out[i] << std::dec;
    }
    ss << "]";
    return ss.str();
}

std::string show_request(const Request& r) {
    std::ostringstream ss;
    ss << opcode_name(r.opcode) << " pe" << int(r.pe_id) << " mem" << int(r.sm_addr)
       << " vptr=" << r.vptr << " dim=" << r.dim << " type=" << elem_type_name(r.elem_type);
    return ss.str();
}

}  // namespace

DiffReport difftest(const SystemConfig& cfg_in, uint64_t seed, uint64_t n_ops) {
    SystemConfig cfg = cfg_in;
    cfg.resize_per_module();

    DiffReport rep;
    rep.seed = seed;
    rep.ops = n_ops;

    std::vector<std::unique_ptr<Wrapper>> wrappers;
    for (uint32_t m = 0; m < cfg.n_mems; ++m)
        wrappers.push_back(std::make_unique<Wrapper>(cfg.capacity_bytes[m],
                                                     cfg.endianness[m], cfg.delays));
    ReferenceOracle oracle(cfg.n_mems, cfg.capacity_bytes, cfg.endianness);
    RequestGenerator gen(cfg, seed);

    for (uint64_t i = 0; i < n_ops; ++i) {
        Request r = gen.next();

        Response got;
        if (r.sm_addr >= cfg.n_mems) {
            got.status = Status::ERR_BADOP;  // interconnect range check
        } else {
            got = wrappers[r.sm_addr]->execute(r);
        }
        Response want = oracle.apply(r);

        rep.status_counts[static_cast<size_t>(got.status)]++;

        bool same = got.status == want.status && got.vptr_out == want.vptr_out &&
                    got.data_out == want.data_out;
        if (!same) {
            rep.pass = false;
            rep.diverged_index = i;
            std::ostringstream ss;
            ss << "request " << show_request(r) << "\nwrapper " << show_response(got)
               << "\noracle  " << show_response(want);
            rep.detail = ss.str();
            return rep;
        }

        // live buffers must equal live table rows at every step
        if (r.sm_addr < cfg.n_mems) {
            const Wrapper& wr = *wrappers[r.sm_addr];
            if (wr.store().live_count() != wr.table().entries().size() ||
                oracle.live_allocs(r.sm_addr) != wr.table().entries().size()) {
                rep.pass = false;
                rep.diverged_index = i;
                rep.detail = "buffer/table count mismatch after " + show_request(r);
                return rep;
            }
        }

        gen.observe(r, got);
    }

    rep.live_final.resize(cfg.n_mems);
    for (uint32_t m = 0; m < cfg.n_mems; ++m)
        rep.live_final[m] = wrappers[m]->table().entries().size();
    return rep;
}

std::string DiffReport::to_string() const {
    std::ostringstream ss;
    ss << "difftest seed=" << seed << " ops=" << ops << "\n";
    for (int i = 0; i < 5; ++i)
        ss << "status_count " << status_name(static_cast<Status>(i)) << "="
           << status_counts[i] << "\n";
    for (size_t m = 0; m < live_final.size(); ++m)
        ss << "live_allocs_final mem" << m << "=" << live_final[m] << "\n";
    if (pass) {
        ss << "result PASS\n";
    } else {
        ss << "result FAIL\n";
        ss << "diverged_index " << diverged_index << "\n";
        ss << "minimal_failing_prefix " << diverged_index + 1 << "\n";
        ss << "reproducer seed=" << seed << " index=" << diverged_index << "\n";
        ss << detail << "\n";
    }
    return ss.str();
}

}  // namespace smsim
