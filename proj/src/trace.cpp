#include "smsim/trace.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "smsim/oracle.hpp"

namespace smsim {

namespace {

constexpr uint32_t kMagic = 0x52544d53;  // "SMTR" little-endian
constexpr uint32_t kVersion = 1;

void put_u32(std::ostream& out, uint32_t v) {
    uint8_t b[4] = {static_cast<uint8_t>(v), static_cast<uint8_t>(v >> 8),
                    static_cast<uint8_t>(v >> 16), static_cast<uint8_t>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& out, uint64_t v) {
    put_u32(out, static_cast<uint32_t>(v));
    put_u32(out, static_cast<uint32_t>(v >> 32));
}

bool get_u32(std::istream& in, uint32_t* v) {
    uint8_t b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) return false;
    *v = static_cast<uint32_t>(b[0]) | static_cast<uint32_t>(b[1]) << 8 |
         static_cast<uint32_t>(b[2]) << 16 | static_cast<uint32_t>(b[3]) << 24;
    return true;
}

bool get_u64(std::istream& in, uint64_t* v) {
    uint32_t lo = 0, hi = 0;
    if (!get_u32(in, &lo) || !get_u32(in, &hi)) return false;
    *v = static_cast<uint64_t>(hi) << 32 | lo;
    return true;
}

}  // namespace

void write_trace(const std::vector<TraceRecord>& records, std::ostream& out) {
    put_u32(out, kMagic);
    put_u32(out, kVersion);
    for (const auto& r : records) {
        put_u32(out, r.kind);
        put_u64(out, r.sample_cycle);
        put_u64(out, r.ack_cycle);
        put_u32(out, static_cast<uint32_t>(r.request_words.size()));
        for (uint32_t w : r.request_words) put_u32(out, w);
        put_u32(out, static_cast<uint32_t>(r.status));
        put_u32(out, r.vptr_out);
        put_u32(out, static_cast<uint32_t>(r.data_out.size()));
        for (uint32_t w : r.data_out) put_u32(out, w);
    }
}

void write_trace_file(const std::vector<TraceRecord>& records, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open trace file for writing: " + path);
    write_trace(records, f);
}

std::vector<TraceRecord> read_trace(std::istream& in) {
    uint32_t magic = 0, version = 0;
    if (!get_u32(in, &magic) || magic != kMagic)
        throw std::runtime_error("trace: bad magic");
    if (!get_u32(in, &version) || version != kVersion)
        throw std::runtime_error("trace: unsupported version");

    std::vector<TraceRecord> records;
    uint32_t kind = 0;
    while (get_u32(in, &kind)) {
        TraceRecord r;
        r.kind = static_cast<uint8_t>(kind);
        uint32_t n = 0, st = 0;
        if (!get_u64(in, &r.sample_cycle) || !get_u64(in, &r.ack_cycle) ||
            !get_u32(in, &n))
            throw std::runtime_error("trace: truncated record");
        r.request_words.resize(n);
        for (uint32_t i = 0; i < n; ++i)
            if (!get_u32(in, &r.request_words[i]))
                throw std::runtime_error("trace: truncated record");
        if (!get_u32(in, &st) || !get_u32(in, &r.vptr_out) || !get_u32(in, &n))
            throw std::runtime_error("trace: truncated record");
        r.status = static_cast<Status>(st);
        r.data_out.resize(n);
        for (uint32_t i = 0; i < n; ++i)
            if (!get_u32(in, &r.data_out[i]))
                throw std::runtime_error("trace: truncated record");
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<TraceRecord> read_trace_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open trace file: " + path);
    return read_trace(f);
}

AuditResult audit_timing(const std::vector<TraceRecord>& records,
                         const DelayConfig& delays) {
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.kind != TraceRecord::WRAPPER_TXN) continue;
        auto req = decode_request(r.request_words);
        if (!req) return {false, "record " + std::to_string(i) + ": undecodable request"};
        uint32_t beats = beats_for(req->opcode, req->dim);
        uint64_t want = 2 + delays.delay_for(req->opcode, beats) + beats;
        uint64_t got = r.ack_cycle - r.sample_cycle;
        if (got != want) {
            std::ostringstream ss;
            ss << "record " << i << " (" << opcode_name(req->opcode) << " dim "
               << req->dim << "): ack-sample = " << got << ", want " << want;
            return {false, ss.str()};
        }
    }
    return {};
}

AuditResult audit_module_exclusive(const std::vector<TraceRecord>& records) {
    // busy intervals [sample, ack] per module, in ack order per module
    std::map<uint32_t, uint64_t> last_ack;
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.kind != TraceRecord::WRAPPER_TXN) continue;
        auto req = decode_request(r.request_words);
        if (!req) return {false, "record " + std::to_string(i) + ": undecodable request"};
        auto it = last_ack.find(req->sm_addr);
        if (it != last_ack.end() && r.sample_cycle <= it->second) {
            std::ostringstream ss;
            ss << "record " << i << ": module " << int(req->sm_addr)
               << " sampled at " << r.sample_cycle << " before previous ack "
               << it->second;
            return {false, ss.str()};
        }
        last_ack[req->sm_addr] = r.ack_cycle;
    }
    return {};
}

AuditResult audit_reservations(const std::vector<TraceRecord>& records, uint32_t n_mems,
                               const std::vector<uint64_t>& capacity_bytes,
                               const std::vector<Endianness>& endianness) {
    ReferenceOracle oracle(n_mems, capacity_bytes, endianness);
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.kind != TraceRecord::WRAPPER_TXN) continue;
        auto req = decode_request(r.request_words);
        if (!req) return {false, "record " + std::to_string(i) + ": undecodable request"};

        bool mutation = req->opcode == Opcode::WRITE ||
                        req->opcode == Opcode::WRITE_ARR || req->opcode == Opcode::FREE;
        if (mutation && r.status == Status::OK && req->sm_addr < n_mems) {
            std::optional<uint8_t> holder =
                req->opcode == Opcode::FREE
                    ? oracle.holder_of(req->sm_addr, req->vptr)
                    : oracle.holder_covering(req->sm_addr, req->vptr);
            if (holder && *holder != req->pe_id) {
                std::ostringstream ss;
                ss << "record " << i << ": pe " << int(req->pe_id) << " mutated entry "
                   << req->vptr << " reserved by pe " << int(*holder);
                return {false, ss.str()};
            }
        }

        Response expect = oracle.apply(*req);
        if (expect.status != r.status) {
            std::ostringstream ss;
            ss << "record " << i << ": trace status " << status_name(r.status)
               << " disagrees with replay " << status_name(expect.status);
            return {false, ss.str()};
        }
    }
    return {};
}

}  // namespace smsim
