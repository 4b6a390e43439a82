#ifndef SMSIM_TRACE_HPP
#define SMSIM_TRACE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "smsim/protocol.hpp"
#include "smsim/wrapper.hpp"

namespace smsim {

// One traced transaction. request_words is the encode_request framing (for
// WRITE_ARR it contains the beat words the wrapper actually consumed).
struct TraceRecord {
    enum Kind : uint8_t { WRAPPER_TXN = 0, XBAR_REJECT = 1 };
    uint8_t kind = WRAPPER_TXN;
    uint64_t sample_cycle = 0;
    uint64_t ack_cycle = 0;
    std::vector<uint32_t> request_words;
    Status status = Status::OK;
    uint32_t vptr_out = 0;
    std::vector<uint32_t> data_out;

    bool operator==(const TraceRecord&) const = default;
};

// Binary trace file: 'SMTR' magic, u32 version, then records. All integers
// little-endian on disk.
void write_trace(const std::vector<TraceRecord>& records, std::ostream& out);
void write_trace_file(const std::vector<TraceRecord>& records, const std::string& path);
std::vector<TraceRecord> read_trace(std::istream& in);
std::vector<TraceRecord> read_trace_file(const std::string& path);

struct AuditResult {
    bool ok = true;
    std::string detail;
};

// Every wrapper transaction satisfies ack - sample = 2 + D + B.
AuditResult audit_timing(const std::vector<TraceRecord>& records, const DelayConfig& delays);

// Per module, transactions never overlap in [sample, ack].
AuditResult audit_module_exclusive(const std::vector<TraceRecord>& records);

// Replays the trace through a fresh functional model: statuses must match,
// and no OK-status WRITE/WRITE_ARR/FREE may come from a non-holder while
// the entry is reserved.
AuditResult audit_reservations(const std::vector<TraceRecord>& records, uint32_t n_mems,
                               const std::vector<uint64_t>& capacity_bytes,
                               const std::vector<Endianness>& endianness);

}  // namespace smsim

#endif  // SMSIM_TRACE_HPP
