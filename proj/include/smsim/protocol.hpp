#ifndef SMSIM_PROTOCOL_HPP
#define SMSIM_PROTOCOL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace smsim {

// Transaction opcodes. Encodings are wire-stable: 4-bit field, values 0..7.
enum class Opcode : uint8_t {
    ALLOC = 0,
    READ = 1,
    WRITE = 2,
    FREE = 3,
    READ_ARR = 4,
    WRITE_ARR = 5,
    RESERVE = 6,
    RELEASE = 7,
};
inline constexpr int kNumOpcodes = 8;

// Element types carried by allocations and accesses.
enum class ElemType : uint8_t {
    U8 = 0,
    I8 = 1,
    U16 = 2,
    I16 = 3,
    U32 = 4,
    I32 = 5,
};
inline constexpr int kNumElemTypes = 6;

// Byte width of one element (the DATA_SIZE of a calloc-style allocation).
constexpr uint32_t data_size(ElemType t) {
    switch (t) {
        case ElemType::U8:
        case ElemType::I8:
            return 1;
        case ElemType::U16:
        case ElemType::I16:
            return 2;
        case ElemType::U32:
        case ElemType::I32:
            return 4;
    }
    return 0;
}

constexpr bool is_signed(ElemType t) {
    return t == ElemType::I8 || t == ElemType::I16 || t == ElemType::I32;
}

enum class Status : uint8_t {
    OK = 0,
    ERR_OOM = 1,       // allocation denied, capacity limit reached
    ERR_BADPTR = 2,    // vptr resolves to no entry / misaligned / out of entry
    ERR_RESERVED = 3,  // entry reserved by another pe
    ERR_BADOP = 4,     // malformed request or protocol violation
};

const char* opcode_name(Opcode op);
const char* elem_type_name(ElemType t);
const char* status_name(Status s);

// Parses names as used by the workload DSL / config files (case-insensitive).
std::optional<ElemType> elem_type_from_name(std::string_view name);
std::optional<Status> status_from_name(std::string_view name);

// One transaction from a processing element to a memory wrapper.
// data carries 1 word for WRITE, dim words for WRITE_ARR, nothing otherwise.
struct Request {
    uint8_t pe_id = 0;
    uint8_t sm_addr = 0;
    Opcode opcode = Opcode::ALLOC;
    uint32_t vptr = 0;
    uint32_t dim = 0;
    ElemType elem_type = ElemType::U8;
    std::vector<uint32_t> data;

    bool operator==(const Request&) const = default;
};

// Completion of a transaction. data_out carries 1 word for READ, dim words
// for READ_ARR, nothing otherwise; on non-OK status it is empty and
// vptr_out is 0.
struct Response {
    Status status = Status::OK;
    uint32_t vptr_out = 0;
    std::vector<uint32_t> data_out;
    uint64_t completion_cycle = 0;

    bool operator==(const Response&) const = default;
};

// Cycle-level master bundle: req plus the request header, held stable from
// the sample cycle until ack; beat_data is driven one word per RECV cycle
// during WRITE_ARR.
struct MasterSignals {
    bool req = false;
    Request request;
    uint32_t beat_data = 0;
};

// Cycle-level slave bundle. ack is a one-cycle pulse; response fields are
// valid only while ack is high. out_valid marks READ_ARR send beats.
struct SlaveSignals {
    bool ack = false;
    bool out_valid = false;
    Status status = Status::OK;
    uint32_t data_out = 0;
    uint32_t vptr_out = 0;
};

// Framed word layout (also the trace record payload):
//   word0 = pe_id<<24 | sm_addr<<16 | opcode<<8 | elem_type
//   word1 = vptr
//   word2 = dim
//   then the data words dictated by the opcode.
std::vector<uint32_t> encode_request(const Request& r);

// Inverse of encode_request. Malformed length or out-of-range opcode /
// elem_type field yields nullopt (callers surface ERR_BADOP).
std::optional<Request> decode_request(std::span<const uint32_t> words);

// Number of data words a request carries for the given opcode.
constexpr uint32_t request_data_words(Opcode op, uint32_t dim) {
    if (op == Opcode::WRITE) return 1;
    if (op == Opcode::WRITE_ARR) return dim;
    return 0;
}

}  // namespace smsim

#endif  // SMSIM_PROTOCOL_HPP
