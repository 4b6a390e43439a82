#include "smsim/protocol.hpp"

#include <algorithm>
#include <cctype>

namespace smsim {

const char* opcode_name(Opcode op) {
    switch (op) {
        case Opcode::ALLOC: return "ALLOC";
        case Opcode::READ: return "READ";
        case Opcode::WRITE: return "WRITE";
        case Opcode::FREE: return "FREE";
        case Opcode::READ_ARR: return "READ_ARR";
        case Opcode::WRITE_ARR: return "WRITE_ARR";
        case Opcode::RESERVE: return "RESERVE";
        case Opcode::RELEASE: return "RELEASE";
    }
    return "?";
}

const char* elem_type_name(ElemType t) {
    switch (t) {
        case ElemType::U8: return "u8";
        case ElemType::I8: return "i8";
        case ElemType::U16: return "u16";
        case ElemType::I16: return "i16";
        case ElemType::U32: return "u32";
        case ElemType::I32: return "i32";
    }
    return "?";
}

const char* status_name(Status s) {
    switch (s) {
        case Status::OK: return "OK";
        case Status::ERR_OOM: return "ERR_OOM";
        case Status::ERR_BADPTR: return "ERR_BADPTR";
        case Status::ERR_RESERVED: return "ERR_RESERVED";
        case Status::ERR_BADOP: return "ERR_BADOP";
    }
    return "?";
}

static std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::optional<ElemType> elem_type_from_name(std::string_view name) {
    std::string n = lower(name);
    if (n == "u8") return ElemType::U8;
    if (n == "i8") return ElemType::I8;
    if (n == "u16") return ElemType::U16;
    if (n == "i16") return ElemType::I16;
    if (n == "u32") return ElemType::U32;
    if (n == "i32") return ElemType::I32;
    return std::nullopt;
}

std::optional<Status> status_from_name(std::string_view name) {
    std::string n = lower(name);
    if (n == "ok") return Status::OK;
    if (n == "err_oom") return Status::ERR_OOM;
    if (n == "err_badptr") return Status::ERR_BADPTR;
    if (n == "err_reserved") return Status::ERR_RESERVED;
    if (n == "err_badop") return Status::ERR_BADOP;
    return std::nullopt;
}

std::vector<uint32_t> encode_request(const Request& r) {
    std::vector<uint32_t> words;
    words.reserve(3 + r.data.size());
    words.push_back(static_cast<uint32_t>(r.pe_id) << 24 |
                    static_cast<uint32_t>(r.sm_addr) << 16 |
                    static_cast<uint32_t>(r.opcode) << 8 |
                    static_cast<uint32_t>(r.elem_type));
    words.push_back(r.vptr);
    words.push_back(r.dim);
    words.insert(words.end(), r.data.begin(), r.data.end());
    return words;
}

std::optional<Request> decode_request(std::span<const uint32_t> words) {
    if (words.size() < 3) return std::nullopt;
    uint32_t w0 = words[0];
    uint32_t op_field = (w0 >> 8) & 0xff;
    uint32_t type_field = w0 & 0xff;
    if (op_field >= kNumOpcodes || type_field >= kNumElemTypes) return std::nullopt;

    Request r;
    r.pe_id = static_cast<uint8_t>(w0 >> 24);
    r.sm_addr = static_cast<uint8_t>((w0 >> 16) & 0xff);
    r.opcode = static_cast<Opcode>(op_field);
    r.elem_type = static_cast<ElemType>(type_field);
    r.vptr = words[1];
    r.dim = words[2];

    uint64_t expected = 3 + static_cast<uint64_t>(request_data_words(r.opcode, r.dim));
    if (words.size() != expected) return std::nullopt;
    r.data.assign(words.begin() + 3, words.end());
    return r;
}

}  // namespace smsim
