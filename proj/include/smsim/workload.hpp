#ifndef SMSIM_WORKLOAD_HPP
#define SMSIM_WORKLOAD_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "smsim/protocol.hpp"

namespace smsim {

// Workload DSL, one instruction per line, '#' comments, case-insensitive
// mnemonics, $-prefixed variables, 0x hex literals:
//
//   alloc $v memN dim type [expect STATUS]
//   write memN addr value  [expect STATUS]
//   read $v memN addr      [expect STATUS]
//   warr memN addr w0 w1.. [expect STATUS]
//   rarr $v.. memN addr count [expect STATUS]
//   free memN addr         [expect STATUS]
//   reserve memN addr      [expect STATUS]
//   release memN addr      [expect STATUS]
//   assert $v value
//   wait cycles
//   end
//
// addr is $var, $var+N (byte offset, no spaces) or a bare literal. rarr may
// list fewer vars than count; extra beats are read but left unbound.
// Programs must end with 'end'; variables must be defined (alloc/read/rarr)
// before use.

enum class InstrKind : uint8_t {
    ALLOC, WRITE, READ, WARR, RARR, FREE, RESERVE, RELEASE, ASSERT, WAIT, END
};

struct AddrExpr {
    std::string var;     // empty -> absolute address in offset
    uint32_t offset = 0;
};

struct Instruction {
    InstrKind kind = InstrKind::END;
    int line = 0;
    std::string var;                 // alloc/read result, assert subject
    std::vector<std::string> vars;   // rarr result list
    uint8_t mem = 0;
    AddrExpr addr;
    uint32_t dim = 0;                // alloc dim, rarr count, wait cycles
    ElemType type = ElemType::U32;
    std::vector<uint32_t> words;     // warr payload, write/assert value
    Status expect = Status::OK;
};

struct WorkloadProgram {
    std::vector<Instruction> instrs;
};

class WorkloadParseError : public std::runtime_error {
public:
    WorkloadParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

WorkloadProgram parse_workload(const std::string& text);
WorkloadProgram load_workload(const std::string& path);

// True for instructions that become bus transactions.
constexpr bool is_transaction(InstrKind k) {
    return k != InstrKind::ASSERT && k != InstrKind::WAIT && k != InstrKind::END;
}

}  // namespace smsim

#endif  // SMSIM_WORKLOAD_HPP
