#include "smsim/workload.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace smsim {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream iss(line.substr(0, line.find('#')));
    std::string t;
    while (iss >> t) toks.push_back(t);
    return toks;
}

uint32_t parse_value(const std::string& tok, int line) {
    bool neg = false;
    size_t i = 0;
    if (i < tok.size() && tok[i] == '-') {
        neg = true;
        ++i;
    }
    std::string body = tok.substr(i);
    uint64_t v = 0;
    size_t pos = 0;
    try {
        v = std::stoull(body, &pos, body.starts_with("0x") || body.starts_with("0X") ? 16 : 10);
    } catch (const std::exception&) {
        throw WorkloadParseError(line, "bad numeric literal '" + tok + "'");
    }
    if (pos != body.size()) throw WorkloadParseError(line, "bad numeric literal '" + tok + "'");
    if (v > 0xffffffffull) throw WorkloadParseError(line, "literal out of 32-bit range '" + tok + "'");
    uint32_t w = static_cast<uint32_t>(v);
    return neg ? static_cast<uint32_t>(-static_cast<int64_t>(w)) : w;
}

bool is_var(const std::string& tok) { return !tok.empty() && tok[0] == '$'; }

std::string parse_var(const std::string& tok, int line) {
    if (!is_var(tok) || tok.size() < 2)
        throw WorkloadParseError(line, "expected $variable, got '" + tok + "'");
    return tok.substr(1);
}

uint8_t parse_mem(const std::string& tok, int line) {
    std::string t = lower(tok);
    if (!t.starts_with("mem") || t.size() == 3)
        throw WorkloadParseError(line, "expected memN, got '" + tok + "'");
    uint32_t idx = parse_value(t.substr(3), line);
    if (idx > 255) throw WorkloadParseError(line, "memory index out of range '" + tok + "'");
    return static_cast<uint8_t>(idx);
}

AddrExpr parse_addr(const std::string& tok, int line) {
    AddrExpr a;
    if (is_var(tok)) {
        size_t plus = tok.find('+');
        if (plus == std::string::npos) {
            a.var = parse_var(tok, line);
        } else {
            a.var = parse_var(tok.substr(0, plus), line);
            a.offset = parse_value(tok.substr(plus + 1), line);
        }
    } else {
        a.offset = parse_value(tok, line);
    }
    return a;
}

// Strips a trailing "expect STATUS" pair, returning the status.
Status take_expect(std::vector<std::string>& toks, int line) {
    if (toks.size() >= 2 && lower(toks[toks.size() - 2]) == "expect") {
        auto st = status_from_name(toks.back());
        if (!st) throw WorkloadParseError(line, "unknown status '" + toks.back() + "'");
        toks.resize(toks.size() - 2);
        return *st;
    }
    return Status::OK;
}

void need(const std::vector<std::string>& toks, size_t n, int line, const char* usage) {
    if (toks.size() != n)
        throw WorkloadParseError(line, std::string("expected: ") + usage);
}

}  // namespace

WorkloadProgram parse_workload(const std::string& text) {
    WorkloadProgram prog;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool ended = false;

    std::set<std::string> defined;
    auto check_defined = [&](const std::string& v, int line) {
        if (!defined.count(v))
            throw WorkloadParseError(line, "undefined variable '$" + v + "'");
    };
    auto check_addr = [&](const AddrExpr& a, int line) {
        if (!a.var.empty()) check_defined(a.var, line);
    };

    while (std::getline(in, raw)) {
        ++line_no;
        auto toks = tokenize(raw);
        if (toks.empty()) continue;
        if (ended) throw WorkloadParseError(line_no, "instruction after end");

        Instruction ins;
        ins.line = line_no;
        std::string mn = lower(toks[0]);
        toks.erase(toks.begin());

        if (mn == "alloc") {
            ins.kind = InstrKind::ALLOC;
            ins.expect = take_expect(toks, line_no);
            need(toks, 4, line_no, "alloc $var memN dim type");
            ins.var = parse_var(toks[0], line_no);
            ins.mem = parse_mem(toks[1], line_no);
            ins.dim = parse_value(toks[2], line_no);
            auto t = elem_type_from_name(toks[3]);
            if (!t) throw WorkloadParseError(line_no, "unknown type '" + toks[3] + "'");
            ins.type = *t;
            defined.insert(ins.var);
        } else if (mn == "write") {
            ins.kind = InstrKind::WRITE;
            ins.expect = take_expect(toks, line_no);
            need(toks, 3, line_no, "write memN addr value");
            ins.mem = parse_mem(toks[0], line_no);
            ins.addr = parse_addr(toks[1], line_no);
            check_addr(ins.addr, line_no);
            ins.words.push_back(parse_value(toks[2], line_no));
        } else if (mn == "read") {
            ins.kind = InstrKind::READ;
            ins.expect = take_expect(toks, line_no);
            need(toks, 3, line_no, "read $var memN addr");
            ins.var = parse_var(toks[0], line_no);
            ins.mem = parse_mem(toks[1], line_no);
            ins.addr = parse_addr(toks[2], line_no);
            check_addr(ins.addr, line_no);
            defined.insert(ins.var);
        } else if (mn == "warr") {
            ins.kind = InstrKind::WARR;
            ins.expect = take_expect(toks, line_no);
            if (toks.size() < 3)
                throw WorkloadParseError(line_no, "expected: warr memN addr w0 [w1 ...]");
            ins.mem = parse_mem(toks[0], line_no);
            ins.addr = parse_addr(toks[1], line_no);
            check_addr(ins.addr, line_no);
            for (size_t i = 2; i < toks.size(); ++i)
                ins.words.push_back(parse_value(toks[i], line_no));
            ins.dim = static_cast<uint32_t>(ins.words.size());
        } else if (mn == "rarr") {
            ins.kind = InstrKind::RARR;
            ins.expect = take_expect(toks, line_no);
            size_t i = 0;
            while (i < toks.size() && is_var(toks[i]))
                ins.vars.push_back(parse_var(toks[i++], line_no));
            if (ins.vars.empty() || toks.size() - i != 3)
                throw WorkloadParseError(line_no, "expected: rarr $v0 [$v1 ...] memN addr count");
            ins.mem = parse_mem(toks[i], line_no);
            ins.addr = parse_addr(toks[i + 1], line_no);
            check_addr(ins.addr, line_no);
            ins.dim = parse_value(toks[i + 2], line_no);
            if (ins.vars.size() > ins.dim)
                throw WorkloadParseError(line_no, "rarr lists more variables than count");
            for (const auto& v : ins.vars) defined.insert(v);
        } else if (mn == "free" || mn == "reserve" || mn == "release") {
            ins.kind = mn == "free"      ? InstrKind::FREE
                       : mn == "reserve" ? InstrKind::RESERVE
                                         : InstrKind::RELEASE;
            ins.expect = take_expect(toks, line_no);
            need(toks, 2, line_no, "free|reserve|release memN addr");
            ins.mem = parse_mem(toks[0], line_no);
            ins.addr = parse_addr(toks[1], line_no);
            check_addr(ins.addr, line_no);
        } else if (mn == "assert") {
            ins.kind = InstrKind::ASSERT;
            need(toks, 2, line_no, "assert $var value");
            ins.var = parse_var(toks[0], line_no);
            check_defined(ins.var, line_no);
            ins.words.push_back(parse_value(toks[1], line_no));
        } else if (mn == "wait") {
            ins.kind = InstrKind::WAIT;
            need(toks, 1, line_no, "wait cycles");
            ins.dim = parse_value(toks[0], line_no);
        } else if (mn == "end") {
            ins.kind = InstrKind::END;
            need(toks, 0, line_no, "end");
            ended = true;
        } else {
            throw WorkloadParseError(line_no, "unknown instruction '" + mn + "'");
        }
        prog.instrs.push_back(ins);
    }

    if (!ended) throw WorkloadParseError(line_no, "program must end with 'end'");
    return prog;
}

WorkloadProgram load_workload(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open workload file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_workload(ss.str());
}

}  // namespace smsim
