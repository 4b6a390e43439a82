#include "smsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace smsim {

void SystemConfig::resize_per_module() {
    if (capacity_bytes.empty()) capacity_bytes.assign(1, 65536);
    if (endianness.empty()) endianness.assign(1, Endianness::LITTLE);
    capacity_bytes.resize(n_mems, capacity_bytes.back());
    endianness.resize(n_mems, endianness.back());
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

uint64_t parse_u64(const std::string& v, int line) {
    size_t pos = 0;
    uint64_t x = 0;
    try {
        x = std::stoull(v, &pos, v.starts_with("0x") ? 16 : 10);
    } catch (const std::exception&) {
        throw ConfigError(line, "bad numeric value '" + v + "'");
    }
    if (pos != v.size()) throw ConfigError(line, "bad numeric value '" + v + "'");
    return x;
}

struct DelayKey {
    const char* name;
    Opcode op;
};
constexpr DelayKey kDelayKeys[] = {
    {"alloc_base", Opcode::ALLOC},         {"read_base", Opcode::READ},
    {"write_base", Opcode::WRITE},         {"free_base", Opcode::FREE},
    {"read_arr_base", Opcode::READ_ARR},   {"write_arr_base", Opcode::WRITE_ARR},
    {"reserve_base", Opcode::RESERVE},     {"release_base", Opcode::RELEASE},
};

}  // namespace

SystemConfig parse_config(const std::string& text) {
    SystemConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    enum class Section { NONE, SYSTEM, DELAYS } section = Section::NONE;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;

        if (line.front() == '[') {
            std::string name = lower(line);
            if (name == "[system]")
                section = Section::SYSTEM;
            else if (name == "[delays]")
                section = Section::DELAYS;
            else
                throw ConfigError(line_no, "unknown section " + line);
            continue;
        }

        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line_no, "expected key = value, got '" + line + "'");
        std::string key = lower(trim(line.substr(0, eq)));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError(line_no, "expected key = value, got '" + line + "'");

        if (section == Section::SYSTEM || section == Section::NONE) {
            if (key == "pes") {
                uint64_t v = parse_u64(val, line_no);
                if (v < 1 || v > 256) throw ConfigError(line_no, "pes must be in 1..256");
                cfg.n_pes = static_cast<uint32_t>(v);
                continue;
            }
            if (key == "memories") {
                uint64_t v = parse_u64(val, line_no);
                if (v < 1 || v > 256) throw ConfigError(line_no, "memories must be in 1..256");
                cfg.n_mems = static_cast<uint32_t>(v);
                continue;
            }
            if (key == "capacity_bytes") {
                uint64_t v = parse_u64(val, line_no);
                if (v < 1) throw ConfigError(line_no, "capacity_bytes must be >= 1");
                cfg.capacity_bytes.assign(1, v);
                continue;
            }
            if (key == "endianness") {
                std::string e = lower(val);
                if (e == "little")
                    cfg.endianness.assign(1, Endianness::LITTLE);
                else if (e == "big")
                    cfg.endianness.assign(1, Endianness::BIG);
                else
                    throw ConfigError(line_no, "endianness must be little or big, got '" + val + "'");
                continue;
            }
            if (key == "max_cycles") {
                uint64_t v = parse_u64(val, line_no);
                if (v < 1) throw ConfigError(line_no, "max_cycles must be >= 1");
                cfg.max_cycles = v;
                continue;
            }
            if (key == "seed") {
                cfg.seed = parse_u64(val, line_no);
                continue;
            }
        }
        if (section == Section::DELAYS || section == Section::NONE) {
            bool matched = false;
            for (const auto& dk : kDelayKeys) {
                if (key == dk.name) {
                    cfg.delays.base[static_cast<size_t>(dk.op)] =
                        static_cast<uint32_t>(parse_u64(val, line_no));
                    matched = true;
                    break;
                }
            }
            if (matched) continue;
            if (key == "per_word") {
                cfg.delays.per_word = static_cast<uint32_t>(parse_u64(val, line_no));
                continue;
            }
        }
        throw ConfigError(line_no, "unknown key '" + key + "'");
    }

    cfg.resize_per_module();
    return cfg;
}

SystemConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string emit_config(const SystemConfig& cfg) {
    std::ostringstream out;
    out << "[system]\n";
    out << "pes = " << cfg.n_pes << "\n";
    out << "memories = " << cfg.n_mems << "\n";
    out << "capacity_bytes = " << cfg.capacity_bytes.at(0) << "\n";
    out << "endianness = "
        << (cfg.endianness.at(0) == Endianness::LITTLE ? "little" : "big") << "\n";
    out << "max_cycles = " << cfg.max_cycles << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "\n[delays]\n";
    for (const auto& dk : kDelayKeys)
        out << dk.name << " = " << cfg.delays.base[static_cast<size_t>(dk.op)] << "\n";
    out << "per_word = " << cfg.delays.per_word << "\n";
    return out.str();
}

}  // namespace smsim
