#pragma once

// Run configuration: protocol choice, quorum/stability parameters, client
// workload, fault schedule, delivery policy, seed. Parses from and prints
// to a flat key = value document with a [schedule] section for inline fault
// entries, and validates the stability parameter against the protocol's
// quorums up front.

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "quorum.hpp"
#include "core.hpp"

namespace radon {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Proto : std::uint8_t { radon_l, radon_c, radon_s };
enum class Condition : std::uint8_t { none, n1, n2 };
enum class DeliveryPolicy : std::uint8_t { fifo, random_delay, max_reorder };
enum class FaultGenKind : std::uint8_t { none, random_faults, theorem1, burst, inline_list };

inline const char* proto_name(Proto p) {
    switch (p) {
        case Proto::radon_l: return "radon-l";
        case Proto::radon_c: return "radon-c";
        case Proto::radon_s: return "radon-s";
    }
    return "?";
}

inline const char* condition_name(Condition c) {
    switch (c) {
        case Condition::none: return "none";
        case Condition::n1: return "n1";
        case Condition::n2: return "n2";
    }
    return "?";
}

inline const char* delivery_name(DeliveryPolicy d) {
    switch (d) {
        case DeliveryPolicy::fifo: return "fifo";
        case DeliveryPolicy::random_delay: return "random";
        case DeliveryPolicy::max_reorder: return "max-reorder";
    }
    return "?";
}

inline const char* fault_gen_name(FaultGenKind f) {
    switch (f) {
        case FaultGenKind::none: return "none";
        case FaultGenKind::random_faults: return "random";
        case FaultGenKind::theorem1: return "theorem1";
        case FaultGenKind::burst: return "burst";
        case FaultGenKind::inline_list: return "inline";
    }
    return "?";
}

struct FaultEntry {
    enum class Kind : std::uint8_t { crash, repair, crash_mid_group_send } kind{Kind::crash};
    std::uint64_t at{0};
    ProcessId target{};
    std::uint32_t prefix{0};  // crash_mid_group_send: messages sent before the crash

    bool operator==(const FaultEntry&) const = default;
};

struct FaultConfig {
    FaultGenKind kind{FaultGenKind::none};
    double rate{0.0};               // random generator: crash probability per event
    std::uint32_t max_crashes{0};   // random generator cap; 0 = derived from n
    std::vector<FaultEntry> entries;

    bool operator==(const FaultConfig&) const = default;
};

struct ScenarioConfig {
    Proto protocol{Proto::radon_l};
    std::uint32_t n{5};
    std::uint32_t k{1};
    std::uint32_t delta{0};
    double alpha{0.8};
    Condition condition{Condition::none};
    std::uint32_t writers{1};
    std::uint32_t readers{1};
    std::uint32_t ops_per_client{3};
    std::size_t value_size{24};
    FaultConfig fault{};
    DeliveryPolicy delivery{DeliveryPolicy::random_delay};
    std::uint64_t seed{1};
    std::uint64_t step_budget{500000};

    bool operator==(const ScenarioConfig&) const = default;

    // |S_alpha| = ceil(alpha * n), guarded against binary rounding.
    std::uint32_t alpha_count() const {
        return static_cast<std::uint32_t>(std::ceil(alpha * n - 1e-9));
    }

    std::uint32_t put_quorum() const {
        return protocol == Proto::radon_c ? quorum_sizes_c(n, k).put_quorum : quorum_sizes_l(n).put_quorum;
    }

    void validate() const {
        if (n < 1) throw ConfigError("config: n must be at least 1");
        if (protocol == Proto::radon_c) {
            if (k < 1 || k > n) throw ConfigError("config: radon-c needs 1 <= k <= n");
            if (n > 255) throw ConfigError("config: radon-c supports at most 255 servers");
            if (value_size == 0 || value_size % k != 0)
                throw ConfigError("config: value-size " + std::to_string(value_size) +
                                  " must be a positive multiple of k=" + std::to_string(k));
        }
        if (value_size == 0) throw ConfigError("config: value-size must be positive");
        if (alpha <= 0.0 || alpha > 1.0) throw ConfigError("config: alpha must be in (0, 1]");
        if (condition != Condition::none && alpha_count() < put_quorum())
            throw ConfigError("config: ceil(alpha*n) = " + std::to_string(alpha_count()) +
                              " is below the put-phase quorum " + std::to_string(put_quorum()) +
                              " required by " + proto_name(protocol));
        if (fault.kind == FaultGenKind::random_faults && (fault.rate < 0.0 || fault.rate > 1.0))
            throw ConfigError("config: fault rate must be in [0, 1]");
        if (step_budget == 0) throw ConfigError("config: step budget must be positive");
        for (const auto& e : fault.entries) {
            if (e.kind != FaultEntry::Kind::crash_mid_group_send && e.target.kind != ProcessKind::server)
                continue;  // client crash entries are fine
            if (e.target.kind == ProcessKind::server && (e.target.index < 1 || e.target.index > n))
                throw ConfigError("config: fault entry targets server out of range");
        }
    }
};

// Deterministic per-writer op values; distinct tags get distinct payloads.
inline Value workload_value(std::uint32_t writer_index, std::uint32_t op_index, std::size_t size) {
    Value v;
    v.bytes.resize(size);
    for (std::size_t b = 0; b < size; ++b)
        v.bytes[b] = static_cast<std::uint8_t>(37 * writer_index + 11 * op_index + 7 * b + 3);
    return v;
}

// ---- config document ----

inline std::string print_config(const ScenarioConfig& c) {
    std::ostringstream os;
    os << "protocol = " << proto_name(c.protocol) << '\n';
    os << "n = " << c.n << '\n';
    os << "k = " << c.k << '\n';
    os << "delta = " << c.delta << '\n';
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", c.alpha);
    os << "alpha = " << buf << '\n';
    os << "condition = " << condition_name(c.condition) << '\n';
    os << "writers = " << c.writers << '\n';
    os << "readers = " << c.readers << '\n';
    os << "ops = " << c.ops_per_client << '\n';
    os << "value_size = " << c.value_size << '\n';
    os << "delivery = " << delivery_name(c.delivery) << '\n';
    os << "seed = " << c.seed << '\n';
    os << "budget = " << c.step_budget << '\n';
    os << "fault = " << fault_gen_name(c.fault.kind) << '\n';
    std::snprintf(buf, sizeof(buf), "%.17g", c.fault.rate);
    os << "fault_rate = " << buf << '\n';
    os << "fault_max_crashes = " << c.fault.max_crashes << '\n';
    if (!c.fault.entries.empty()) {
        os << "[schedule]\n";
        for (const auto& e : c.fault.entries) {
            switch (e.kind) {
                case FaultEntry::Kind::crash:
                    os << "crash " << e.at << " " << to_string(e.target) << '\n';
                    break;
                case FaultEntry::Kind::repair:
                    os << "repair " << e.at << " " << to_string(e.target) << '\n';
                    break;
                case FaultEntry::Kind::crash_mid_group_send:
                    os << "crash-mid-group-send " << e.at << " " << to_string(e.target) << " " << e.prefix << '\n';
                    break;
            }
        }
    }
    return os.str();
}

namespace detail {

inline ProcessId parse_process_id(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ConfigError("config: bad process id '" + s + "'");
    std::string kind = s.substr(0, colon);
    std::uint32_t idx = static_cast<std::uint32_t>(std::strtoul(s.c_str() + colon + 1, nullptr, 10));
    if (kind == "server") return server_id(idx);
    if (kind == "writer") return writer_id(idx);
    if (kind == "reader") return reader_id(idx);
    throw ConfigError("config: bad process kind '" + kind + "'");
}

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

inline ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig c;
    c.fault.entries.clear();
    std::istringstream in(text);
    std::string line;
    bool in_schedule = false;
    while (std::getline(in, line)) {
        line = detail::trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line == "[schedule]") {
            in_schedule = true;
            continue;
        }
        if (in_schedule) {
            std::istringstream ls(line);
            std::string verb, target;
            std::uint64_t at = 0;
            ls >> verb >> at >> target;
            FaultEntry e;
            e.at = at;
            e.target = detail::parse_process_id(target);
            if (verb == "crash") {
                e.kind = FaultEntry::Kind::crash;
            } else if (verb == "repair") {
                e.kind = FaultEntry::Kind::repair;
            } else if (verb == "crash-mid-group-send") {
                e.kind = FaultEntry::Kind::crash_mid_group_send;
                ls >> e.prefix;
            } else {
                throw ConfigError("config: bad schedule verb '" + verb + "'");
            }
            c.fault.entries.push_back(e);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config: expected key = value, got '" + line + "'");
        std::string key = detail::trim(line.substr(0, eq));
        std::string val = detail::trim(line.substr(eq + 1));
        if (key == "protocol") {
            if (val == "radon-l") c.protocol = Proto::radon_l;
            else if (val == "radon-c") c.protocol = Proto::radon_c;
            else if (val == "radon-s") c.protocol = Proto::radon_s;
            else throw ConfigError("config: unknown protocol '" + val + "'");
        } else if (key == "n") c.n = static_cast<std::uint32_t>(std::stoul(val));
        else if (key == "k") c.k = static_cast<std::uint32_t>(std::stoul(val));
        else if (key == "delta") c.delta = static_cast<std::uint32_t>(std::stoul(val));
        else if (key == "alpha") c.alpha = std::stod(val);
        else if (key == "condition") {
            if (val == "none") c.condition = Condition::none;
            else if (val == "n1") c.condition = Condition::n1;
            else if (val == "n2") c.condition = Condition::n2;
            else throw ConfigError("config: unknown condition '" + val + "'");
        } else if (key == "writers") c.writers = static_cast<std::uint32_t>(std::stoul(val));
        else if (key == "readers") c.readers = static_cast<std::uint32_t>(std::stoul(val));
        else if (key == "ops") c.ops_per_client = static_cast<std::uint32_t>(std::stoul(val));
        else if (key == "value_size") c.value_size = std::stoul(val);
        else if (key == "delivery") {
            if (val == "fifo") c.delivery = DeliveryPolicy::fifo;
            else if (val == "random") c.delivery = DeliveryPolicy::random_delay;
            else if (val == "max-reorder") c.delivery = DeliveryPolicy::max_reorder;
            else throw ConfigError("config: unknown delivery policy '" + val + "'");
        } else if (key == "seed") c.seed = std::stoull(val);
        else if (key == "budget") c.step_budget = std::stoull(val);
        else if (key == "fault") {
            if (val == "none") c.fault.kind = FaultGenKind::none;
            else if (val == "random") c.fault.kind = FaultGenKind::random_faults;
            else if (val == "theorem1") c.fault.kind = FaultGenKind::theorem1;
            else if (val == "burst") c.fault.kind = FaultGenKind::burst;
            else if (val == "inline") c.fault.kind = FaultGenKind::inline_list;
            else throw ConfigError("config: unknown fault generator '" + val + "'");
        } else if (key == "fault_rate") c.fault.rate = std::stod(val);
        else if (key == "fault_max_crashes") c.fault.max_crashes = static_cast<std::uint32_t>(std::stoul(val));
        else throw ConfigError("config: unknown key '" + key + "'");
    }
    return c;
}

// Named presets. theorem1 reproduces the one-at-a-time crash/repair
// adversary against a single write; basic is a small fault-free run.
inline void apply_preset(const std::string& name, ScenarioConfig& c) {
    if (name == "basic") {
        c.fault = FaultConfig{};
        c.writers = 1;
        c.readers = 1;
        c.ops_per_client = 3;
    } else if (name == "theorem1") {
        c.protocol = c.protocol == Proto::radon_c ? Proto::radon_c : Proto::radon_l;
        c.writers = 1;
        c.readers = 0;
        c.ops_per_client = 1;
        c.fault = FaultConfig{};
        c.fault.kind = FaultGenKind::theorem1;
        c.delivery = DeliveryPolicy::fifo;
    } else {
        throw ConfigError("config: unknown scenario preset '" + name + "'");
    }
}

}  // namespace radon
