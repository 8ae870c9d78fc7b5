#pragma once

// Core vocabulary shared by every protocol and the analysis layer:
// process identities, version tags, register values, coded fragments.

#include <cassert>
#include <compare>
#include <cstdint>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace radon {

enum class ProcessKind : std::uint8_t { reader = 0, writer = 1, server = 2 };

// Unique process identity. (kind, index) pairs are totally ordered so
// identities can break ties in tag comparisons.
struct ProcessId {
    ProcessKind kind{ProcessKind::reader};
    std::uint32_t index{0};

    auto operator<=>(const ProcessId&) const = default;
};

inline ProcessId reader_id(std::uint32_t i) { return {ProcessKind::reader, i}; }
inline ProcessId writer_id(std::uint32_t i) { return {ProcessKind::writer, i}; }
inline ProcessId server_id(std::uint32_t i) { return {ProcessKind::server, i}; }

inline std::string to_string(const ProcessId& p) {
    const char* k = p.kind == ProcessKind::reader   ? "reader"
                    : p.kind == ProcessKind::writer ? "writer"
                                                    : "server";
    return std::string(k) + ":" + std::to_string(p.index);
}

// Version tag (z, w). An empty writer slot is the distinguished minimal
// writer id of the initial tag t0 = (0, _); it sorts below every real
// writer, so t0 is the minimum of the tag order.
struct Tag {
    std::uint64_t z{0};
    std::optional<ProcessId> w{};

    auto operator<=>(const Tag&) const = default;
};

inline Tag initial_tag() { return {}; }

inline bool tag_less(const Tag& a, const Tag& b) { return a < b; }

// Successor tag for writer w: bumps the counter of the highest tag seen.
inline Tag next_tag(const Tag& t, ProcessId w) {
    assert(w.kind == ProcessKind::writer);
    return {t.z + 1, w};
}

template <class Range>
Tag max_tag(const Range& tags) {
    auto first = std::begin(tags);
    auto last = std::end(tags);
    if (first == last) throw std::invalid_argument("max_tag: empty tag collection");
    Tag best = *first;
    for (auto it = std::next(first); it != last; ++it)
        if (best < *it) best = *it;
    return best;
}

inline std::string to_string(const Tag& t) {
    std::string s = std::to_string(t.z) + ":";
    if (t.w)
        s += "w" + std::to_string(t.w->index);
    else
        s += "_";
    return s;
}

// Register value: opaque bytes, length fixed for the whole run.
struct Value {
    std::vector<std::uint8_t> bytes;

    bool operator==(const Value&) const = default;
    std::size_t size() const { return bytes.size(); }
};

inline Value zero_value(std::size_t size) { return Value{std::vector<std::uint8_t>(size, 0)}; }

// One fragment of an [n, k] codeword, length |v|/k. index is 1-based and
// names the server the fragment belongs to.
struct CodedElement {
    std::uint32_t index{0};
    std::vector<std::uint8_t> bytes;

    bool operator==(const CodedElement&) const = default;
};

// (tag, fragment) pair held in a coded server's List.
struct ListEntry {
    Tag tag;
    CodedElement element;

    bool operator==(const ListEntry&) const = default;
};

enum class OpKind : std::uint8_t { write, read, repair };

inline const char* op_name(OpKind k) {
    switch (k) {
        case OpKind::write: return "write";
        case OpKind::read: return "read";
        case OpKind::repair: return "repair";
    }
    return "?";
}

enum class ServerStatus : std::uint8_t { active, crashed, repair };

inline const char* status_name(ServerStatus s) {
    switch (s) {
        case ServerStatus::active: return "active";
        case ServerStatus::crashed: return "crashed";
        case ServerStatus::repair: return "repair";
    }
    return "?";
}

}  // namespace radon
