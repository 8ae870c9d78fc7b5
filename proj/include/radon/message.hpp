#pragma once

// Message envelopes exchanged between clients and servers. op_id binds a
// response to the operation that requested it and phase to the exact phase,
// so quorum counting never credits stale traffic.

#include <variant>

#include "core.hpp"

namespace radon {

enum class PayloadKind : std::uint8_t {
    query_tag,
    query_tag_data,
    query_list,
    put_data,
    code_elements,
    confirm_data,
    repair_tag_data,
    repair_list,
    tag_response,
    tag_data_response,
    list_response,
    ack,
};

inline const char* payload_name(PayloadKind k) {
    switch (k) {
        case PayloadKind::query_tag: return "query-tag";
        case PayloadKind::query_tag_data: return "query-tag-data";
        case PayloadKind::query_list: return "query-list";
        case PayloadKind::put_data: return "put-data";
        case PayloadKind::code_elements: return "code-elements";
        case PayloadKind::confirm_data: return "confirm-data";
        case PayloadKind::repair_tag_data: return "repair-tag-data";
        case PayloadKind::repair_list: return "repair-list";
        case PayloadKind::tag_response: return "tag";
        case PayloadKind::tag_data_response: return "tag-data";
        case PayloadKind::list_response: return "list";
        case PayloadKind::ack: return "ack";
    }
    return "?";
}

struct PutData {
    Tag tag;
    Value value;
};

struct CodeElements {
    Tag tag;
    CodedElement element;
};

struct ConfirmData {
    Tag tag;
};

struct TagResponse {
    Tag tag;
};

struct TagDataResponse {
    Tag tag;
    Value value;
};

struct ListResponse {
    std::vector<ListEntry> entries;
};

struct Ack {
    Tag tag;
};

using MessageBody = std::variant<std::monostate, PutData, CodeElements, ConfirmData,
                                 TagResponse, TagDataResponse, ListResponse, Ack>;

struct Message {
    std::uint64_t id{0};  // assigned by the simulator at enqueue time
    ProcessId sender{};
    ProcessId recipient{};
    std::uint64_t op_id{0};
    std::uint32_t phase{0};
    PayloadKind kind{PayloadKind::query_tag};
    MessageBody body{};
};

// Cost weight of a message: value and fragment bytes only, metadata is free.
inline std::size_t value_bytes(const Message& m) {
    switch (m.kind) {
        case PayloadKind::put_data: return std::get<PutData>(m.body).value.size();
        case PayloadKind::code_elements: return std::get<CodeElements>(m.body).element.bytes.size();
        case PayloadKind::tag_data_response: return std::get<TagDataResponse>(m.body).value.size();
        case PayloadKind::list_response: {
            std::size_t total = 0;
            for (const auto& e : std::get<ListResponse>(m.body).entries) total += e.element.bytes.size();
            return total;
        }
        default: return 0;
    }
}

// Best-effort tag carried by the payload, for trace records.
inline std::optional<Tag> payload_tag(const Message& m) {
    switch (m.kind) {
        case PayloadKind::put_data: return std::get<PutData>(m.body).tag;
        case PayloadKind::code_elements: return std::get<CodeElements>(m.body).tag;
        case PayloadKind::confirm_data: return std::get<ConfirmData>(m.body).tag;
        case PayloadKind::tag_response: return std::get<TagResponse>(m.body).tag;
        case PayloadKind::tag_data_response: return std::get<TagDataResponse>(m.body).tag;
        case PayloadKind::ack: return std::get<Ack>(m.body).tag;
        default: return std::nullopt;
    }
}

inline Message make_message(ProcessId from, ProcessId to, std::uint64_t op, std::uint32_t phase,
                            PayloadKind kind, MessageBody body = {}) {
    Message m;
    m.sender = from;
    m.recipient = to;
    m.op_id = op;
    m.phase = phase;
    m.kind = kind;
    m.body = std::move(body);
    return m;
}

}  // namespace radon
