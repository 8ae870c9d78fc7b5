#pragma once

// Run traces: one record per simulator event. The in-memory records keep
// full payloads for the analysis layer; the file form is one line per
// record with a fixed field set (time, event, actor, op_id, payload_kind,
// tag, size_units).

#include <cstdio>
#include <memory>
#include <ostream>
#include <sstream>

#include "message.hpp"

namespace radon {

enum class EventKind : std::uint8_t {
    invoke,
    respond,
    send,
    deliver,
    drop,
    crash,
    repair_start,
    repair_end,
    snapshot,
};

inline const char* event_name(EventKind e) {
    switch (e) {
        case EventKind::invoke: return "invoke";
        case EventKind::respond: return "respond";
        case EventKind::send: return "send";
        case EventKind::deliver: return "deliver";
        case EventKind::drop: return "drop";
        case EventKind::crash: return "crash";
        case EventKind::repair_start: return "repair-start";
        case EventKind::repair_end: return "repair-end";
        case EventKind::snapshot: return "state-snapshot";
    }
    return "?";
}

struct SnapshotInfo {
    ServerStatus status{ServerStatus::active};
    std::size_t stored_bytes{0};
    std::vector<Tag> tags;  // local tag (replication) or list tags (coded)
    std::shared_ptr<const std::vector<ListEntry>> entries;  // coded list contents
};

struct WindowNote {
    std::uint64_t window_id{0};
    bool open{true};
    bool n2{false};
    std::vector<std::uint32_t> protected_servers;
};

struct TraceRecord {
    std::uint64_t time{0};
    EventKind event{EventKind::snapshot};
    std::optional<ProcessId> actor;
    std::uint64_t op_id{0};
    std::string payload_kind;
    std::optional<Tag> tag;
    std::size_t size_bytes{0};

    std::optional<OpKind> op;                // invoke / respond / repair records
    std::shared_ptr<const Message> msg;      // send / deliver / drop
    std::shared_ptr<const Value> value;      // write invoke, read respond
    std::optional<SnapshotInfo> snap;
    std::optional<WindowNote> window;
    std::shared_ptr<const std::vector<ProcessId>> ack_set;      // radon-s: recorded put-data ackers
    std::shared_ptr<const std::vector<ProcessId>> confirm_set;  // radon-s: counted confirm ackers
};

class Trace {
  public:
    TraceRecord& append(TraceRecord r) {
        r.time = next_time_++;
        recs_.push_back(std::move(r));
        return recs_.back();
    }

    const std::vector<TraceRecord>& records() const { return recs_; }
    bool empty() const { return recs_.empty(); }

    // One line per record. size_units normalizes bytes by the run's value
    // size so that one stored value weighs exactly one unit.
    void serialize(std::ostream& os, std::size_t value_size) const {
        for (const auto& r : recs_) {
            os << "time=" << r.time;
            os << " event=" << event_name(r.event);
            os << " actor=" << (r.actor ? to_string(*r.actor) : std::string("-"));
            os << " op_id=" << r.op_id;
            os << " payload_kind=" << (r.payload_kind.empty() ? "-" : r.payload_kind);
            os << " tag=" << (r.tag ? to_string(*r.tag) : std::string("-"));
            os << " size_units=" << format_units(r.size_bytes, value_size);
            os << '\n';
        }
    }

    std::string to_text(std::size_t value_size) const {
        std::ostringstream os;
        serialize(os, value_size);
        return os.str();
    }

  private:
    static std::string format_units(std::size_t bytes, std::size_t value_size) {
        if (value_size == 0) return "0";
        if (bytes % value_size == 0) return std::to_string(bytes / value_size);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", static_cast<double>(bytes) / static_cast<double>(value_size));
        return buf;
    }

    std::vector<TraceRecord> recs_;
    std::uint64_t next_time_{1};
};

}  // namespace radon
