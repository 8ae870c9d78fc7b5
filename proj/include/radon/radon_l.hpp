#pragma once

// Replication-based protocol: two-phase writes (get-tag, put-data),
// two-phase reads (get-data, put-data write-back), one-phase repair that is
// a read of (tag, value) pairs from a majority. Servers answer only while
// active; a put-data is acked whether or not it advanced the local pair.

#include <map>
#include <memory>
#include <set>

#include "automaton.hpp"
#include "quorum.hpp"

namespace radon {

struct RadonLParams {
    std::uint32_t n{1};
    std::size_t value_size{1};
    QuorumsL q{};
    Value v0;

    static RadonLParams make(std::uint32_t n, std::size_t value_size) {
        return {n, value_size, quorum_sizes_l(n), zero_value(value_size)};
    }
};

namespace detail {

template <class P>
std::vector<Message> broadcast(ProcessId from, std::uint32_t n, std::uint64_t op, std::uint32_t phase,
                               PayloadKind kind, const P* body) {
    std::vector<Message> msgs;
    msgs.reserve(n);
    for (std::uint32_t i = 1; i <= n; ++i)
        msgs.push_back(make_message(from, server_id(i), op, phase, kind, body ? MessageBody{*body} : MessageBody{}));
    return msgs;
}

inline std::vector<Message> broadcast(ProcessId from, std::uint32_t n, std::uint64_t op, std::uint32_t phase,
                                      PayloadKind kind) {
    return broadcast<std::monostate>(from, n, op, phase, kind, nullptr);
}

}  // namespace detail

class RadonLServer {
  public:
    RadonLServer(std::uint32_t index, const RadonLParams* p) : index_(index), p_(p), v_loc_(p->v0) {}

    void handle(const Message& m, IdGen& ids, Outbox& out) {
        (void)ids;
        switch (m.kind) {
            case PayloadKind::query_tag:
                if (status_ == ServerStatus::active)
                    reply(m, PayloadKind::tag_response, TagResponse{t_loc_}, out);
                return;
            case PayloadKind::query_tag_data:
            case PayloadKind::repair_tag_data:
                if (status_ == ServerStatus::active)
                    reply(m, PayloadKind::tag_data_response, TagDataResponse{t_loc_, v_loc_}, out);
                return;
            case PayloadKind::put_data: {
                if (status_ != ServerStatus::active) return;
                const auto& pd = std::get<PutData>(m.body);
                if (t_loc_ < pd.tag) {
                    t_loc_ = pd.tag;
                    v_loc_ = pd.value;
                    out.state_changed = true;
                }
                reply(m, PayloadKind::ack, Ack{pd.tag}, out);
                return;
            }
            case PayloadKind::tag_data_response: {
                // repair responses; anything from an abandoned attempt is stale
                if (status_ != ServerStatus::repair || m.op_id != repair_op_) return;
                const auto& td = std::get<TagDataResponse>(m.body);
                repair_resps_.emplace(m.sender, std::make_pair(td.tag, td.value));
                if (repair_resps_.size() >= p_->q.majority) finish_repair(out);
                return;
            }
            default:
                throw std::logic_error(std::string("radon-l server: unexpected payload ") + payload_name(m.kind));
        }
    }

    void on_crash() {
        status_ = ServerStatus::active;
        t_loc_ = Tag{};
        v_loc_ = p_->v0;
        repair_resps_.clear();
        repair_op_ = 0;
    }

    void on_repair_trigger(IdGen& ids, Outbox& out) {
        status_ = ServerStatus::repair;
        t_loc_ = Tag{};
        v_loc_ = p_->v0;
        repair_resps_.clear();
        repair_op_ = ids.next();
        out.group_sends.push_back(
            detail::broadcast(id(), p_->n, repair_op_, 0, PayloadKind::repair_tag_data));
        out.state_changed = true;
    }

    ProcessId id() const { return server_id(index_); }
    ServerStatus status() const { return status_; }
    std::uint64_t repair_op() const { return repair_op_; }
    const Tag& local_tag() const { return t_loc_; }
    const Value& local_value() const { return v_loc_; }
    std::size_t stored_bytes() const { return v_loc_.size(); }
    std::vector<Tag> held_tags() const { return {t_loc_}; }
    std::shared_ptr<const std::vector<ListEntry>> snapshot_entries() const { return nullptr; }

  protected:
    void reply(const Message& req, PayloadKind k, MessageBody body, Outbox& out) {
        out.sends.push_back(make_message(id(), req.sender, req.op_id, req.phase, k, std::move(body)));
    }

    void finish_repair(Outbox& out) {
        auto best = repair_resps_.begin();
        for (auto it = repair_resps_.begin(); it != repair_resps_.end(); ++it)
            if (best->second.first < it->second.first) best = it;
        t_loc_ = best->second.first;
        v_loc_ = best->second.second;
        repair_resps_.clear();
        status_ = ServerStatus::active;
        out.completed = true;
        out.state_changed = true;
    }

    std::uint32_t index_;
    const RadonLParams* p_;
    Tag t_loc_{};
    Value v_loc_;
    ServerStatus status_{ServerStatus::active};
    std::uint64_t repair_op_{0};
    std::map<ProcessId, std::pair<Tag, Value>> repair_resps_;
};

class RadonLClient {
  public:
    RadonLClient(ProcessId self, const RadonLParams* p) : self_(self), p_(p) {}

    void invoke_write(const Value& v, IdGen& ids, Outbox& out) {
        begin_op(OpKind::write, ids);
        v_op_ = v;
        out.group_sends.push_back(detail::broadcast(self_, p_->n, op_, 0, PayloadKind::query_tag));
    }

    void invoke_read(IdGen& ids, Outbox& out) {
        begin_op(OpKind::read, ids);
        out.group_sends.push_back(detail::broadcast(self_, p_->n, op_, 0, PayloadKind::query_tag_data));
    }

    void on_message(const Message& m, IdGen& ids, Outbox& out) {
        (void)ids;
        if (m.op_id != op_ || m.phase != phase_number() || phase_ == Phase::idle) return;
        switch (phase_) {
            case Phase::get:
                if (kind_ == OpKind::write && m.kind == PayloadKind::tag_response) {
                    tags_.emplace(m.sender, std::get<TagResponse>(m.body).tag);
                    if (tags_.size() >= p_->q.majority) start_put(out);
                } else if (kind_ == OpKind::read && m.kind == PayloadKind::tag_data_response) {
                    const auto& td = std::get<TagDataResponse>(m.body);
                    pairs_.emplace(m.sender, std::make_pair(td.tag, td.value));
                    if (pairs_.size() >= p_->q.majority) start_put(out);
                }
                return;
            case Phase::put:
                if (m.kind == PayloadKind::ack) {
                    acks_.insert(m.sender);
                    if (acks_.size() >= p_->q.put_quorum) complete(out);
                }
                return;
            default:
                return;
        }
    }

    bool busy() const { return phase_ != Phase::idle; }
    OpKind op_kind() const { return kind_; }
    std::uint64_t op_id() const { return op_; }
    const Tag& op_tag() const { return t_op_; }
    const std::optional<Value>& read_result() const { return result_; }
    std::shared_ptr<const std::vector<ProcessId>> ack_set() const { return nullptr; }
    std::shared_ptr<const std::vector<ProcessId>> confirm_set() const { return nullptr; }

    virtual ~RadonLClient() = default;

  protected:
    enum class Phase : std::uint8_t { idle, get, put };

    void begin_op(OpKind k, IdGen& ids) {
        kind_ = k;
        op_ = ids.next();
        phase_ = Phase::get;
        tags_.clear();
        pairs_.clear();
        acks_.clear();
        result_.reset();
        t_op_ = Tag{};
    }

    std::uint32_t phase_number() const { return phase_ == Phase::get ? 0u : 1u; }

    void start_put(Outbox& out) {
        if (kind_ == OpKind::write) {
            std::vector<Tag> seen;
            seen.reserve(tags_.size());
            for (const auto& [s, t] : tags_) seen.push_back(t);
            t_op_ = next_tag(max_tag(seen), self_);
        } else {
            auto best = pairs_.begin();
            for (auto it = pairs_.begin(); it != pairs_.end(); ++it)
                if (best->second.first < it->second.first) best = it;
            t_op_ = best->second.first;
            v_op_ = best->second.second;
        }
        phase_ = Phase::put;
        acks_.clear();
        PutData pd{t_op_, v_op_};
        out.group_sends.push_back(
            detail::broadcast(self_, p_->n, op_, 1, PayloadKind::put_data, &pd));
    }

    virtual void complete(Outbox& out) {
        phase_ = Phase::idle;
        if (kind_ == OpKind::read) result_ = v_op_;
        out.completed = true;
    }

    ProcessId self_;
    const RadonLParams* p_;
    Phase phase_{Phase::idle};
    OpKind kind_{OpKind::write};
    std::uint64_t op_{0};
    std::map<ProcessId, Tag> tags_;
    std::map<ProcessId, std::pair<Tag, Value>> pairs_;
    std::set<ProcessId> acks_;
    Tag t_op_{};
    Value v_op_;
    std::optional<Value> result_;
};

}  // namespace radon
