#pragma once

// Erasure-coded protocol: writers disperse one fragment per server, servers
// keep a List of the delta+1 highest-tagged fragments, readers gather
// ceil((n+k)/2) Lists and decode the highest tag with k distinct fragment
// indices, repair rebuilds a List by decoding every reachable tag and
// re-encoding for its own index.

#include <map>
#include <memory>
#include <set>

#include "automaton.hpp"
#include "codec.hpp"
#include "quorum.hpp"
#include "radon_l.hpp"

namespace radon {

struct RadonCParams {
    std::uint32_t n{1};
    std::uint32_t k{1};
    std::uint32_t delta{0};
    std::size_t value_size{1};
    QuorumsC q{};
    Value v0;
    std::shared_ptr<const MdsCodec> codec;

    static RadonCParams make(std::uint32_t n, std::uint32_t k, std::uint32_t delta, std::size_t value_size) {
        RadonCParams p;
        p.n = n;
        p.k = k;
        p.delta = delta;
        p.value_size = value_size;
        p.q = quorum_sizes_c(n, k);
        p.v0 = zero_value(value_size);
        p.codec = std::make_shared<MdsCodec>(CodecParams{n, k});
        return p;
    }
};

// Union with the list, then keep only the delta+1 highest tags. A
// re-received tag never duplicates. Returns whether the list changed.
inline bool apply_code_element(std::map<Tag, CodedElement>& list, const Tag& tag, const CodedElement& elem,
                               std::uint32_t delta) {
    if (!list.emplace(tag, elem).second) return false;  // tag already present
    if (list.size() <= static_cast<std::size_t>(delta) + 1) return true;
    const bool new_entry_pruned = (list.begin()->first == tag);
    list.erase(list.begin());
    return !new_entry_pruned;
}

// Highest tag decodable from the gathered lists: a tag qualifies when it
// appears with at least k distinct fragment indices across the responses.
inline std::optional<std::pair<Tag, Value>> select_decodable(
    const std::map<ProcessId, std::vector<ListEntry>>& lists, const MdsCodec& codec) {
    std::map<Tag, std::map<std::uint32_t, const CodedElement*>> by_tag;
    for (const auto& [sender, entries] : lists)
        for (const auto& e : entries) by_tag[e.tag].emplace(e.element.index, &e.element);
    const std::uint32_t k = codec.params().k;
    for (auto it = by_tag.rbegin(); it != by_tag.rend(); ++it) {
        if (it->second.size() < k) continue;
        std::vector<CodedElement> frags;
        for (const auto& [idx, elem] : it->second) {
            frags.push_back(*elem);
            if (frags.size() == k) break;
        }
        return std::make_pair(it->first, codec.decode(frags));
    }
    return std::nullopt;
}

class RadonCServer {
  public:
    RadonCServer(std::uint32_t index, const RadonCParams* p) : index_(index), p_(p) {
        list_.emplace(Tag{}, p_->codec->project(p_->v0, index_));
    }

    void handle(const Message& m, IdGen& ids, Outbox& out) {
        (void)ids;
        switch (m.kind) {
            case PayloadKind::query_tag:
                if (status_ == ServerStatus::active)
                    reply(m, PayloadKind::tag_response, TagResponse{max_list_tag()}, out);
                return;
            case PayloadKind::query_list:
            case PayloadKind::repair_list:
                if (status_ == ServerStatus::active)
                    reply(m, PayloadKind::list_response, ListResponse{entries()}, out);
                return;
            case PayloadKind::code_elements: {
                if (status_ != ServerStatus::active) return;
                const auto& ce = std::get<CodeElements>(m.body);
                out.state_changed = apply_code_element(list_, ce.tag, ce.element, p_->delta);
                reply(m, PayloadKind::ack, Ack{ce.tag}, out);
                return;
            }
            case PayloadKind::list_response: {
                if (status_ != ServerStatus::repair || m.op_id != repair_op_) return;
                repair_resps_.emplace(m.sender, std::get<ListResponse>(m.body).entries);
                if (repair_resps_.size() >= p_->q.list_quorum) finish_repair(out);
                return;
            }
            default:
                throw std::logic_error(std::string("radon-c server: unexpected payload ") + payload_name(m.kind));
        }
    }

    void on_crash() {
        status_ = ServerStatus::active;
        list_.clear();
        repair_resps_.clear();
        repair_op_ = 0;
    }

    void on_repair_trigger(IdGen& ids, Outbox& out) {
        status_ = ServerStatus::repair;
        list_.clear();
        repair_resps_.clear();
        repair_op_ = ids.next();
        out.group_sends.push_back(detail::broadcast(id(), p_->n, repair_op_, 0, PayloadKind::repair_list));
        out.state_changed = true;
    }

    ProcessId id() const { return server_id(index_); }
    ServerStatus status() const { return status_; }
    std::uint64_t repair_op() const { return repair_op_; }
    const std::map<Tag, CodedElement>& list() const { return list_; }

    std::size_t stored_bytes() const {
        std::size_t total = 0;
        for (const auto& [t, e] : list_) total += e.bytes.size();
        return total;
    }

    std::vector<Tag> held_tags() const {
        std::vector<Tag> tags;
        for (const auto& [t, e] : list_) tags.push_back(t);
        return tags;
    }

    std::shared_ptr<const std::vector<ListEntry>> snapshot_entries() const {
        return std::make_shared<std::vector<ListEntry>>(entries());
    }

  private:
    std::vector<ListEntry> entries() const {
        std::vector<ListEntry> es;
        es.reserve(list_.size());
        for (const auto& [t, e] : list_) es.push_back({t, e});
        return es;
    }

    Tag max_list_tag() const { return list_.empty() ? Tag{} : list_.rbegin()->first; }

    void reply(const Message& req, PayloadKind k, MessageBody body, Outbox& out) {
        out.sends.push_back(make_message(id(), req.sender, req.op_id, req.phase, k, std::move(body)));
    }

    // Decode every tag with k distinct indices among the responses, keep the
    // delta+1 highest, store them re-encoded for this index. An empty
    // rebuilt List is legal when nothing was decodable.
    void finish_repair(Outbox& out) {
        std::map<Tag, std::map<std::uint32_t, CodedElement>> by_tag;
        for (const auto& [sender, es] : repair_resps_)
            for (const auto& e : es) by_tag[e.tag].emplace(e.element.index, e.element);
        list_.clear();
        for (auto it = by_tag.rbegin(); it != by_tag.rend(); ++it) {
            if (list_.size() > p_->delta) break;
            if (it->second.size() < p_->k) continue;
            std::vector<CodedElement> frags;
            for (const auto& [idx, elem] : it->second) {
                frags.push_back(elem);
                if (frags.size() == p_->k) break;
            }
            Value v = p_->codec->decode(frags);
            list_.emplace(it->first, p_->codec->project(v, index_));
        }
        repair_resps_.clear();
        status_ = ServerStatus::active;
        out.completed = true;
        out.state_changed = true;
    }

    std::uint32_t index_;
    const RadonCParams* p_;
    std::map<Tag, CodedElement> list_;
    ServerStatus status_{ServerStatus::active};
    std::uint64_t repair_op_{0};
    std::map<ProcessId, std::vector<ListEntry>> repair_resps_;
};

class RadonCClient {
  public:
    RadonCClient(ProcessId self, const RadonCParams* p) : self_(self), p_(p) {}

    void invoke_write(const Value& v, IdGen& ids, Outbox& out) {
        begin_op(OpKind::write, ids);
        v_op_ = v;
        out.group_sends.push_back(detail::broadcast(self_, p_->n, op_, 0, PayloadKind::query_tag));
    }

    void invoke_read(IdGen& ids, Outbox& out) {
        begin_op(OpKind::read, ids);
        out.group_sends.push_back(detail::broadcast(self_, p_->n, op_, 0, PayloadKind::query_list));
    }

    void on_message(const Message& m, IdGen& ids, Outbox& out) {
        (void)ids;
        if (m.op_id != op_ || m.phase != (phase_ == Phase::get ? 0u : 1u)) return;
        switch (phase_) {
            case Phase::get:
                if (kind_ == OpKind::write && m.kind == PayloadKind::tag_response) {
                    tags_.emplace(m.sender, std::get<TagResponse>(m.body).tag);
                    if (tags_.size() >= p_->q.majority) start_put(out);
                } else if (kind_ == OpKind::read && m.kind == PayloadKind::list_response) {
                    lists_.emplace(m.sender, std::get<ListResponse>(m.body).entries);
                    if (lists_.size() >= p_->q.list_quorum) decide_read(out);
                }
                return;
            case Phase::put:
                if (m.kind == PayloadKind::ack) {
                    acks_.insert(m.sender);
                    if (acks_.size() >= p_->q.put_quorum) {
                        phase_ = Phase::idle;
                        if (kind_ == OpKind::read) result_ = v_op_;
                        out.completed = true;
                    }
                }
                return;
            default:
                return;
        }
    }

    bool busy() const { return phase_ != Phase::idle && phase_ != Phase::stuck; }
    bool is_stuck() const { return phase_ == Phase::stuck; }
    OpKind op_kind() const { return kind_; }
    std::uint64_t op_id() const { return op_; }
    const Tag& op_tag() const { return t_op_; }
    const std::optional<Value>& read_result() const { return result_; }
    std::shared_ptr<const std::vector<ProcessId>> ack_set() const { return nullptr; }
    std::shared_ptr<const std::vector<ProcessId>> confirm_set() const { return nullptr; }

  private:
    enum class Phase : std::uint8_t { idle, get, put, stuck };

    void begin_op(OpKind k, IdGen& ids) {
        kind_ = k;
        op_ = ids.next();
        phase_ = Phase::get;
        tags_.clear();
        lists_.clear();
        acks_.clear();
        result_.reset();
        t_op_ = Tag{};
    }

    void start_put(Outbox& out) {
        std::vector<Tag> seen;
        seen.reserve(tags_.size());
        for (const auto& [s, t] : tags_) seen.push_back(t);
        t_op_ = next_tag(max_tag(seen), self_);
        disperse(out);
    }

    // The read decision is frozen at the list quorum: either some tag
    // decodes, or the read is stuck and consumes nothing further.
    void decide_read(Outbox& out) {
        auto found = select_decodable(lists_, *p_->codec);
        if (!found) {
            phase_ = Phase::stuck;
            out.stuck = true;
            return;
        }
        t_op_ = found->first;
        v_op_ = std::move(found->second);
        disperse(out);
    }

    void disperse(Outbox& out) {
        phase_ = Phase::put;
        acks_.clear();
        std::vector<CodedElement> frags = p_->codec->encode(v_op_);
        std::vector<Message> msgs;
        msgs.reserve(p_->n);
        for (std::uint32_t i = 1; i <= p_->n; ++i)
            msgs.push_back(make_message(self_, server_id(i), op_, 1, PayloadKind::code_elements,
                                        CodeElements{t_op_, frags[i - 1]}));
        out.group_sends.push_back(std::move(msgs));
    }

    ProcessId self_;
    const RadonCParams* p_;
    Phase phase_{Phase::idle};
    OpKind kind_{OpKind::write};
    std::uint64_t op_{0};
    std::map<ProcessId, Tag> tags_;
    std::map<ProcessId, std::vector<ListEntry>> lists_;
    std::set<ProcessId> acks_;
    Tag t_op_{};
    Value v_op_;
    std::optional<Value> result_;
};

}  // namespace radon
