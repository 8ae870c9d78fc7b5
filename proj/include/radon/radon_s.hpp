#pragma once

// Always-safe replication protocol: the first two phases of every client
// operation are those of the plain replication protocol, followed by a
// confirm-data phase. Servers remember unconfirmed (tag, client) pairs in a
// Seen set that crashes wipe; a confirm is acked only while its pair is
// still present, so an ack proves the server held the data continuously.

#include "radon_l.hpp"

namespace radon {

using RadonSParams = RadonLParams;

class RadonSServer : public RadonLServer {
  public:
    RadonSServer(std::uint32_t index, const RadonSParams* p) : RadonLServer(index, p) {}

    void handle(const Message& m, IdGen& ids, Outbox& out) {
        switch (m.kind) {
            case PayloadKind::put_data: {
                if (status_ != ServerStatus::active) return;
                const auto& pd = std::get<PutData>(m.body);
                if (t_loc_ < pd.tag) {
                    t_loc_ = pd.tag;
                    v_loc_ = pd.value;
                    out.state_changed = true;
                }
                seen_.insert({pd.tag, m.sender});
                reply(m, PayloadKind::ack, Ack{pd.tag}, out);
                return;
            }
            case PayloadKind::confirm_data: {
                if (status_ != ServerStatus::active) return;
                const auto& cd = std::get<ConfirmData>(m.body);
                if (seen_.erase({cd.tag, m.sender}) > 0) reply(m, PayloadKind::ack, Ack{cd.tag}, out);
                return;
            }
            default:
                RadonLServer::handle(m, ids, out);
                return;
        }
    }

    void on_crash() {
        RadonLServer::on_crash();
        seen_.clear();
    }

    void on_repair_trigger(IdGen& ids, Outbox& out) {
        seen_.clear();
        RadonLServer::on_repair_trigger(ids, out);
    }

    const std::set<std::pair<Tag, ProcessId>>& seen() const { return seen_; }

  private:
    std::set<std::pair<Tag, ProcessId>> seen_;
};

class RadonSClient : public RadonLClient {
  public:
    RadonSClient(ProcessId self, const RadonSParams* p) : RadonLClient(self, p) {}

    void invoke_write(const Value& v, IdGen& ids, Outbox& out) {
        reset_confirm();
        RadonLClient::invoke_write(v, ids, out);
    }

    void invoke_read(IdGen& ids, Outbox& out) {
        reset_confirm();
        RadonLClient::invoke_read(ids, out);
    }

    void on_message(const Message& m, IdGen& ids, Outbox& out) {
        if (confirming_) {
            if (m.op_id != op_ || m.phase != 2 || m.kind != PayloadKind::ack) return;
            if (!s_alpha_.count(m.sender)) return;  // termination counts only the recorded ack set
            confirm_acks_.insert(m.sender);
            if (confirm_acks_.size() >= p_->q.majority) finish(out);
            return;
        }
        RadonLClient::on_message(m, ids, out);
    }

    bool busy() const { return confirming_ || RadonLClient::busy(); }
    const std::set<ProcessId>& s_alpha() const { return s_alpha_; }
    const std::set<ProcessId>& confirm_ackers() const { return confirm_acks_; }

    std::shared_ptr<const std::vector<ProcessId>> ack_set() const {
        return std::make_shared<std::vector<ProcessId>>(s_alpha_.begin(), s_alpha_.end());
    }
    std::shared_ptr<const std::vector<ProcessId>> confirm_set() const {
        return std::make_shared<std::vector<ProcessId>>(confirm_acks_.begin(), confirm_acks_.end());
    }

  protected:
    // Put-quorum reached: record which servers acked the data, then require
    // confirm acks from a majority drawn from that same set.
    void complete(Outbox& out) override {
        s_alpha_ = acks_;
        confirm_acks_.clear();
        confirming_ = true;
        phase_ = Phase::idle;
        ConfirmData cd{t_op_};
        out.group_sends.push_back(detail::broadcast(self_, p_->n, op_, 2, PayloadKind::confirm_data, &cd));
    }

  private:
    void reset_confirm() {
        confirming_ = false;
        s_alpha_.clear();
        confirm_acks_.clear();
    }

    void finish(Outbox& out) {
        confirming_ = false;
        if (kind_ == OpKind::read) result_ = v_op_;
        out.completed = true;
    }

    bool confirming_{false};
    std::set<ProcessId> s_alpha_;
    std::set<ProcessId> confirm_acks_;
};

}  // namespace radon
