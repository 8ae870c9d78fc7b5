#include <catch2/catch_amalgamated.hpp>

#include "radon/radon_l.hpp"

using namespace radon;

namespace {

Message tag_resp(std::uint32_t server, std::uint64_t op, Tag t) {
    return make_message(server_id(server), writer_id(1), op, 0, PayloadKind::tag_response, TagResponse{t});
}

Message data_resp(std::uint32_t server, ProcessId to, std::uint64_t op, Tag t, Value v) {
    return make_message(server_id(server), to, op, 0, PayloadKind::tag_data_response, TagDataResponse{t, v});
}

Message ack_msg(std::uint32_t server, ProcessId to, std::uint64_t op, std::uint32_t phase, Tag t) {
    return make_message(server_id(server), to, op, phase, PayloadKind::ack, Ack{t});
}

Value val(std::uint8_t b) { return Value{{b, b, b, b}}; }

}  // namespace

TEST_CASE("writer: majority of tag responses picks next tag") {
    auto p = RadonLParams::make(5, 4);
    RadonLClient w(writer_id(1), &p);
    IdGen ids;
    Outbox out;
    w.invoke_write(val(9), ids, out);
    REQUIRE(out.group_sends.size() == 1);
    CHECK(out.group_sends[0].size() == 5);
    CHECK(out.group_sends[0][0].kind == PayloadKind::query_tag);
    const std::uint64_t op = w.op_id();

    out.clear();
    w.on_message(tag_resp(1, op, Tag{}), ids, out);
    CHECK(out.group_sends.empty());  // 1 of 3
    w.on_message(tag_resp(2, op, Tag{1, writer_id(2)}), ids, out);
    CHECK(out.group_sends.empty());  // 2 of 3: still waiting for majority
    w.on_message(tag_resp(3, op, Tag{1, writer_id(2)}), ids, out);
    REQUIRE(out.group_sends.size() == 1);  // majority reached
    CHECK(w.op_tag() == Tag{2, writer_id(1)});
    const auto& put = out.group_sends[0];
    REQUIRE(put.size() == 5);
    CHECK(put[0].kind == PayloadKind::put_data);
    CHECK(std::get<PutData>(put[0].body).tag == Tag{2, writer_id(1)});

    out.clear();
    for (std::uint32_t s : {1u, 2u, 3u}) {
        w.on_message(ack_msg(s, writer_id(1), op, 1, w.op_tag()), ids, out);
        CHECK_FALSE(out.completed);
    }
    w.on_message(ack_msg(3, writer_id(1), op, 1, w.op_tag()), ids, out);
    CHECK_FALSE(out.completed);  // duplicate server counted once
    w.on_message(ack_msg(4, writer_id(1), op, 1, w.op_tag()), ids, out);
    CHECK(out.completed);  // 4th distinct ack = ceil((3*5+1)/4)
    CHECK_FALSE(w.busy());
}

TEST_CASE("writer ignores stale op and phase responses") {
    auto p = RadonLParams::make(5, 4);
    RadonLClient w(writer_id(1), &p);
    IdGen ids;
    Outbox out;
    w.invoke_write(val(1), ids, out);
    const std::uint64_t op = w.op_id();
    out.clear();
    w.on_message(tag_resp(1, op + 77, Tag{}), ids, out);             // foreign op token
    w.on_message(ack_msg(1, writer_id(1), op, 1, Tag{}), ids, out);  // put-phase ack during get
    for (std::uint32_t s : {1u, 2u}) w.on_message(tag_resp(s, op, Tag{}), ids, out);
    CHECK(out.group_sends.empty());  // the stale traffic contributed nothing
    w.on_message(tag_resp(3, op, Tag{}), ids, out);
    CHECK(out.group_sends.size() == 1);
}

TEST_CASE("reader: write-back of max pair, returns its value") {
    auto p = RadonLParams::make(5, 4);
    RadonLClient r(reader_id(1), &p);
    IdGen ids;
    Outbox out;
    r.invoke_read(ids, out);
    const std::uint64_t op = r.op_id();
    CHECK(out.group_sends[0][0].kind == PayloadKind::query_tag_data);

    out.clear();
    r.on_message(data_resp(1, reader_id(1), op, Tag{1, writer_id(1)}, val(0xA)), ids, out);
    r.on_message(data_resp(2, reader_id(1), op, Tag{2, writer_id(2)}, val(0xB)), ids, out);
    r.on_message(data_resp(3, reader_id(1), op, Tag{1, writer_id(1)}, val(0xA)), ids, out);
    REQUIRE(out.group_sends.size() == 1);
    CHECK(r.op_tag() == Tag{2, writer_id(2)});
    CHECK(std::get<PutData>(out.group_sends[0][0].body).value == val(0xB));

    out.clear();
    for (std::uint32_t s = 1; s <= 4; ++s) r.on_message(ack_msg(s, reader_id(1), op, 1, r.op_tag()), ids, out);
    CHECK(out.completed);
    REQUIRE(r.read_result());
    CHECK(*r.read_result() == val(0xB));
}

TEST_CASE("reader on a fresh system returns the initial value") {
    auto p = RadonLParams::make(5, 4);
    RadonLClient r(reader_id(1), &p);
    IdGen ids;
    Outbox out;
    r.invoke_read(ids, out);
    const std::uint64_t op = r.op_id();
    out.clear();
    for (std::uint32_t s = 1; s <= 3; ++s)
        r.on_message(data_resp(s, reader_id(1), op, Tag{}, p.v0), ids, out);
    for (std::uint32_t s = 1; s <= 4; ++s) r.on_message(ack_msg(s, reader_id(1), op, 1, Tag{}), ids, out);
    REQUIRE(r.read_result());
    CHECK(*r.read_result() == p.v0);
    CHECK(r.op_tag() == Tag{});
}

TEST_CASE("duplicate get-phase responses count once") {
    auto p = RadonLParams::make(5, 4);
    RadonLClient r(reader_id(1), &p);
    IdGen ids;
    Outbox out;
    r.invoke_read(ids, out);
    const std::uint64_t op = r.op_id();
    out.clear();
    for (int i = 0; i < 4; ++i) r.on_message(data_resp(1, reader_id(1), op, Tag{}, p.v0), ids, out);
    CHECK(out.group_sends.empty());  // one distinct server is not a majority
}

TEST_CASE("server adopts higher tags and acks unconditionally while active") {
    auto p = RadonLParams::make(5, 4);
    RadonLServer s(1, &p);
    IdGen ids;
    Outbox out;

    auto put = make_message(writer_id(2), server_id(1), 10, 1, PayloadKind::put_data,
                            PutData{Tag{2, writer_id(2)}, val(0xB)});
    s.handle(put, ids, out);
    CHECK(s.local_tag() == Tag{2, writer_id(2)});
    CHECK(s.local_value() == val(0xB));
    CHECK(out.state_changed);
    REQUIRE(out.sends.size() == 1);
    CHECK(out.sends[0].kind == PayloadKind::ack);

    out.clear();
    auto stale = make_message(writer_id(1), server_id(1), 11, 1, PayloadKind::put_data,
                              PutData{Tag{1, writer_id(1)}, val(0xA)});
    s.handle(stale, ids, out);
    CHECK(s.local_tag() == Tag{2, writer_id(2)});  // unchanged
    CHECK_FALSE(out.state_changed);
    REQUIRE(out.sends.size() == 1);  // ack still sent
    CHECK(out.sends[0].kind == PayloadKind::ack);

    out.clear();
    s.handle(make_message(writer_id(1), server_id(1), 12, 0, PayloadKind::query_tag), ids, out);
    REQUIRE(out.sends.size() == 1);
    CHECK(std::get<TagResponse>(out.sends[0].body).tag == Tag{2, writer_id(2)});
}

TEST_CASE("server in repair status consumes silently") {
    auto p = RadonLParams::make(5, 4);
    RadonLServer s(1, &p);
    IdGen ids;
    Outbox out;
    s.on_crash();
    s.on_repair_trigger(ids, out);
    CHECK(s.status() == ServerStatus::repair);
    REQUIRE(out.group_sends.size() == 1);
    CHECK(out.group_sends[0][0].kind == PayloadKind::repair_tag_data);

    out.clear();
    s.handle(make_message(writer_id(1), server_id(1), 5, 0, PayloadKind::query_tag), ids, out);
    CHECK(out.sends.empty());
    s.handle(make_message(writer_id(1), server_id(1), 6, 1, PayloadKind::put_data,
                          PutData{Tag{3, writer_id(1)}, val(1)}),
             ids, out);
    CHECK(out.sends.empty());
    CHECK(s.local_tag() == Tag{});  // no adoption while repairing
}

TEST_CASE("repair adopts the max-tag majority response and reactivates") {
    auto p = RadonLParams::make(5, 4);
    RadonLServer s(1, &p);
    IdGen ids;
    Outbox out;
    s.on_crash();
    s.on_repair_trigger(ids, out);
    const std::uint64_t rop = out.group_sends[0][0].op_id;

    out.clear();
    s.handle(data_resp(2, server_id(1), rop, Tag{3, writer_id(1)}, val(0xC)), ids, out);
    s.handle(data_resp(3, server_id(1), rop, Tag{2, writer_id(2)}, val(0xB)), ids, out);
    CHECK_FALSE(out.completed);
    s.handle(data_resp(4, server_id(1), rop, Tag{3, writer_id(1)}, val(0xC)), ids, out);
    CHECK(out.completed);
    CHECK(s.status() == ServerStatus::active);
    CHECK(s.local_tag() == Tag{3, writer_id(1)});
    CHECK(s.local_value() == val(0xC));
}

TEST_CASE("repair on a fresh system restores the initial pair") {
    auto p = RadonLParams::make(5, 4);
    RadonLServer s(2, &p);
    IdGen ids;
    Outbox out;
    s.on_crash();
    s.on_repair_trigger(ids, out);
    const std::uint64_t rop = out.group_sends[0][0].op_id;
    out.clear();
    for (std::uint32_t peer : {1u, 3u, 4u}) s.handle(data_resp(peer, server_id(2), rop, Tag{}, p.v0), ids, out);
    CHECK(out.completed);
    CHECK(s.local_tag() == Tag{});
    CHECK(s.local_value() == p.v0);
}

TEST_CASE("crash during repair restarts cleanly on the next trigger") {
    auto p = RadonLParams::make(5, 4);
    RadonLServer s(1, &p);
    IdGen ids;
    Outbox out;
    s.on_crash();
    s.on_repair_trigger(ids, out);
    const std::uint64_t old_op = out.group_sends[0][0].op_id;
    out.clear();
    s.handle(data_resp(2, server_id(1), old_op, Tag{3, writer_id(1)}, val(0xC)), ids, out);
    s.on_crash();  // crash mid-collection
    out.clear();
    s.on_repair_trigger(ids, out);
    const std::uint64_t new_op = out.group_sends[0][0].op_id;
    CHECK(new_op != old_op);
    out.clear();
    // stale responses from the abandoned attempt are ignored
    s.handle(data_resp(3, server_id(1), old_op, Tag{3, writer_id(1)}, val(0xC)), ids, out);
    s.handle(data_resp(4, server_id(1), old_op, Tag{3, writer_id(1)}, val(0xC)), ids, out);
    CHECK_FALSE(out.completed);
    for (std::uint32_t peer : {2u, 3u, 4u}) s.handle(data_resp(peer, server_id(1), new_op, Tag{}, p.v0), ids, out);
    CHECK(out.completed);
    CHECK(s.local_tag() == Tag{});
}

TEST_CASE("foreign payloads are a configuration error") {
    auto p = RadonLParams::make(5, 4);
    RadonLServer s(1, &p);
    IdGen ids;
    Outbox out;
    CHECK_THROWS_AS(s.handle(make_message(reader_id(1), server_id(1), 1, 0, PayloadKind::query_list), ids, out),
                    std::logic_error);
}
