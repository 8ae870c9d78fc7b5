#pragma once

// Glue between the protocol state machines and the simulator: fresh token
// generation and the outbox a single handler invocation fills. One handler
// call is atomic -- everything it emits belongs to the same effective
// consumption.

#include <vector>

#include "message.hpp"

namespace radon {

struct IdGen {
    std::uint64_t next_value{1};
    std::uint64_t next() { return next_value++; }
};

struct Outbox {
    std::vector<Message> sends;                     // point-to-point replies
    std::vector<std::vector<Message>> group_sends;  // each inner vector is one group-send of n messages
    bool completed{false};      // client op finished / server repair finished
    bool state_changed{false};  // server durable state mutated (snapshot trigger)
    bool stuck{false};          // coded reader found nothing decodable

    void clear() { *this = Outbox{}; }
};

}  // namespace radon
