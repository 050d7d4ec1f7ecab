#pragma once

namespace swl {

struct World;

/// Per-tick behavior of one robot: drain the inbox, advance the protocol
/// state machines, set the motion target. Called in ascending index order.
void run_controller(World& w, int i);

}  // namespace swl
