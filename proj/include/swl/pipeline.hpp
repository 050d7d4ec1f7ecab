#pragma once

#include <vector>

#include "swl/world.hpp"

namespace swl {

/// Run until every robot has reached at least the given phase.
RunResult run_to_phase(World& w, Phase target, long max_ticks);

/// Run the whole protocol; a negative budget means the default 200n + 20000.
RunResult run_full(World& w, long max_ticks = -1);

/// World primed at the start of the sorting phase: robots on a straight
/// horizontal chain in the given label order, links set, handshake states
/// armed. chain.front() must be the smallest label, chain.back() the largest.
World make_chain_world(const std::vector<int>& chain, const PhysicalParams& params,
                       const SimOptions& opts = {}, TraceSink* sink = nullptr,
                       double spacing = 0.4);

/// Labels in list order (following successor links from r_min).
std::vector<int> chain_labels(const World& w);

bool chain_sorted(const World& w);

}  // namespace swl
