#include "cogbot/belief.hpp"

namespace cogbot {

const BeliefEntry& BeliefState::entry(DoorId door) const {
    auto it = entries_.find(door);
    if (it == entries_.end()) throw Error(Errc::UnknownDoor, "no belief for door '" + door.str() + "'");
    return it->second;
}

bool BeliefState::observe(DoorId door, DoorState state, Tick tick) {
    auto it = entries_.find(door);
    if (it == entries_.end()) throw Error(Errc::UnknownDoor, "no belief for door '" + door.str() + "'");
    const bool changed = it->second.state != state;
    it->second.state = state;
    it->second.last_observed = tick;
    return changed;
}

BeliefState init_beliefs(const AreaDecomposition& decomp) {
    BeliefState b;
    for (const auto& wp : decomp.waypoints()) b.entries_.emplace(wp.door, BeliefEntry{});
    return b;
}

BeliefState update_belief(BeliefState beliefs, DoorId door, DoorState state, Tick tick) {
    beliefs.observe(door, state, tick);
    return beliefs;
}

}  // namespace cogbot
