#pragma once

// One NPC's personalized knowledge of door states.

#include <map>
#include <optional>

#include "cogbot/topology.hpp"

namespace cogbot {

struct BeliefEntry {
    DoorState state = DoorState::Closed;
    std::optional<Tick> last_observed;  // nullopt = never observed

    friend bool operator==(const BeliefEntry&, const BeliefEntry&) = default;
};

class BeliefState {
public:
    BeliefState() = default;

    const std::map<DoorId, BeliefEntry>& entries() const { return entries_; }
    bool knows(DoorId door) const { return entries_.contains(door); }

    /// Throws Errc::UnknownDoor.
    const BeliefEntry& entry(DoorId door) const;
    DoorState believed(DoorId door) const { return entry(door).state; }
    bool believed_open(DoorId door) const { return believed(door) == DoorState::Open; }

    /// Records an observation; returns true if the believed state changed.
    bool observe(DoorId door, DoorState state, Tick tick);

    friend bool operator==(const BeliefState&, const BeliefState&) = default;

private:
    friend BeliefState init_beliefs(const AreaDecomposition& decomp);

    std::map<DoorId, BeliefEntry> entries_;
};

/// Every waypoint door believed Closed, never observed.
BeliefState init_beliefs(const AreaDecomposition& decomp);

/// Functional form of BeliefState::observe.
BeliefState update_belief(BeliefState beliefs, DoorId door, DoorState state, Tick tick);

}  // namespace cogbot
