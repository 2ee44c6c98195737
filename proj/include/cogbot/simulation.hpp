#pragma once

// The tick loop hosting every NPC's perception -> control -> action chain over the
// single authoritative WorldState.

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cogbot/actions.hpp"
#include "cogbot/controller.hpp"
#include "cogbot/deliberator.hpp"
#include "cogbot/perception.hpp"
#include "cogbot/topology.hpp"
#include "cogbot/trace.hpp"

namespace cogbot {

struct OpenDoor {
    DoorId door;
    friend bool operator==(const OpenDoor&, const OpenDoor&) = default;
};
struct CloseDoor {
    DoorId door;
    friend bool operator==(const CloseDoor&, const CloseDoor&) = default;
};
struct MoveToCommand {
    NpcId npc;
    TilePos target;
    friend bool operator==(const MoveToCommand&, const MoveToCommand&) = default;
};
struct CancelGoal {
    NpcId npc;
    friend bool operator==(const CancelGoal&, const CancelGoal&) = default;
};
struct Stop {
    friend bool operator==(const Stop&, const Stop&) = default;
};

using Command = std::variant<OpenDoor, CloseDoor, MoveToCommand, CancelGoal, Stop>;

Json command_json(const Command& c);
/// Inverse of command_json; used to replay a trace's Command events.
Command command_from_json(const Json& j);

enum class DeliberatorKind { Belief, Omniscient, Oblivious };

std::string_view to_string(DeliberatorKind k);
DeliberatorKind deliberator_kind_from_string(std::string_view s);

struct AgentConfig {
    DeliberatorKind deliberator = DeliberatorKind::Belief;
    std::vector<FovConfig> senses{FovConfig{}};
};

class Simulation {
public:
    Simulation(WorldState world, AgentConfig config);
    Simulation(const Simulation&) = delete;
    Simulation& operator=(const Simulation&) = delete;

    /// One tick: (1) commands, (2) perception, (3) control, (4) movement, (5) TickBoundary.
    /// Command errors become Error events; the tick always completes.
    std::vector<TraceEvent> advance_tick(std::span<const Command> commands);

    const WorldState& world() const { return world_; }
    const Topology& topology() const { return topology_; }
    const AgentConfig& config() const { return config_; }
    Tick tick() const { return world_.tick(); }

    bool stopped() const { return stopped_; }

    /// Every NPC idle with its last query answered by NoPlan.
    bool quiescent() const;

    const Deliberator& deliberator(NpcId id) const;
    const Perception& perception(NpcId id) const;

    /// Checks a command against the map without applying it. Returns an error message or "".
    std::string validate(const Command& c) const;

private:
    struct Agent {
        NpcId id;
        Perception perception;
        std::unique_ptr<Deliberator> deliberator;
        std::unique_ptr<Controller> controller;
        std::unique_ptr<ActionComponent> actions;
    };

    Agent& agent(NpcId id);
    void apply(const Command& c, std::vector<StateChangeEvent>& changes);

    WorldState world_;
    Topology topology_;
    AgentConfig config_;
    ActionRegistry registry_;
    TraceLog log_;
    std::vector<std::unique_ptr<Agent>> agents_;
    bool stopped_ = false;
};

}  // namespace cogbot
