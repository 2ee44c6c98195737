#pragma once

// NPC-agnostic comparison deliberators: a single tile path to the goal, planned
// either ignoring doors (oblivious) or against ground truth (omniscient). Both
// replan whenever the current route fails.

#include <optional>

#include "cogbot/deliberator.hpp"
#include "cogbot/pathfinding.hpp"

namespace cogbot {

class PathDeliberator final : public Deliberator {
public:
    enum class Mode { Oblivious, Omniscient };

    PathDeliberator(Mode mode, const WorldState& world, TraceChannel trace);

    std::string_view kind() const override { return mode_ == Mode::Oblivious ? "oblivious" : "omniscient"; }

    Decision get_next_action(const NpcPose& self, Tick now) override;
    bool notify_object(const ObjectSnapshot&, Tick) override { return false; }
    bool notify_event(const EventNotification& event, Tick now) override;

    std::optional<TilePos> goal() const override { return goal_; }
    Json plan_summary() const override;

private:
    PassabilityPolicy policy() const {
        return mode_ == Mode::Oblivious ? PassabilityPolicy::ignore_doors() : PassabilityPolicy::ground_truth();
    }

    Mode mode_;
    const WorldState* world_;
    TraceChannel trace_;
    std::optional<TilePos> goal_;
    std::optional<Path> path_;
    std::optional<TilePos> last_position_;
};

}  // namespace cogbot
