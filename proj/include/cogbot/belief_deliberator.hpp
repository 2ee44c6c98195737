#pragma once

// Belief-driven deliberation: door beliefs fed only by perception, area-level
// planning over believed-open doors, and refinement of each macro step into a
// tile path.

#include <optional>
#include <vector>

#include "cogbot/deliberator.hpp"
#include "cogbot/pathfinding.hpp"
#include "cogbot/topology.hpp"

namespace cogbot {

struct MacroStep {
    DoorId door;
    AreaId destination;
    friend bool operator==(const MacroStep&, const MacroStep&) = default;
};

struct MacroPlan {
    AreaId origin;
    std::vector<MacroStep> steps;
    TilePos final_target;
    AreaId target_area;

    /// origin, then each step's destination.
    std::vector<AreaId> area_sequence() const;
    Json to_json() const;
    friend bool operator==(const MacroPlan&, const MacroPlan&) = default;
};

struct FinalTarget {
    TilePos target;
};

using MacroStepOrFinal = std::variant<MacroStep, FinalTarget>;

/// Fewest-door route from `from` to `to` using only believed-open doors. Breadth-first,
/// expanding neighbors by door id. Empty steps when from == to, nullopt when
/// unreachable. Throws Errc::UnknownArea.
std::optional<std::vector<MacroStep>> plan_high_level(const BeliefState& beliefs, const AreaGraph& graph,
                                                      AreaId from, AreaId to);

/// Turns one macro step into a "traverse-door" or "move-to" request whose path is
/// planned under the belief policy. Throws Errc::RefinementFailed on no path.
ActionRequest refine_macro(const WorldState& world, const AreaDecomposition& decomp, const BeliefState& beliefs,
                           TilePos current, const MacroStepOrFinal& step);

class BeliefDeliberator final : public Deliberator {
public:
    /// `world` is consulted for terrain only; door states come from beliefs.
    BeliefDeliberator(const WorldState& world, const Topology& topology, TraceChannel trace);

    std::string_view kind() const override { return "belief"; }

    Decision get_next_action(const NpcPose& self, Tick now) override;
    bool notify_object(const ObjectSnapshot& object, Tick now) override;
    bool notify_event(const EventNotification& event, Tick now) override;

    /// Throws Errc::InvalidGoal for targets that are not floor tiles.
    void set_goal(TilePos target);
    void cancel_goal();

    std::optional<TilePos> goal() const override { return goal_; }
    const BeliefState* beliefs() const override { return &beliefs_; }
    const std::optional<MacroPlan>& plan() const { return plan_; }
    Json plan_summary() const override;

private:
    std::optional<AreaId> choose_area(TilePos pos, AreaId target_area) const;
    bool remaining_steps_open(std::size_t from_index) const;
    bool plan_still_best() const;

    const WorldState* world_;
    const Topology* topology_;
    TraceChannel trace_;
    BeliefState beliefs_;
    std::optional<TilePos> goal_;
    std::optional<MacroPlan> plan_;
    std::optional<AreaId> last_area_;
    std::optional<ActionRequest> last_request_;
};

}  // namespace cogbot
