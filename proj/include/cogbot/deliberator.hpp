#pragma once

// The contract every decision-making component implements.

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "cogbot/actions.hpp"
#include "cogbot/belief.hpp"
#include "cogbot/perception.hpp"

namespace cogbot {

enum class NoPlanReason { NoGoal, Satisfied, Unreachable, Failed };

std::string_view to_string(NoPlanReason r);

struct NoPlan {
    NoPlanReason reason = NoPlanReason::NoGoal;
    std::string detail;

    friend bool operator==(const NoPlan&, const NoPlan&) = default;
};

using Decision = std::variant<ActionRequest, NoPlan>;

/// Event names a deliberator understands.
namespace events {
inline constexpr std::string_view kGoto = "player.goto";      // payload {"target": [row, col]}
inline constexpr std::string_view kCancel = "player.cancel";  // payload {}
inline constexpr std::string_view kDoorChanged = "world.door_changed";
}  // namespace events

class Deliberator {
public:
    virtual ~Deliberator() = default;

    virtual std::string_view kind() const = 0;

    /// The next immediate action, or why there is none. Never mutates the world.
    virtual Decision get_next_action(const NpcPose& self, Tick now) = 0;

    /// An object entered the field of view or changed state while in view.
    /// Returns true when the plan being executed is no longer the one to follow.
    virtual bool notify_object(const ObjectSnapshot& object, Tick now) = 0;

    /// Same return convention as notify_object.
    virtual bool notify_event(const EventNotification& event, Tick now) = 0;

    virtual std::optional<TilePos> goal() const = 0;

    /// nullptr for deliberators without a door-belief model.
    virtual const BeliefState* beliefs() const { return nullptr; }

    /// Current plan for the UI overlay; null when there is none.
    virtual Json plan_summary() const = 0;
};

}  // namespace cogbot
