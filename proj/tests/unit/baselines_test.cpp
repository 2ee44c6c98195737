#include <doctest.h>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "cogbot/baselines.hpp"

using namespace cogbot;

namespace {

EventNotification go(TilePos p) { return {std::string(events::kGoto), {{"target", pos_json(p)}}}; }

const Json& last_plan(TraceLog& log) {
    static Json keep;
    keep = nullptr;
    for (const auto& e : log.take()) {
        if (e.kind == TraceKind::PlanComputed) keep = e.payload;
    }
    return keep;
}

}  // namespace

TEST_CASE("oblivious plans straight through closed door a") {
    const WorldState w = fixtures::canonical();
    TraceLog log;
    PathDeliberator d(PathDeliberator::Mode::Oblivious, w, TraceChannel(&log, NpcId{0}));
    d.notify_event(go({2, 9}), 0);
    const auto decision = d.get_next_action(w.npc(NpcId{0}), 0);
    REQUIRE(std::holds_alternative<ActionRequest>(decision));
    const Json& plan = last_plan(log);
    CHECK(plan["route"] == Json::array({"a"}));
    CHECK(plan["cost"] == 8);
    CHECK(plan["deliberator"] == "oblivious");
}

TEST_CASE("omniscient finds nothing while every door is closed, then uses truth") {
    WorldState w = fixtures::canonical();
    TraceLog log;
    PathDeliberator d(PathDeliberator::Mode::Omniscient, w, TraceChannel(&log, NpcId{0}));
    d.notify_event(go({2, 9}), 0);
    const auto none = d.get_next_action(w.npc(NpcId{0}), 0);
    REQUIRE(std::holds_alternative<NoPlan>(none));
    CHECK(std::get<NoPlan>(none).reason == NoPlanReason::Unreachable);

    w.set_door_state(DoorId{'b'}, DoorState::Open);
    w.set_door_state(DoorId{'c'}, DoorState::Open);
    REQUIRE(std::holds_alternative<ActionRequest>(d.get_next_action(w.npc(NpcId{0}), 1)));
    const Json& plan = last_plan(log);
    CHECK(plan["route"] == Json::array({"b", "c"}));
    CHECK(plan["cost"] == *oracle::bfs_distance(w, {2, 1}, {2, 9}, oracle::Passability{oracle::Doors::GroundTruth, {}}));
}

TEST_CASE("omniscient drops its route when a shorter one opens or its own closes") {
    WorldState w = fixtures::canonical();
    w.set_door_state(DoorId{'b'}, DoorState::Open);
    w.set_door_state(DoorId{'c'}, DoorState::Open);
    TraceLog log;
    PathDeliberator d(PathDeliberator::Mode::Omniscient, w, TraceChannel(&log, NpcId{0}));
    d.notify_event(go({2, 9}), 0);
    d.get_next_action(w.npc(NpcId{0}), 0);

    const EventNotification changed{std::string(events::kDoorChanged), {{"door", "a"}, {"state", "open"}}};
    CHECK_FALSE(d.notify_event(changed, 1));  // a still closed: nothing better
    w.set_door_state(DoorId{'a'}, DoorState::Open);
    CHECK(d.notify_event(changed, 1));
    d.get_next_action(w.npc(NpcId{0}), 1);
    CHECK(last_plan(log)["route"] == Json::array({"a"}));

    w.set_door_state(DoorId{'a'}, DoorState::Closed);
    CHECK(d.notify_event(changed, 2));
}

TEST_CASE("oblivious ignores door notifications") {
    const WorldState w = fixtures::canonical();
    PathDeliberator d(PathDeliberator::Mode::Oblivious, w, {});
    d.notify_event(go({2, 9}), 0);
    d.get_next_action(w.npc(NpcId{0}), 0);
    CHECK_FALSE(d.notify_event({std::string(events::kDoorChanged), {{"door", "a"}, {"state", "open"}}}, 1));
    CHECK(d.beliefs() == nullptr);
}

TEST_CASE("goal reached reports Satisfied and clears the goal; cancel clears too") {
    const WorldState w = fixtures::canonical();
    PathDeliberator d(PathDeliberator::Mode::Omniscient, w, {});
    d.notify_event(go({2, 1}), 0);
    const auto at = d.get_next_action(w.npc(NpcId{0}), 0);
    CHECK(std::get<NoPlan>(at).reason == NoPlanReason::Satisfied);
    CHECK_FALSE(d.goal().has_value());
    d.notify_event(go({2, 3}), 1);
    CHECK(d.goal().has_value());
    d.notify_event({std::string(events::kCancel), Json::object()}, 1);
    CHECK_FALSE(d.goal().has_value());
    CHECK(d.plan_summary().is_null());
}

TEST_CASE("a wall goal is an Error, not a goal") {
    const WorldState w = fixtures::canonical();
    TraceLog log;
    PathDeliberator d(PathDeliberator::Mode::Oblivious, w, TraceChannel(&log, NpcId{0}));
    d.notify_event(go({0, 0}), 0);
    CHECK_FALSE(d.goal().has_value());
    const auto ev = log.take();
    REQUIRE(ev.size() == 1);
    CHECK(ev[0].kind == TraceKind::Error);
}
