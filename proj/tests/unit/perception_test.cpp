#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "cogbot/perception.hpp"

using namespace cogbot;

namespace {

WorldState posed(std::string_view text, std::initializer_list<Direction> steps) {
    WorldState w = parse_map(text);
    for (Direction d : steps) w.step_npc(NpcId{0}, d);
    return w;
}

// Brute-force cone test without Bresenham: radius and angle only.
bool in_cone(TilePos from, Direction facing, TilePos to, const FovConfig& cfg) {
    const double dr = to.row - from.row, dc = to.col - from.col;
    if (dr == 0 && dc == 0) return true;
    if (std::hypot(dr, dc) > cfg.radius + 1e-9) return false;
    const TilePos ahead = offset(from, facing);
    const double fr = ahead.row - from.row, fc = ahead.col - from.col;
    const double cosang = (dr * fr + dc * fc) / std::hypot(dr, dc);
    const double angle = std::acos(std::clamp(cosang, -1.0, 1.0)) * 180.0 / std::numbers::pi;
    return angle <= cfg.half_angle + 1e-9;
}

}  // namespace

TEST_CASE("door a visible from (2,3) facing east, not facing west") {
    // From (2,1): E, E puts the NPC at (2,3) facing E.
    WorldState w = posed(fixtures::kCanonical, {Direction::E, Direction::E});
    REQUIRE(w.npc(NpcId{0}) == NpcPose{{2, 3}, Direction::E});
    const auto seen = perception_sweep(w, NpcId{0}, FovConfig{}, {});
    REQUIRE(seen.visible.size() == 1);
    CHECK(seen.visible.at("a") == "closed");
    REQUIRE(seen.events.size() == 1);
    const auto* entered = std::get_if<ObjectEnteredFov>(&seen.events[0]);
    REQUIRE(entered != nullptr);
    CHECK(entered->object.id == "a");
    CHECK(entered->object.position == TilePos{2, 5});

    w.step_npc(NpcId{0}, Direction::W);  // (2,2) facing W
    w.step_npc(NpcId{0}, Direction::E);  // back to (2,3) facing E
    w.step_npc(NpcId{0}, Direction::W);  // (2,2) facing W
    const auto away = perception_sweep(w, NpcId{0}, FovConfig{}, {});
    CHECK(away.visible.empty());
    CHECK(away.events.empty());
}

TEST_CASE("the start pose facing north sees no door") {
    const WorldState w = fixtures::canonical();
    CHECK(perception_sweep(w, NpcId{0}, FovConfig{}, {}).visible.empty());
}

TEST_CASE("state flip of an in-view door yields exactly one status change") {
    WorldState w = posed(fixtures::kCanonical, {Direction::E, Direction::E});
    const auto first = perception_sweep(w, NpcId{0}, FovConfig{}, {});
    w.set_door_state(DoorId{'a'}, DoorState::Open);
    const auto second = perception_sweep(w, NpcId{0}, FovConfig{}, first.visible);
    REQUIRE(second.events.size() == 1);
    const auto* st = std::get_if<ObjectStatusChanged>(&second.events[0]);
    REQUIRE(st != nullptr);
    CHECK(st->id == "a");
    CHECK(st->state == "open");
    CHECK(perception_sweep(w, NpcId{0}, FovConfig{}, second.visible).events.empty());
}

TEST_CASE("leaving view emits Left") {
    WorldState w = posed(fixtures::kCanonical, {Direction::E, Direction::E});
    const auto first = perception_sweep(w, NpcId{0}, FovConfig{}, {});
    w.step_npc(NpcId{0}, Direction::W);
    const auto second = perception_sweep(w, NpcId{0}, FovConfig{}, first.visible);
    REQUIRE(second.events.size() == 1);
    CHECK(std::get<ObjectLeftFov>(second.events[0]).id == "a");
}

TEST_CASE("closed doors and walls block line of sight; the target never blocks itself") {
    const WorldState w = fixtures::canonical();
    CHECK(line_of_sight(w, {2, 3}, {2, 5}));
    CHECK_FALSE(line_of_sight(w, {2, 3}, {2, 7}));  // through closed a
    WorldState open = w;
    open.set_door_state(DoorId{'a'}, DoorState::Open);
    CHECK(line_of_sight(open, {2, 3}, {2, 7}));
    CHECK_FALSE(line_of_sight(w, {1, 4}, {1, 6}));  // wall at (1,5)
    CHECK(line_of_sight(w, {2, 1}, {2, 1}));
}

TEST_CASE("filters") {
    const char* two_npcs =
        "#######\n"
        "#@.a..#\n"
        "#..#..#\n"
        "#@.b..#\n"
        "#######\n";
    // npc0 at (1,1), npc1 at (3,1). Face npc0 east.
    WorldState w = parse_map(two_npcs);
    w.step_npc(NpcId{0}, Direction::E);
    w.step_npc(NpcId{0}, Direction::W);
    w.step_npc(NpcId{0}, Direction::S);  // (2,1) facing S
    REQUIRE(w.npc(NpcId{0}).position == TilePos{2, 1});

    const auto doors_only = perception_sweep(w, NpcId{0}, FovConfig{}, {});
    for (const auto& [id, st] : doors_only.visible) CHECK(id.rfind("npc", 0) != 0);

    const auto none = perception_sweep(w, NpcId{0}, register_filter(FovConfig{}, {}), {});
    CHECK(none.visible.empty());
    CHECK(none.events.empty());

    const auto both = perception_sweep(w, NpcId{0}, register_filter(FovConfig{4, 90.0, {}}, {"door", "npc"}), {});
    CHECK(both.visible.contains("npc1"));
    CHECK(both.visible.contains("b"));
    CHECK_FALSE(both.visible.contains("npc0"));
}

TEST_CASE("FovConfig validation") {
    CHECK_NOTHROW(FovConfig{}.validate());
    CHECK_THROWS(FovConfig{0, 45.0, {}}.validate());
    CHECK_THROWS(FovConfig{3, 0.0, {}}.validate());
    CHECK_THROWS(FovConfig{3, 181.0, {}}.validate());
    CHECK_NOTHROW(FovConfig{3, 180.0, {}}.validate());
}

TEST_CASE("property: visible tiles equal cone test plus line of sight") {
    std::mt19937 rng(31);
    for (int m = 0; m < 30; ++m) {
        const WorldState w = parse_map(oracle::random_map(rng));
        for (Direction facing : kAllDirections) {
            const FovConfig cfg{std::uniform_int_distribution<int>(1, 6)(rng),
                                std::uniform_real_distribution<double>(10.0, 180.0)(rng), {"door"}};
            const NpcPose pose{w.npc(NpcId{0}).position, facing};
            const auto tiles = visible_tiles(w, pose, cfg);
            std::vector<TilePos> want;
            for (int r = 0; r < w.height(); ++r) {
                for (int c = 0; c < w.width(); ++c) {
                    if (in_cone(pose.position, facing, {r, c}, cfg) && line_of_sight(w, pose.position, {r, c})) {
                        want.push_back({r, c});
                    }
                }
            }
            CHECK(tiles == want);
        }
    }
}

TEST_CASE("property: Entered/Left alternate and status changes only for visible objects") {
    std::mt19937 rng(32);
    for (int run = 0; run < 25; ++run) {
        WorldState w = parse_map(oracle::random_map(rng));
        std::vector<DoorId> doors;
        for (const auto& [id, d] : w.doors()) doors.push_back(id);
        VisibleSet visible;
        std::map<std::string, bool> inside;
        for (int t = 0; t < 60; ++t) {
            w.step_npc(NpcId{0}, kAllDirections[std::uniform_int_distribution<int>(0, 3)(rng)]);
            if (!doors.empty() && std::bernoulli_distribution(0.3)(rng)) {
                const DoorId d = doors[std::uniform_int_distribution<std::size_t>(0, doors.size() - 1)(rng)];
                w.set_door_state(d, w.door(d).state == DoorState::Open ? DoorState::Closed : DoorState::Open);
            }
            auto res = perception_sweep(w, NpcId{0}, FovConfig{}, visible);
            for (const auto& ev : res.events) {
                if (const auto* e = std::get_if<ObjectEnteredFov>(&ev)) {
                    CHECK_FALSE(inside[e->object.id]);
                    inside[e->object.id] = true;
                } else if (const auto* l = std::get_if<ObjectLeftFov>(&ev)) {
                    CHECK(inside[l->id]);
                    inside[l->id] = false;
                } else if (const auto* s = std::get_if<ObjectStatusChanged>(&ev)) {
                    CHECK(inside[s->id]);
                    CHECK(visible.contains(s->id));
                    CHECK(res.visible.contains(s->id));
                }
            }
            visible = std::move(res.visible);
        }
    }
}

TEST_CASE("several senses merge in configuration order; the monitor reports every change") {
    WorldState w = fixtures::canonical();
    Perception p({FovConfig{}, FovConfig{8, 180.0, {"door"}}});
    p.add_condition(std::make_unique<DoorChangeMonitor>());
    const auto ev = w.set_door_state(DoorId{'c'}, DoorState::Open);
    const std::vector<StateChangeEvent> changes{*ev};
    const auto events = p.sweep(w, NpcId{0}, changes);
    CHECK(p.visible(0).empty());
    CHECK_FALSE(p.visible(1).empty());
    REQUIRE_FALSE(events.empty());
    const auto* note = std::get_if<EventNotification>(&events.back());
    REQUIRE(note != nullptr);
    CHECK(note->name == "world.door_changed");
    CHECK(note->payload["door"] == "c");
}
