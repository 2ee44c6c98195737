#include <doctest.h>

#include <random>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "../support/trace_checks.hpp"
#include "cogbot/simulation.hpp"

using namespace cogbot;

namespace {

std::vector<TraceKind> kinds(const std::vector<TraceEvent>& ev) {
    std::vector<TraceKind> out;
    for (const auto& e : ev) out.push_back(e.kind);
    return out;
}

std::vector<TraceEvent> tick(Simulation& sim, std::vector<Command> cmds = {}) { return sim.advance_tick(cmds); }

}  // namespace

TEST_CASE("an idle tick emits only the boundary and advances the clock") {
    Simulation sim(fixtures::canonical(), {});
    const auto ev = tick(sim);
    CHECK(kinds(ev) == std::vector<TraceKind>{TraceKind::TickBoundary});
    CHECK(ev[0].phase == Phase::Emit);
    CHECK(sim.tick() == 1);
    CHECK(sim.quiescent());
}

TEST_CASE("opening an unseen door changes truth but not belief") {
    Simulation sim(fixtures::canonical(), {});
    const auto ev = tick(sim, {OpenDoor{DoorId{'a'}}});
    CHECK(sim.world().door(DoorId{'a'}).state == DoorState::Open);
    REQUIRE(sim.deliberator(NpcId{0}).beliefs() != nullptr);
    CHECK(sim.deliberator(NpcId{0}).beliefs()->believed(DoorId{'a'}) == DoorState::Closed);
    CHECK(kinds(ev) == std::vector<TraceKind>{TraceKind::Command, TraceKind::TickBoundary});
    CHECK(ev[0].payload["changed"] == true);

    const auto again = tick(sim, {OpenDoor{DoorId{'a'}}});
    CHECK(again[0].payload["changed"] == false);
}

TEST_CASE("invalid commands become Error events and the tick completes") {
    Simulation sim(fixtures::canonical(), {});
    const auto ev = tick(sim, {OpenDoor{DoorId{'z'}}, MoveToCommand{NpcId{4}, {2, 2}}, MoveToCommand{NpcId{0}, {0, 0}},
                               MoveToCommand{NpcId{0}, {40, 2}}});
    CHECK(kinds(ev) == std::vector<TraceKind>{TraceKind::Error, TraceKind::Error, TraceKind::Error, TraceKind::Error,
                                              TraceKind::TickBoundary});
    for (int i = 0; i < 4; ++i) CHECK(ev[static_cast<std::size_t>(i)].payload.contains("command"));
    CHECK(sim.validate(OpenDoor{DoorId{'a'}}).empty());
    CHECK(sim.validate(MoveToCommand{NpcId{0}, {0, 0}}) == "impassable target");
}

TEST_CASE("NPCs are processed in id order within each phase") {
    const char* two =
        "#######\n"
        "#@....#\n"
        "#.....#\n"
        "#@....#\n"
        "#######\n";
    Simulation sim(parse_map(two), {});
    const auto ev = tick(sim, {MoveToCommand{NpcId{1}, {3, 5}}, MoveToCommand{NpcId{0}, {1, 5}}});
    std::vector<std::pair<Phase, int>> order;
    for (const auto& e : ev) {
        if (e.npc && e.phase != Phase::Commands) order.push_back({e.phase, e.npc->index});
    }
    REQUIRE_FALSE(order.empty());
    CHECK(std::is_sorted(order.begin(), order.end()));
    // Commands keep their submission order.
    CHECK(ev[0].npc == NpcId{1});
    CHECK(ev[1].npc == NpcId{0});
}

TEST_CASE("stop halts the run") {
    Simulation sim(fixtures::canonical(), {});
    tick(sim, {Stop{}});
    CHECK(sim.stopped());
}

TEST_CASE("property: doors, NPCs and terrain are conserved over random runs") {
    std::mt19937 rng(404);
    for (int run = 0; run < 20; ++run) {
        const WorldState initial = parse_map(oracle::random_map(rng, {.npcs = 2}));
        const Scenario sc = checks::random_scenario(rng, initial, 40, 12);
        Simulation sim(initial, {});
        std::size_t next = 0;
        for (Tick t = 0; t < 60; ++t) {
            std::vector<Command> due;
            while (next < sc.commands.size() && sc.commands[next].tick == t) due.push_back(sc.commands[next++].command);
            sim.advance_tick(due);
            const WorldState& w = sim.world();
            CHECK(w.terrain_glyphs() == initial.terrain_glyphs());
            CHECK(w.doors().size() == initial.doors().size());
            CHECK(w.npcs().size() == initial.npcs().size());
            for (const auto& [id, pose] : w.npcs()) CHECK(w.is_passable(pose.position));
        }
    }
}

TEST_CASE("identical inputs give identical traces") {
    std::mt19937 rng(405);
    for (int run = 0; run < 10; ++run) {
        const WorldState initial = parse_map(oracle::random_map(rng));
        const Scenario sc = checks::random_scenario(rng, initial, 30, 10);
        for (DeliberatorKind k : {DeliberatorKind::Belief, DeliberatorKind::Omniscient, DeliberatorKind::Oblivious}) {
            CHECK(render_trace(run_scenario(initial, sc, k, 80).events) ==
                  render_trace(run_scenario(initial, sc, k, 80).events));
        }
    }
}
