#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "../support/trace_checks.hpp"

using namespace cogbot;

namespace {

void report(const char* what, const std::vector<std::string>& violations) {
    for (const auto& v : violations) MESSAGE(what << ": " << v);
    CHECK_MESSAGE(violations.empty(), what);
}

TilePos final_position(const std::vector<TraceEvent>& events, TilePos start) {
    for (const auto& e : events) {
        if (e.kind == TraceKind::Move && e.payload["outcome"] == "moved") start = pos_from_json(e.payload["to"]);
    }
    return start;
}

}  // namespace

TEST_CASE("property: random runs satisfy every trace invariant") {
    std::mt19937 rng(2024);
    for (int run = 0; run < 40; ++run) {
        const WorldState initial = parse_map(oracle::random_map(rng, {.npcs = 1 + run % 2}));
        const Scenario sc = checks::random_scenario(rng, initial, 60, 14);
        for (DeliberatorKind k : {DeliberatorKind::Belief, DeliberatorKind::Omniscient, DeliberatorKind::Oblivious}) {
            CAPTURE(run);
            CAPTURE(to_string(k));
            const RunResult r = run_scenario(initial, sc, k, 150);
            report("schema", check_trace_schema(r.events));
            report("movement", checks::movement_soundness(initial, r.events));
            report("percepts", checks::percept_symmetry(r.events));
            report("actions", checks::action_lifecycle(r.events));
            if (k == DeliberatorKind::Belief) {
                report("clairvoyance", checks::clairvoyance(r.events));
                report("knowledge", checks::knowledge_soundness(r.events));
            }
        }
    }
}

TEST_CASE("property: with doors fixed, the belief NPC stops replanning and arrives") {
    std::mt19937 rng(2025);
    int arrived = 0;
    for (int run = 0; run < 40; ++run) {
        const WorldState initial = parse_map(oracle::random_map(rng));
        const auto floors = oracle::floor_tiles(initial);
        const TilePos start = initial.npc(NpcId{0}).position;
        const TilePos goal = floors[std::uniform_int_distribution<std::size_t>(0, floors.size() - 1)(rng)];
        Scenario sc;
        sc.commands.push_back({0, MoveToCommand{NpcId{0}, goal}});
        const RunResult r = run_scenario(initial, sc, DeliberatorKind::Belief, 400);
        CAPTURE(run);
        CHECK(r.end_reason == "quiescent");

        // Belief can only be more pessimistic than truth, so arrival implies truth-reachability.
        const bool reachable = oracle::bfs_distance(initial, start, goal, {}).has_value();
        const bool at_goal = final_position(r.events, start) == goal;
        if (at_goal) {
            CHECK(reachable);
            ++arrived;
        }
        const NpcMetrics m = analyze_trace(r.events, NpcId{0});
        CHECK(m.clairvoyant_plan_changes == 0);
        CHECK(at_goal != m.no_plan_tick.has_value());
    }
    CHECK(arrived > 0);
}
