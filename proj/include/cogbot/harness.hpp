#pragma once

// Headless scenario execution, trace analysis and deliberator comparison.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cogbot/simulation.hpp"

namespace cogbot {

struct ScheduledCommand {
    Tick tick = 0;
    Command command;
    friend bool operator==(const ScheduledCommand&, const ScheduledCommand&) = default;
};

struct Scenario {
    std::vector<ScheduledCommand> commands;  // ticks non-decreasing
    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Line grammar: "@<tick> open <door>", "@<tick> close <door>",
/// "@<tick> goto <npc> <POI|row,col>", "@<tick> cancel <npc>", "@<tick> stop".
/// '#' starts a comment. POI names are resolved against `world`.
/// Throws Errc::ParseError, Errc::UnknownReference, Errc::NonMonotoneTicks.
Scenario load_scenario(std::string_view document, const WorldState& world);

/// Commands (including rejected ones) recorded in a trace, in order.
Scenario scenario_from_trace(const std::vector<TraceEvent>& events);

inline constexpr Tick kDefaultMaxTicks = 1000;

struct RunResult {
    std::vector<TraceEvent> events;
    std::string end_reason;  // "stop" | "quiescent" | "max_ticks"
    Tick ticks = 0;
};

/// Runs until a stop command, quiescence after the last scheduled command, or
/// `max_ticks`. The final event is always RunEnd.
RunResult run_scenario(const WorldState& world, const Scenario& scenario, const AgentConfig& config,
                       Tick max_ticks = kDefaultMaxTicks);

RunResult run_scenario(const WorldState& world, const Scenario& scenario, DeliberatorKind kind,
                       Tick max_ticks = kDefaultMaxTicks);

struct NpcMetrics {
    std::optional<Tick> ticks_to_goal;  // for the last goto of the run
    int blocked_attempts = 0;
    int plan_changes = 0;
    int clairvoyant_plan_changes = 0;
    std::optional<Tick> no_plan_tick;  // first "unreachable" NoPlan after the last goto
};

/// A blocked attempt is an action that failed with "blocked", or was preempted after
/// the NPC came to believe a door on its route closed. A plan change is a
/// PlanComputed whose (route, target) differs from the previous decision; it is
/// clairvoyant when no goal command, changed BeliefUpdate or non-preemption
/// failure for that NPC occurred since its previous decision.
NpcMetrics analyze_trace(const std::vector<TraceEvent>& events, NpcId npc);

struct ComparisonEntry {
    DeliberatorKind deliberator;
    NpcMetrics metrics;
    std::string end_reason;
    Tick ticks = 0;
};

struct ComparisonReport {
    std::vector<ComparisonEntry> entries;

    const ComparisonEntry& at(DeliberatorKind k) const;
    Json to_json() const;
};

ComparisonReport compare_deliberators(const WorldState& world, const Scenario& scenario,
                                      const std::vector<DeliberatorKind>& kinds, NpcId npc = NpcId{0},
                                      Tick max_ticks = kDefaultMaxTicks);

/// Phase-order schema check. Returns human-readable violations; empty means valid.
std::vector<std::string> check_trace_schema(const std::vector<TraceEvent>& events);

}  // namespace cogbot
