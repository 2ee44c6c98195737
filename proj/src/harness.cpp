#include "cogbot/harness.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace cogbot {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

int parse_int(std::string_view s, const std::string& where) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw Error(Errc::ParseError, where + ": expected integer, got '" + std::string(s) + "'");
    }
    return v;
}

DoorId parse_door(const std::string& tok, const WorldState& world, const std::string& where) {
    if (tok.size() != 1 || tok[0] < 'a' || tok[0] > 'z') {
        throw Error(Errc::ParseError, where + ": bad door id '" + tok + "'");
    }
    const DoorId id{tok[0]};
    if (!world.has_door(id)) throw Error(Errc::UnknownReference, where + ": no door '" + tok + "' in map");
    return id;
}

NpcId parse_npc(const std::string& tok, const WorldState& world, const std::string& where) {
    NpcId id;
    try {
        id = parse_npc_id(tok);
    } catch (const Error&) {
        throw Error(Errc::ParseError, where + ": bad npc id '" + tok + "'");
    }
    if (!world.has_npc(id)) throw Error(Errc::UnknownReference, where + ": no npc '" + tok + "' in map");
    return id;
}

TilePos parse_target(const std::string& tok, const WorldState& world, const std::string& where) {
    if (tok.size() == 1 && tok[0] >= 'A' && tok[0] <= 'Z') {
        auto it = world.points_of_interest().find(tok[0]);
        if (it == world.points_of_interest().end()) {
            throw Error(Errc::UnknownReference, where + ": no point of interest '" + tok + "' in map");
        }
        return it->second;
    }
    const auto comma = tok.find(',');
    if (comma == std::string::npos) throw Error(Errc::ParseError, where + ": bad target '" + tok + "'");
    const TilePos p{parse_int(std::string_view(tok).substr(0, comma), where),
                    parse_int(std::string_view(tok).substr(comma + 1), where)};
    if (!world.in_bounds(p)) throw Error(Errc::UnknownReference, where + ": target '" + tok + "' is off the map");
    return p;
}

void expect_args(const std::vector<std::string>& toks, std::size_t n, const std::string& where) {
    if (toks.size() != n) {
        throw Error(Errc::ParseError, where + ": '" + toks[1] + "' takes " + std::to_string(n - 2) + " argument(s)");
    }
}

bool route_contains(const Json& route, const std::string& door) {
    for (const auto& d : route) {
        if (d.get<std::string>() == door) return true;
    }
    return false;
}

}  // namespace

Scenario load_scenario(std::string_view document, const WorldState& world) {
    Scenario sc;
    std::istringstream in{std::string(document)};
    std::string raw;
    int line_no = 0;
    Tick last_tick = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string where = "line " + std::to_string(line_no);
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0].size() < 2 || toks[0][0] != '@') {
            throw Error(Errc::ParseError, where + ": expected '@<tick>', got '" + toks[0] + "'");
        }
        const Tick tick = parse_int(std::string_view(toks[0]).substr(1), where);
        if (tick < 0) throw Error(Errc::ParseError, where + ": negative tick");
        if (tick < last_tick) {
            throw Error(Errc::NonMonotoneTicks, where + ": tick " + std::to_string(tick) + " after " +
                                                    std::to_string(last_tick));
        }
        last_tick = tick;
        if (toks.size() < 2) throw Error(Errc::ParseError, where + ": missing verb");
        const std::string& verb = toks[1];
        Command cmd;
        if (verb == "open" || verb == "close") {
            expect_args(toks, 3, where);
            const DoorId d = parse_door(toks[2], world, where);
            cmd = verb == "open" ? Command{OpenDoor{d}} : Command{CloseDoor{d}};
        } else if (verb == "goto") {
            expect_args(toks, 4, where);
            cmd = MoveToCommand{parse_npc(toks[2], world, where), parse_target(toks[3], world, where)};
        } else if (verb == "cancel") {
            expect_args(toks, 3, where);
            cmd = CancelGoal{parse_npc(toks[2], world, where)};
        } else if (verb == "stop") {
            expect_args(toks, 2, where);
            cmd = Stop{};
        } else {
            throw Error(Errc::ParseError, where + ": unknown verb '" + verb + "'");
        }
        sc.commands.push_back({tick, std::move(cmd)});
    }
    return sc;
}

Scenario scenario_from_trace(const std::vector<TraceEvent>& events) {
    Scenario sc;
    for (const auto& ev : events) {
        if (ev.phase != Phase::Commands) continue;
        if (ev.kind == TraceKind::Command) {
            sc.commands.push_back({ev.tick, command_from_json(ev.payload)});
        } else if (ev.kind == TraceKind::Error && ev.payload.contains("command")) {
            sc.commands.push_back({ev.tick, command_from_json(ev.payload.at("command"))});
        }
    }
    return sc;
}

RunResult run_scenario(const WorldState& world, const Scenario& scenario, const AgentConfig& config, Tick max_ticks) {
    Simulation sim(world, config);
    RunResult result;
    std::size_t next = 0;
    result.end_reason = "max_ticks";
    while (sim.tick() < max_ticks) {
        std::vector<Command> due;
        while (next < scenario.commands.size() && scenario.commands[next].tick <= sim.tick()) {
            due.push_back(scenario.commands[next++].command);
        }
        auto events = sim.advance_tick(due);
        result.events.insert(result.events.end(), std::make_move_iterator(events.begin()),
                             std::make_move_iterator(events.end()));
        if (sim.stopped()) {
            result.end_reason = "stop";
            break;
        }
        if (next == scenario.commands.size() && sim.quiescent()) {
            result.end_reason = "quiescent";
            break;
        }
    }
    result.ticks = sim.tick();
    Json end;
    end["reason"] = result.end_reason;
    end["ticks"] = result.ticks;
    result.events.push_back({std::max<Tick>(sim.tick() - 1, 0), Phase::Emit, std::nullopt, TraceKind::RunEnd, end});
    return result;
}

RunResult run_scenario(const WorldState& world, const Scenario& scenario, DeliberatorKind kind, Tick max_ticks) {
    AgentConfig cfg;
    cfg.deliberator = kind;
    return run_scenario(world, scenario, cfg, max_ticks);
}

NpcMetrics analyze_trace(const std::vector<TraceEvent>& events, NpcId npc) {
    NpcMetrics m;

    std::optional<std::size_t> last_goto;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& ev = events[i];
        if (ev.kind == TraceKind::Command && ev.npc == npc && ev.payload.at("verb") == "goto") last_goto = i;
    }

    struct CurrentAction {
        std::uint64_t invocation;
        Json route;
        bool believed_closed = false;
    };
    std::optional<CurrentAction> current;
    Json previous_plan = nullptr;
    bool justified = false;

    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& ev = events[i];
        if (ev.npc != npc) continue;
        const Json& p = ev.payload;
        switch (ev.kind) {
            case TraceKind::Command:
                justified = true;
                break;
            case TraceKind::BeliefUpdate:
                if (p.at("changed").get<bool>()) justified = true;
                if (current && p.at("state") == "closed" && route_contains(current->route, p.at("door"))) {
                    current->believed_closed = true;
                }
                break;
            case TraceKind::ActionStart:
                current = CurrentAction{p.at("invocation").get<std::uint64_t>(), p.at("route")};
                break;
            case TraceKind::ActionStatus: {
                const std::string status = p.at("status");
                if (status == "running") break;
                const std::string reason = p.value("reason", "");
                if (status == "failed" && reason != "preempted") justified = true;
                if (current && current->invocation == p.at("invocation").get<std::uint64_t>()) {
                    if (status == "failed" &&
                        (reason == "blocked" || (reason == "preempted" && current->believed_closed))) {
                        ++m.blocked_attempts;
                    }
                    current.reset();
                }
                break;
            }
            case TraceKind::PlanComputed: {
                Json summary;
                summary["route"] = p.at("route");
                summary["target"] = p.at("target");
                if (summary != previous_plan) {
                    ++m.plan_changes;
                    if (!justified) ++m.clairvoyant_plan_changes;
                }
                previous_plan = std::move(summary);
                justified = false;
                break;
            }
            case TraceKind::NoPlan:
                previous_plan = nullptr;
                justified = false;
                if (last_goto && i > *last_goto && !m.no_plan_tick && p.at("reason") == "unreachable") {
                    m.no_plan_tick = ev.tick;
                }
                break;
            default:
                break;
        }
    }

    if (last_goto) {
        const auto& g = events[*last_goto];
        const Json target = g.payload.at("target");
        for (std::size_t i = *last_goto + 1; i < events.size(); ++i) {
            const auto& ev = events[i];
            if (ev.npc != npc) continue;
            if (ev.kind == TraceKind::Command) break;
            if (ev.kind == TraceKind::Move && ev.payload.at("outcome") == "moved" && ev.payload.at("to") == target) {
                m.ticks_to_goal = ev.tick - g.tick + 1;
                break;
            }
            if (ev.kind == TraceKind::NoPlan && ev.payload.at("reason") == "satisfied") {
                m.ticks_to_goal = 0;
                break;
            }
        }
    }
    return m;
}

const ComparisonEntry& ComparisonReport::at(DeliberatorKind k) const {
    for (const auto& e : entries) {
        if (e.deliberator == k) return e;
    }
    throw std::out_of_range("no report entry for " + std::string(to_string(k)));
}

Json ComparisonReport::to_json() const {
    Json results = Json::array();
    for (const auto& e : entries) {
        Json j;
        j["deliberator"] = std::string(to_string(e.deliberator));
        j["ticks_to_goal"] = e.metrics.ticks_to_goal ? Json(*e.metrics.ticks_to_goal) : Json(nullptr);
        j["blocked_attempts"] = e.metrics.blocked_attempts;
        j["plan_changes"] = e.metrics.plan_changes;
        j["clairvoyant_plan_changes"] = e.metrics.clairvoyant_plan_changes;
        j["no_plan_tick"] = e.metrics.no_plan_tick ? Json(*e.metrics.no_plan_tick) : Json(nullptr);
        j["end_reason"] = e.end_reason;
        j["ticks"] = e.ticks;
        results.push_back(std::move(j));
    }
    Json out;
    out["results"] = std::move(results);
    return out;
}

ComparisonReport compare_deliberators(const WorldState& world, const Scenario& scenario,
                                      const std::vector<DeliberatorKind>& kinds, NpcId npc, Tick max_ticks) {
    ComparisonReport report;
    for (DeliberatorKind k : kinds) {
        RunResult r = run_scenario(world, scenario, k, max_ticks);
        report.entries.push_back({k, analyze_trace(r.events, npc), r.end_reason, r.ticks});
    }
    return report;
}

std::vector<std::string> check_trace_schema(const std::vector<TraceEvent>& events) {
    std::vector<std::string> problems;
    auto allowed = [](TraceKind k, Phase p) {
        switch (k) {
            case TraceKind::Command: return p == Phase::Commands;
            case TraceKind::Error: return p == Phase::Commands || p == Phase::Control;
            case TraceKind::Percept: return p == Phase::Perception;
            case TraceKind::BeliefUpdate:
            case TraceKind::PlanComputed:
            case TraceKind::NoPlan:
            case TraceKind::ActionStart:
            case TraceKind::Warning: return p == Phase::Control;
            case TraceKind::ActionStatus: return p == Phase::Control || p == Phase::Movement;
            case TraceKind::Move: return p == Phase::Movement;
            case TraceKind::TickBoundary:
            case TraceKind::RunEnd: return p == Phase::Emit;
        }
        return false;
    };

    Tick expected_tick = 0;
    Phase last_phase = Phase::Commands;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& ev = events[i];
        const std::string at = "event " + std::to_string(i) + " (" + std::string(to_string(ev.kind)) + ")";
        if (!allowed(ev.kind, ev.phase)) {
            problems.push_back(at + ": not allowed in phase " + std::to_string(static_cast<int>(ev.phase)));
        }
        if (ev.kind == TraceKind::RunEnd) {
            if (i + 1 != events.size()) problems.push_back(at + ": RunEnd must be last");
            continue;
        }
        if (ev.tick != expected_tick) {
            problems.push_back(at + ": tick " + std::to_string(ev.tick) + ", expected " + std::to_string(expected_tick));
        }
        if (ev.phase < last_phase) problems.push_back(at + ": phase went backwards");
        last_phase = ev.phase;
        if (ev.kind == TraceKind::TickBoundary) {
            ++expected_tick;
            last_phase = Phase::Commands;
        }
    }
    return problems;
}

}  // namespace cogbot
