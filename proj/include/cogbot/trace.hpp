#pragma once

// Line-delimited trace records shared by the headless harness and the service.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cogbot/types.hpp"

namespace cogbot {

using Json = nlohmann::ordered_json;

enum class TraceKind {
    TickBoundary,
    Command,
    Percept,
    BeliefUpdate,
    PlanComputed,
    NoPlan,
    ActionStart,
    ActionStatus,
    Move,
    Warning,
    Error,
    RunEnd,
};

std::string_view to_string(TraceKind k);
TraceKind trace_kind_from_string(std::string_view s);

/// Phases of one tick, in execution order.
enum class Phase : int {
    Commands = 1,
    Perception = 2,
    Control = 3,
    Movement = 4,
    Emit = 5,
};

struct TraceEvent {
    Tick tick = 0;
    Phase phase = Phase::Commands;
    std::optional<NpcId> npc;
    TraceKind kind = TraceKind::TickBoundary;
    Json payload = Json::object();

    Json to_json() const;
    static TraceEvent from_json(const Json& j);

    /// One JSON object, fields in the order tick, phase, npc, kind, payload.
    std::string to_line() const { return to_json().dump(); }

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

class TraceLog {
public:
    void begin(Tick tick, Phase phase) {
        tick_ = tick;
        phase_ = phase;
    }
    void set_phase(Phase phase) { phase_ = phase; }

    void emit(std::optional<NpcId> npc, TraceKind kind, Json payload = Json::object()) {
        events_.push_back({tick_, phase_, npc, kind, std::move(payload)});
    }

    Tick tick() const { return tick_; }
    const std::vector<TraceEvent>& events() const { return events_; }

    std::vector<TraceEvent> take() {
        std::vector<TraceEvent> out;
        out.swap(events_);
        return out;
    }

private:
    Tick tick_ = 0;
    Phase phase_ = Phase::Commands;
    std::vector<TraceEvent> events_;
};

/// A TraceLog bound to one NPC.
class TraceChannel {
public:
    TraceChannel() = default;
    TraceChannel(TraceLog* log, std::optional<NpcId> npc) : log_(log), npc_(npc) {}

    void emit(TraceKind kind, Json payload = Json::object()) const {
        if (log_ != nullptr) log_->emit(npc_, kind, std::move(payload));
    }

    Tick tick() const { return log_ != nullptr ? log_->tick() : 0; }

private:
    TraceLog* log_ = nullptr;
    std::optional<NpcId> npc_;
};

std::string render_trace(const std::vector<TraceEvent>& events);
std::vector<TraceEvent> parse_trace(std::string_view text);

Json pos_json(TilePos p);
TilePos pos_from_json(const Json& j);

}  // namespace cogbot
