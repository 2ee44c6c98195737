#pragma once

// Wire messages between a live simulation and its clients, and the
// transport-independent session that owns the command queue.

#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cogbot/simulation.hpp"

namespace cogbot {

namespace wire {
inline constexpr std::string_view kSnapshot = "snapshot";
inline constexpr std::string_view kTrace = "trace";
inline constexpr std::string_view kAck = "ack";
inline constexpr std::string_view kReject = "reject";
inline constexpr std::string_view kToggleDoor = "cmd.toggle_door";
inline constexpr std::string_view kMoveTo = "cmd.move_to";
inline constexpr std::string_view kPause = "cmd.pause";
inline constexpr std::string_view kResume = "cmd.resume";
inline constexpr std::string_view kTickRate = "cmd.tick_rate";
inline constexpr std::string_view kHello = "hello";
}  // namespace wire

struct BeliefRow {
    DoorId door;
    DoorState state = DoorState::Closed;
    std::optional<Tick> last_observed;
    friend bool operator==(const BeliefRow&, const BeliefRow&) = default;
};

struct NpcView {
    NpcId id;
    NpcPose pose;
    int fov_radius = 0;
    double fov_half_angle = 0.0;
    std::vector<BeliefRow> beliefs;
    Json plan;  // null when the NPC has no plan
    std::vector<TilePos> visible;  // first sense, row-major
    friend bool operator==(const NpcView&, const NpcView&) = default;
};

struct TileRun {
    char glyph = '#';
    int count = 0;
    friend bool operator==(const TileRun&, const TileRun&) = default;
};

struct SnapshotMessage {
    Tick tick = 0;
    int width = 0;
    int height = 0;
    std::vector<TileRun> tiles;  // row-major run-length encoding of terrain glyphs
    std::vector<std::pair<DoorId, DoorState>> doors;  // ground truth
    std::vector<NpcView> npcs;
    friend bool operator==(const SnapshotMessage&, const SnapshotMessage&) = default;
};

std::vector<TileRun> encode_runs(const std::string& glyphs);
std::string decode_runs(const std::vector<TileRun>& runs);

/// Baselines without a belief model report the door states they plan with:
/// ground truth for omniscient, all open for oblivious.
SnapshotMessage snapshot(const Simulation& sim);

Json encode(const SnapshotMessage& s);
/// Throws Errc::ParseError on a malformed message.
SnapshotMessage decode_snapshot(const Json& j);

struct ToggleDoor {
    DoorId door;
    friend bool operator==(const ToggleDoor&, const ToggleDoor&) = default;
};
struct MoveTo {
    NpcId npc;
    TilePos target;
    friend bool operator==(const MoveTo&, const MoveTo&) = default;
};
struct Pause {
    friend bool operator==(const Pause&, const Pause&) = default;
};
struct Resume {
    friend bool operator==(const Resume&, const Resume&) = default;
};
struct SetTickRate {
    double hz = 0.0;
    friend bool operator==(const SetTickRate&, const SetTickRate&) = default;
};

using ClientCommand = std::variant<ToggleDoor, MoveTo, Pause, Resume, SetTickRate>;

Json encode(const ClientCommand& c);
/// Throws Errc::ParseError for anything that is not a well-formed command message.
ClientCommand decode_command(const Json& j);

Json trace_message(const TraceEvent& ev);
Json ack_message(const ClientCommand& c);
Json reject_message(const std::string& reason);

class ServiceSession {
public:
    ServiceSession(WorldState world, AgentConfig config, double tick_rate = 4.0, bool paused = false);

    /// Validates against the map and queues world commands for the next tick.
    /// Pause, Resume and SetTickRate take effect immediately. Thread-safe.
    /// Returns an "ack" or "reject" message.
    Json enqueue(const ClientCommand& c);
    /// Parses a raw client message first; unparseable input is rejected.
    Json enqueue(const std::string& text);

    /// Applies the queued commands in arrival order, runs one tick and returns its
    /// trace messages followed by a snapshot. Call from the simulation thread only.
    std::vector<Json> step();

    Json hello() const;
    Json latest_snapshot() const;

    bool paused() const;
    double tick_rate() const;
    std::size_t pending() const;

    const Simulation& simulation() const { return sim_; }

private:
    std::string validate(const ClientCommand& c) const;

    const WorldState map_;  // initial world, read-only; used for validation
    Simulation sim_;
    mutable std::mutex mutex_;
    std::deque<ClientCommand> queue_;
    double tick_rate_;
    bool paused_;
    Json latest_;
};

}  // namespace cogbot
