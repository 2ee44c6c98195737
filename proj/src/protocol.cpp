#include "cogbot/protocol.hpp"

#include <cmath>

namespace cogbot {

namespace {

DoorId door_from(const Json& j) {
    const std::string s = j.get<std::string>();
    if (s.size() != 1) throw Error(Errc::ParseError, "bad door id '" + s + "'");
    return DoorId{s[0]};
}

template <typename F>
auto parse_guard(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(Errc::ParseError, e.what());
    }
}

std::vector<BeliefRow> belief_rows(const Simulation& sim, NpcId id) {
    std::vector<BeliefRow> rows;
    if (const BeliefState* b = sim.deliberator(id).beliefs()) {
        for (const auto& [door, entry] : b->entries()) rows.push_back({door, entry.state, entry.last_observed});
        return rows;
    }
    const bool truth = sim.config().deliberator == DeliberatorKind::Omniscient;
    for (const auto& [door, d] : sim.world().doors()) {
        rows.push_back({door, truth ? d.state : DoorState::Open, std::nullopt});
    }
    return rows;
}

}  // namespace

std::vector<TileRun> encode_runs(const std::string& glyphs) {
    std::vector<TileRun> runs;
    for (char c : glyphs) {
        if (!runs.empty() && runs.back().glyph == c) {
            ++runs.back().count;
        } else {
            runs.push_back({c, 1});
        }
    }
    return runs;
}

std::string decode_runs(const std::vector<TileRun>& runs) {
    std::string out;
    for (const auto& r : runs) out.append(static_cast<std::size_t>(r.count), r.glyph);
    return out;
}

SnapshotMessage snapshot(const Simulation& sim) {
    const WorldState& w = sim.world();
    SnapshotMessage s;
    s.tick = w.tick();
    s.width = w.width();
    s.height = w.height();
    s.tiles = encode_runs(w.terrain_glyphs());
    for (const auto& [id, d] : w.doors()) s.doors.emplace_back(id, d.state);
    const FovConfig& fov = sim.config().senses.front();
    for (const auto& [id, pose] : w.npcs()) {
        NpcView v;
        v.id = id;
        v.pose = pose;
        v.fov_radius = fov.radius;
        v.fov_half_angle = fov.half_angle;
        v.beliefs = belief_rows(sim, id);
        v.plan = sim.deliberator(id).plan_summary();
        v.visible = visible_tiles(w, pose, fov);
        s.npcs.push_back(std::move(v));
    }
    return s;
}

Json encode(const SnapshotMessage& s) {
    Json j;
    j["type"] = wire::kSnapshot;
    j["tick"] = s.tick;
    j["width"] = s.width;
    j["height"] = s.height;
    Json tiles = Json::array();
    for (const auto& r : s.tiles) tiles.push_back(Json::array({std::string(1, r.glyph), r.count}));
    j["tiles"] = std::move(tiles);
    Json doors = Json::array();
    for (const auto& [id, st] : s.doors) doors.push_back({{"id", id.str()}, {"state", std::string(to_string(st))}});
    j["doors"] = std::move(doors);
    Json npcs = Json::array();
    for (const auto& v : s.npcs) {
        Json n;
        n["id"] = v.id.str();
        n["position"] = pos_json(v.pose.position);
        n["facing"] = std::string(to_string(v.pose.facing));
        n["fov"] = {{"radius", v.fov_radius}, {"half_angle", v.fov_half_angle}};
        Json beliefs = Json::array();
        for (const auto& b : v.beliefs) {
            beliefs.push_back({{"door", b.door.str()},
                               {"state", std::string(to_string(b.state))},
                               {"last_observed", b.last_observed ? Json(*b.last_observed) : Json(nullptr)}});
        }
        n["beliefs"] = std::move(beliefs);
        n["plan"] = v.plan;
        Json vis = Json::array();
        for (TilePos p : v.visible) vis.push_back(pos_json(p));
        n["visible"] = std::move(vis);
        npcs.push_back(std::move(n));
    }
    j["npcs"] = std::move(npcs);
    return j;
}

SnapshotMessage decode_snapshot(const Json& j) {
    return parse_guard([&] {
        if (j.at("type") != wire::kSnapshot) throw Error(Errc::ParseError, "not a snapshot message");
        SnapshotMessage s;
        s.tick = j.at("tick").get<Tick>();
        s.width = j.at("width").get<int>();
        s.height = j.at("height").get<int>();
        for (const auto& r : j.at("tiles")) {
            const std::string g = r.at(0).get<std::string>();
            if (g.size() != 1) throw Error(Errc::ParseError, "bad tile glyph");
            s.tiles.push_back({g[0], r.at(1).get<int>()});
        }
        for (const auto& d : j.at("doors")) {
            s.doors.emplace_back(door_from(d.at("id")), door_state_from_string(d.at("state").get<std::string>()));
        }
        for (const auto& n : j.at("npcs")) {
            NpcView v;
            v.id = parse_npc_id(n.at("id").get<std::string>());
            v.pose.position = pos_from_json(n.at("position"));
            v.pose.facing = direction_from_string(n.at("facing").get<std::string>());
            v.fov_radius = n.at("fov").at("radius").get<int>();
            v.fov_half_angle = n.at("fov").at("half_angle").get<double>();
            for (const auto& b : n.at("beliefs")) {
                BeliefRow row{door_from(b.at("door")), door_state_from_string(b.at("state").get<std::string>()),
                              std::nullopt};
                if (!b.at("last_observed").is_null()) row.last_observed = b.at("last_observed").get<Tick>();
                v.beliefs.push_back(row);
            }
            v.plan = n.at("plan");
            for (const auto& p : n.at("visible")) v.visible.push_back(pos_from_json(p));
            s.npcs.push_back(std::move(v));
        }
        return s;
    });
}

Json encode(const ClientCommand& c) {
    return std::visit(
        [](const auto& cmd) -> Json {
            using T = std::decay_t<decltype(cmd)>;
            Json j;
            if constexpr (std::is_same_v<T, ToggleDoor>) {
                j["type"] = wire::kToggleDoor;
                j["door"] = cmd.door.str();
            } else if constexpr (std::is_same_v<T, MoveTo>) {
                j["type"] = wire::kMoveTo;
                j["npc"] = cmd.npc.str();
                j["target"] = pos_json(cmd.target);
            } else if constexpr (std::is_same_v<T, Pause>) {
                j["type"] = wire::kPause;
            } else if constexpr (std::is_same_v<T, Resume>) {
                j["type"] = wire::kResume;
            } else {
                j["type"] = wire::kTickRate;
                j["hz"] = cmd.hz;
            }
            return j;
        },
        c);
}

ClientCommand decode_command(const Json& j) {
    return parse_guard([&]() -> ClientCommand {
        if (!j.is_object()) throw Error(Errc::ParseError, "message is not an object");
        const std::string type = j.at("type").get<std::string>();
        if (type == wire::kToggleDoor) return ToggleDoor{door_from(j.at("door"))};
        if (type == wire::kMoveTo) return MoveTo{parse_npc_id(j.at("npc").get<std::string>()), pos_from_json(j.at("target"))};
        if (type == wire::kPause) return Pause{};
        if (type == wire::kResume) return Resume{};
        if (type == wire::kTickRate) return SetTickRate{j.at("hz").get<double>()};
        throw Error(Errc::ParseError, "unknown message type '" + type + "'");
    });
}

Json trace_message(const TraceEvent& ev) {
    Json j;
    j["type"] = wire::kTrace;
    j["event"] = ev.to_json();
    return j;
}

Json ack_message(const ClientCommand& c) {
    Json j;
    j["type"] = wire::kAck;
    j["command"] = encode(c);
    return j;
}

Json reject_message(const std::string& reason) {
    Json j;
    j["type"] = wire::kReject;
    j["reason"] = reason;
    return j;
}

ServiceSession::ServiceSession(WorldState world, AgentConfig config, double tick_rate, bool paused)
    : map_(world), sim_(std::move(world), std::move(config)), tick_rate_(tick_rate), paused_(paused) {
    if (!(tick_rate > 0.0) || !std::isfinite(tick_rate)) throw std::invalid_argument("tick rate must be positive");
    latest_ = encode(snapshot(sim_));
}

std::string ServiceSession::validate(const ClientCommand& c) const {
    return std::visit(
        [this](const auto& cmd) -> std::string {
            using T = std::decay_t<decltype(cmd)>;
            if constexpr (std::is_same_v<T, ToggleDoor>) {
                if (!map_.has_door(cmd.door)) return "unknown door";
            } else if constexpr (std::is_same_v<T, MoveTo>) {
                if (!map_.has_npc(cmd.npc)) return "unknown npc";
                if (!map_.in_bounds(cmd.target)) return "out of bounds";
                if (!is_floor(map_.tile_at(cmd.target))) return "impassable target";
            } else if constexpr (std::is_same_v<T, SetTickRate>) {
                if (!(cmd.hz > 0.0) || !std::isfinite(cmd.hz)) return "rate must be positive";
            }
            return "";
        },
        c);
}

Json ServiceSession::enqueue(const ClientCommand& c) {
    if (std::string reason = validate(c); !reason.empty()) return reject_message(reason);
    std::lock_guard lock(mutex_);
    if (std::holds_alternative<Pause>(c)) {
        paused_ = true;
    } else if (std::holds_alternative<Resume>(c)) {
        paused_ = false;
    } else if (const auto* r = std::get_if<SetTickRate>(&c)) {
        tick_rate_ = r->hz;
    } else {
        queue_.push_back(c);
    }
    return ack_message(c);
}

Json ServiceSession::enqueue(const std::string& text) {
    ClientCommand c;
    try {
        c = decode_command(Json::parse(text));
    } catch (const std::exception&) {
        return reject_message("malformed command");
    }
    return enqueue(c);
}

std::vector<Json> ServiceSession::step() {
    std::deque<ClientCommand> batch;
    {
        std::lock_guard lock(mutex_);
        batch.swap(queue_);
    }
    std::map<DoorId, DoorState> doors;
    for (const auto& [id, d] : sim_.world().doors()) doors[id] = d.state;
    std::vector<Command> commands;
    for (const ClientCommand& c : batch) {
        if (const auto* t = std::get_if<ToggleDoor>(&c)) {
            DoorState& st = doors.at(t->door);
            if (st == DoorState::Open) {
                commands.emplace_back(CloseDoor{t->door});
                st = DoorState::Closed;
            } else {
                commands.emplace_back(OpenDoor{t->door});
                st = DoorState::Open;
            }
        } else if (const auto* m = std::get_if<MoveTo>(&c)) {
            commands.emplace_back(MoveToCommand{m->npc, m->target});
        }
    }
    std::vector<Json> out;
    for (const TraceEvent& ev : sim_.advance_tick(commands)) out.push_back(trace_message(ev));
    Json snap = encode(snapshot(sim_));
    {
        std::lock_guard lock(mutex_);
        latest_ = snap;
    }
    out.push_back(std::move(snap));
    return out;
}

Json ServiceSession::hello() const {
    Json j;
    j["type"] = wire::kHello;
    j["width"] = map_.width();
    j["height"] = map_.height();
    Json tiles = Json::array();
    for (const auto& r : encode_runs(map_.terrain_glyphs())) tiles.push_back(Json::array({std::string(1, r.glyph), r.count}));
    j["tiles"] = std::move(tiles);
    Json doors = Json::array();
    for (const auto& [id, d] : map_.doors()) doors.push_back(id.str());
    j["doors"] = std::move(doors);
    Json npcs = Json::array();
    for (const auto& [id, pose] : map_.npcs()) npcs.push_back(id.str());
    j["npcs"] = std::move(npcs);
    Json pois = Json::object();
    for (const auto& [name, p] : map_.points_of_interest()) pois[std::string(1, name)] = pos_json(p);
    j["points_of_interest"] = std::move(pois);
    j["deliberator"] = std::string(to_string(sim_.config().deliberator));
    std::lock_guard lock(mutex_);
    j["paused"] = paused_;
    j["tick_rate"] = tick_rate_;
    return j;
}

Json ServiceSession::latest_snapshot() const {
    std::lock_guard lock(mutex_);
    return latest_;
}

bool ServiceSession::paused() const {
    std::lock_guard lock(mutex_);
    return paused_;
}

double ServiceSession::tick_rate() const {
    std::lock_guard lock(mutex_);
    return tick_rate_;
}

std::size_t ServiceSession::pending() const {
    std::lock_guard lock(mutex_);
    return queue_.size();
}

}  // namespace cogbot
