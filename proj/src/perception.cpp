#include "cogbot/perception.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cogbot {

namespace {

std::pair<int, int> facing_vector(Direction d) {
    switch (d) {
        case Direction::N: return {-1, 0};
        case Direction::E: return {0, 1};
        case Direction::S: return {1, 0};
        case Direction::W: return {0, -1};
    }
    return {0, 0};
}

bool blocks_sight(const WorldState& world, TilePos p) {
    const TileKind& t = world.tile_at(p);
    if (is_wall(t)) return true;
    if (const auto* d = as_door(t)) return world.door(d->door).state == DoorState::Closed;
    return false;
}

}  // namespace

void FovConfig::validate() const {
    if (radius < 1) throw std::invalid_argument("fov radius must be >= 1");
    if (!(half_angle > 0.0 && half_angle <= 180.0)) {
        throw std::invalid_argument("fov half angle must be in (0, 180]");
    }
}

FovConfig register_filter(FovConfig cfg, std::set<std::string> object_types) {
    cfg.filter = std::move(object_types);
    return cfg;
}

Json percept_json(const PerceptEvent& ev) {
    return std::visit(
        [](const auto& e) -> Json {
            using T = std::decay_t<decltype(e)>;
            Json j;
            if constexpr (std::is_same_v<T, ObjectEnteredFov>) {
                j["event"] = "entered";
                j["object"] = e.object.id;
                j["type"] = e.object.object_type;
                j["state"] = e.object.state;
                j["pos"] = pos_json(e.object.position);
            } else if constexpr (std::is_same_v<T, ObjectLeftFov>) {
                j["event"] = "left";
                j["object"] = e.id;
            } else if constexpr (std::is_same_v<T, ObjectStatusChanged>) {
                j["event"] = "status";
                j["object"] = e.id;
                j["type"] = e.object_type;
                j["state"] = e.state;
            } else {
                j["event"] = "notify";
                j["name"] = e.name;
                j["payload"] = e.payload;
            }
            return j;
        },
        ev);
}

bool line_of_sight(const WorldState& world, TilePos from, TilePos to) {
    int r = from.row;
    int c = from.col;
    const int dc = std::abs(to.col - from.col);
    const int dr = -std::abs(to.row - from.row);
    const int sc = from.col < to.col ? 1 : -1;
    const int sr = from.row < to.row ? 1 : -1;
    int err = dc + dr;
    while (true) {
        if (r == to.row && c == to.col) return true;
        const int e2 = 2 * err;
        if (e2 >= dr) {
            err += dr;
            c += sc;
        }
        if (e2 <= dc) {
            err += dc;
            r += sr;
        }
        if (r == to.row && c == to.col) return true;
        if (blocks_sight(world, {r, c})) return false;
    }
}

bool in_sight(const WorldState& world, const NpcPose& pose, const FovConfig& cfg, TilePos target) {
    if (!world.in_bounds(target)) return false;
    const int dr = target.row - pose.position.row;
    const int dc = target.col - pose.position.col;
    const int dist2 = dr * dr + dc * dc;
    if (dist2 == 0) return true;
    if (dist2 > cfg.radius * cfg.radius) return false;
    const auto [fr, fc] = facing_vector(pose.facing);
    const double cosine = static_cast<double>(dr * fr + dc * fc) / std::sqrt(static_cast<double>(dist2));
    const double angle = std::acos(std::clamp(cosine, -1.0, 1.0)) * 180.0 / std::numbers::pi;
    if (angle > cfg.half_angle + 1e-9) return false;
    return line_of_sight(world, pose.position, target);
}

std::vector<TilePos> visible_tiles(const WorldState& world, const NpcPose& pose, const FovConfig& cfg) {
    std::vector<TilePos> out;
    for (int r = 0; r < world.height(); ++r) {
        for (int c = 0; c < world.width(); ++c) {
            if (in_sight(world, pose, cfg, {r, c})) out.push_back({r, c});
        }
    }
    return out;
}

SweepResult perception_sweep(const WorldState& world, NpcId npc, const FovConfig& cfg, const VisibleSet& previous) {
    const NpcPose& pose = world.npc(npc);
    const std::string self = npc.str();

    SweepResult result;
    std::vector<ObjectSnapshot> seen;
    for (const WorldObject& obj : world.objects()) {
        if (obj.id == self || !cfg.filter.contains(obj.object_type)) continue;
        if (!in_sight(world, pose, cfg, obj.position)) continue;
        seen.push_back({obj.id, obj.object_type, obj.position, obj.state});
        result.visible.emplace(obj.id, obj.state);
    }

    for (const auto& [id, state] : previous) {
        if (!result.visible.contains(id)) result.events.push_back(ObjectLeftFov{id});
    }
    for (const auto& snap : seen) {
        if (!previous.contains(snap.id)) result.events.push_back(ObjectEnteredFov{snap});
    }
    for (const auto& snap : seen) {
        auto it = previous.find(snap.id);
        if (it != previous.end() && it->second != snap.state) {
            result.events.push_back(ObjectStatusChanged{snap.id, snap.object_type, snap.state});
        }
    }
    return result;
}

std::vector<EventNotification> DoorChangeMonitor::check(const WorldState&, NpcId,
                                                        std::span<const StateChangeEvent> changes) {
    std::vector<EventNotification> out;
    for (const auto& ch : changes) {
        Json payload;
        payload["door"] = ch.door.str();
        payload["state"] = std::string(to_string(ch.current));
        out.push_back({"world.door_changed", std::move(payload)});
    }
    return out;
}

Perception::Perception(std::vector<FovConfig> senses) : senses_(std::move(senses)), visible_(senses_.size()) {
    for (const auto& s : senses_) s.validate();
}

void Perception::add_condition(std::unique_ptr<MonitorCondition> condition) {
    conditions_.push_back(std::move(condition));
}

std::vector<PerceptEvent> Perception::sweep(const WorldState& world, NpcId npc,
                                            std::span<const StateChangeEvent> changes) {
    std::vector<PerceptEvent> events;
    for (std::size_t i = 0; i < senses_.size(); ++i) {
        SweepResult r = perception_sweep(world, npc, senses_[i], visible_[i]);
        visible_[i] = std::move(r.visible);
        for (auto& ev : r.events) events.push_back(std::move(ev));
    }
    for (auto& cond : conditions_) {
        for (auto& note : cond->check(world, npc, changes)) events.emplace_back(std::move(note));
    }
    return events;
}

}  // namespace cogbot
