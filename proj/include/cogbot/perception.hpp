#pragma once

// Sight-cone perception: which objects an NPC can see, and the callbacks fired
// when that set or an in-view object's state changes.

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cogbot/trace.hpp"
#include "cogbot/world.hpp"

namespace cogbot {

struct FovConfig {
    int radius = 4;
    double half_angle = 45.0;  // degrees either side of the facing direction
    std::set<std::string> filter{"door"};

    /// Throws std::invalid_argument unless radius >= 1 and 0 < half_angle <= 180.
    void validate() const;
};

/// Replaces the set of object types the sense reports.
FovConfig register_filter(FovConfig cfg, std::set<std::string> object_types);

struct ObjectSnapshot {
    std::string id;
    std::string object_type;
    TilePos position;
    std::string state;
    friend bool operator==(const ObjectSnapshot&, const ObjectSnapshot&) = default;
};

struct ObjectEnteredFov {
    ObjectSnapshot object;
};
struct ObjectLeftFov {
    std::string id;
};
struct ObjectStatusChanged {
    std::string id;
    std::string object_type;
    std::string state;
};
struct EventNotification {
    std::string name;
    Json payload = Json::object();
};

using PerceptEvent = std::variant<ObjectEnteredFov, ObjectLeftFov, ObjectStatusChanged, EventNotification>;

Json percept_json(const PerceptEvent& ev);

/// Object id -> state last reported to the controller.
using VisibleSet = std::map<std::string, std::string>;

struct SweepResult {
    VisibleSet visible;
    std::vector<PerceptEvent> events;
};

/// Open line from `from` to `to`: no intermediate tile on the Bresenham line is a
/// wall or a closed door. The endpoints never block.
bool line_of_sight(const WorldState& world, TilePos from, TilePos to);

/// Radius (Euclidean, tile centers), cone and line-of-sight test for one tile.
bool in_sight(const WorldState& world, const NpcPose& pose, const FovConfig& cfg, TilePos target);

/// Every in-bounds tile that passes in_sight, row-major.
std::vector<TilePos> visible_tiles(const WorldState& world, const NpcPose& pose, const FovConfig& cfg);

/// Left events first, then Entered, then StatusChanged; each group in id order.
SweepResult perception_sweep(const WorldState& world, NpcId npc, const FovConfig& cfg, const VisibleSet& previous);

class MonitorCondition {
public:
    virtual ~MonitorCondition() = default;
    virtual std::vector<EventNotification> check(const WorldState& world, NpcId npc,
                                                 std::span<const StateChangeEvent> changes) = 0;
};

/// Raises "world.door_changed" for every ground-truth door change, in or out of view.
/// Only the omniscient baseline registers it.
class DoorChangeMonitor final : public MonitorCondition {
public:
    std::vector<EventNotification> check(const WorldState& world, NpcId npc,
                                         std::span<const StateChangeEvent> changes) override;
};

class Perception {
public:
    explicit Perception(std::vector<FovConfig> senses = {FovConfig{}});

    void add_condition(std::unique_ptr<MonitorCondition> condition);

    /// Runs every sense in order, then every condition, and returns the merged events.
    std::vector<PerceptEvent> sweep(const WorldState& world, NpcId npc, std::span<const StateChangeEvent> changes);

    const std::vector<FovConfig>& senses() const { return senses_; }
    const VisibleSet& visible(std::size_t sense = 0) const { return visible_.at(sense); }

private:
    std::vector<FovConfig> senses_;
    std::vector<VisibleSet> visible_;
    std::vector<std::unique_ptr<MonitorCondition>> conditions_;
};

}  // namespace cogbot
