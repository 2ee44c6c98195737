#pragma once

// Ground-truth grid world: terrain, doors, NPC poses and movement legality.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cogbot/types.hpp"

namespace cogbot {

struct WallTile {
    friend bool operator==(const WallTile&, const WallTile&) = default;
};
struct FloorTile {
    friend bool operator==(const FloorTile&, const FloorTile&) = default;
};
struct DoorTile {
    DoorId door;
    friend bool operator==(const DoorTile&, const DoorTile&) = default;
};

using TileKind = std::variant<WallTile, FloorTile, DoorTile>;

inline bool is_wall(const TileKind& t) { return std::holds_alternative<WallTile>(t); }
inline bool is_floor(const TileKind& t) { return std::holds_alternative<FloorTile>(t); }
inline const DoorTile* as_door(const TileKind& t) { return std::get_if<DoorTile>(&t); }

struct Door {
    DoorId id;
    TilePos position;
    DoorState state = DoorState::Closed;

    friend bool operator==(const Door&, const Door&) = default;
};

/// Generic object view handed to perception. Doors have type "door", NPCs "npc".
struct WorldObject {
    std::string id;
    std::string object_type;
    TilePos position;
    bool is_static = false;
    std::string state;

    friend bool operator==(const WorldObject&, const WorldObject&) = default;
};

struct NpcPose {
    TilePos position;
    Direction facing = Direction::N;

    friend bool operator==(const NpcPose&, const NpcPose&) = default;
};

struct StateChangeEvent {
    DoorId door;
    DoorState previous;
    DoorState current;

    friend bool operator==(const StateChangeEvent&, const StateChangeEvent&) = default;
};

enum class MoveOutcome { Moved, Blocked };

class WorldState {
public:
    WorldState() = default;

    int width() const { return width_; }
    int height() const { return height_; }
    Tick tick() const { return tick_; }

    bool in_bounds(TilePos p) const {
        return p.row >= 0 && p.col >= 0 && p.row < height_ && p.col < width_;
    }

    /// Throws Errc::OutOfBounds.
    const TileKind& tile_at(TilePos p) const;

    /// In bounds and either floor or a door that is open in ground truth.
    bool is_passable(TilePos p) const;

    const std::map<DoorId, Door>& doors() const { return doors_; }
    bool has_door(DoorId id) const { return doors_.contains(id); }
    const Door& door(DoorId id) const;

    /// Returns nullopt when the door already has `state`.
    std::optional<StateChangeEvent> set_door_state(DoorId id, DoorState state);

    const std::map<NpcId, NpcPose>& npcs() const { return npcs_; }
    bool has_npc(NpcId id) const { return npcs_.contains(id); }
    const NpcPose& npc(NpcId id) const;

    /// Facing always becomes `dir`; position changes only onto a passable tile.
    MoveOutcome step_npc(NpcId id, Direction dir);

    const std::map<char, TilePos>& points_of_interest() const { return pois_; }

    /// Doors followed by NPCs, each group in id order.
    std::vector<WorldObject> objects() const;

    void advance_clock() { ++tick_; }

    /// Terrain glyphs only (no markers), row-major, used for snapshots.
    std::string terrain_glyphs() const;

    friend bool operator==(const WorldState&, const WorldState&) = default;

private:
    friend WorldState parse_map(std::string_view text);

    std::size_t index(TilePos p) const {
        return static_cast<std::size_t>(p.row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(p.col);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<TileKind> tiles_;
    std::map<DoorId, Door> doors_;
    std::map<NpcId, NpcPose> npcs_;
    std::map<char, TilePos> pois_;
    Tick tick_ = 0;
};

/// Parses the ASCII map format. '#' wall, '.' floor, 'a'-'z' door, '@' NPC start,
/// 'A'-'Z' point of interest; leading "!open <door>" lines open doors initially.
WorldState parse_map(std::string_view text);

WorldState load_map_file(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace cogbot
