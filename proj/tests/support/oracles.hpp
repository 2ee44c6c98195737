#pragma once

// Independent reference implementations used to check the library. Nothing here
// calls into pathfinding or topology.

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cogbot/world.hpp"

namespace oracle {

using cogbot::DoorId;
using cogbot::TilePos;
using cogbot::WorldState;

enum class Doors { GroundTruth, Ignore, OpenSet };

struct Passability {
    Doors mode = Doors::GroundTruth;
    std::map<DoorId, bool> open;  // OpenSet only: doors missing from the map count as closed

    bool operator()(const WorldState& w, TilePos p) const;
};

/// Breadth-first distance from `start` to `goal`, or nullopt.
std::optional<int> bfs_distance(const WorldState& w, TilePos start, TilePos goal, const Passability& pass);

/// Floor labels by flood fill started from each unlabeled floor tile in row-major
/// order; 0 for walls and doors. Door tiles are always boundaries.
std::vector<int> flood_fill_labels(const WorldState& w);

/// The distinct areas adjacent to each door, scanning every door tile's 4 neighbors.
std::map<DoorId, std::vector<int>> door_adjacency(const WorldState& w, const std::vector<int>& labels);

struct MapOptions {
    int min_height = 5, max_height = 12;
    int min_width = 5, max_width = 14;
    double wall_density = 0.25;
    int max_doors = 6;
    double open_probability = 0.5;
    int npcs = 1;
};

/// Random valid map text: bordered, at least one NPC marker, every door joins
/// exactly two flood-fill areas. Door headers are drawn with `open_probability`.
std::string random_map(std::mt19937& rng, const MapOptions& opts = {});

/// Every in-bounds floor tile, row-major.
std::vector<TilePos> floor_tiles(const WorldState& w);

}  // namespace oracle
