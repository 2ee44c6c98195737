#pragma once

// Tile-level A* with a pluggable door-state source.

#include <optional>
#include <vector>

#include "cogbot/belief.hpp"
#include "cogbot/world.hpp"

namespace cogbot {

class PassabilityPolicy {
public:
    enum class Source { GroundTruth, Beliefs, IgnoreDoors };

    static PassabilityPolicy ground_truth() { return PassabilityPolicy(Source::GroundTruth, nullptr); }
    static PassabilityPolicy ignore_doors() { return PassabilityPolicy(Source::IgnoreDoors, nullptr); }
    /// `beliefs` must outlive the policy.
    static PassabilityPolicy beliefs(const BeliefState& beliefs) {
        return PassabilityPolicy(Source::Beliefs, &beliefs);
    }

    Source source() const { return source_; }

    /// Walls and out-of-bounds tiles are impassable under every source.
    bool passable(const WorldState& world, TilePos p) const;

private:
    PassabilityPolicy(Source s, const BeliefState* b) : source_(s), beliefs_(b) {}

    Source source_;
    const BeliefState* beliefs_;
};

struct Path {
    std::vector<TilePos> tiles;

    int cost() const { return tiles.empty() ? 0 : static_cast<int>(tiles.size()) - 1; }
    friend bool operator==(const Path&, const Path&) = default;
};

/// Minimum-cost 4-connected path, unit costs, Manhattan heuristic. The open list is
/// ordered by (f, h, row, col). nullopt means no path. Throws Errc::StartBlocked
/// when `start` is impassable and Errc::OutOfBounds when `goal` is off the map.
std::optional<Path> astar(const WorldState& world, TilePos start, TilePos goal, const PassabilityPolicy& policy);

bool path_is_valid(const WorldState& world, const Path& path, const PassabilityPolicy& policy);

/// Like astar, but an impassable start (an NPC standing in a doorway that closed)
/// is allowed: the route first steps onto the best passable neighbor.
std::optional<Path> route_from(const WorldState& world, TilePos start, TilePos goal, const PassabilityPolicy& policy);

/// Door ids in the order a path crosses them.
std::vector<DoorId> doors_on(const WorldState& world, const std::vector<TilePos>& tiles);

}  // namespace cogbot
