#pragma once

// Area decomposition by connected-component labeling, and the door graph over areas.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cogbot/world.hpp"

namespace cogbot {

struct AreaId {
    int value = 0;
    friend auto operator<=>(const AreaId&, const AreaId&) = default;
};

struct AreaInfo {
    AreaId id;
    int tile_count = 0;
    friend bool operator==(const AreaInfo&, const AreaInfo&) = default;
};

/// A door and the two areas it joins; `first` < `second`.
struct Waypoint {
    DoorId door;
    TilePos position;
    AreaId first;
    AreaId second;
    friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

class AreaDecomposition {
public:
    int width() const { return width_; }
    int height() const { return height_; }

    /// Floor tiles only; doors and walls are unlabeled. Throws Errc::OutOfBounds.
    std::optional<AreaId> area_of(TilePos p) const;

    const std::vector<AreaInfo>& areas() const { return areas_; }
    const std::vector<Waypoint>& waypoints() const { return waypoints_; }
    const std::map<char, TilePos>& points_of_interest() const { return pois_; }

    const Waypoint& waypoint(DoorId door) const;

    /// The area across `door` from `from`.
    AreaId other_side(DoorId door, AreaId from) const;

    /// Labeled grid: area label mod 10, 'D' for doors, '#' for walls, one row per line.
    std::string dump() const;

    friend bool operator==(const AreaDecomposition&, const AreaDecomposition&) = default;

private:
    friend AreaDecomposition decompose_areas(const WorldState& world);

    int width_ = 0;
    int height_ = 0;
    std::vector<int> labels_;  // 0 = unlabeled
    std::vector<bool> door_mask_;
    std::vector<AreaInfo> areas_;
    std::vector<Waypoint> waypoints_;
    std::map<char, TilePos> pois_;
};

/// Two-pass labeling with union-find under 4-connectivity. Doors are always boundaries,
/// so the result does not depend on door state. Throws Errc::MalformedDoor.
AreaDecomposition decompose_areas(const WorldState& world);

struct AreaEdge {
    DoorId door;
    AreaId a;
    AreaId b;
    friend bool operator==(const AreaEdge&, const AreaEdge&) = default;
};

class AreaGraph {
public:
    const std::vector<AreaId>& nodes() const { return nodes_; }
    const std::vector<AreaEdge>& edges() const { return edges_; }
    bool has_node(AreaId id) const;

    /// (door, neighbor) pairs ordered by door id; parallel edges appear separately.
    const std::vector<std::pair<DoorId, AreaId>>& neighbors(AreaId id) const;

private:
    friend AreaGraph build_area_graph(const AreaDecomposition& decomp);

    std::vector<AreaId> nodes_;
    std::vector<AreaEdge> edges_;
    std::map<AreaId, std::vector<std::pair<DoorId, AreaId>>> adjacency_;
};

AreaGraph build_area_graph(const AreaDecomposition& decomp);

/// Static map knowledge computed once per simulation.
struct Topology {
    AreaDecomposition decomposition;
    AreaGraph graph;

    static Topology of(const WorldState& world) {
        AreaDecomposition d = decompose_areas(world);
        AreaGraph g = build_area_graph(d);
        return {std::move(d), std::move(g)};
    }
};

}  // namespace cogbot
