#include "cogbot/topology.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cogbot {

namespace {

class DisjointSet {
public:
    int make() {
        parent_.push_back(static_cast<int>(parent_.size()));
        return parent_.back();
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
    }

private:
    std::vector<int> parent_;
};

}  // namespace

std::optional<AreaId> AreaDecomposition::area_of(TilePos p) const {
    if (p.row < 0 || p.col < 0 || p.row >= height_ || p.col >= width_) {
        throw Error(Errc::OutOfBounds, "area_of(" + std::to_string(p.row) + "," + std::to_string(p.col) + ")");
    }
    const int label = labels_[static_cast<std::size_t>(p.row * width_ + p.col)];
    if (label == 0) return std::nullopt;
    return AreaId{label};
}

const Waypoint& AreaDecomposition::waypoint(DoorId door) const {
    for (const auto& w : waypoints_) {
        if (w.door == door) return w;
    }
    throw Error(Errc::UnknownDoor, "no waypoint for door '" + door.str() + "'");
}

AreaId AreaDecomposition::other_side(DoorId door, AreaId from) const {
    const Waypoint& w = waypoint(door);
    if (w.first == from) return w.second;
    if (w.second == from) return w.first;
    throw Error(Errc::UnknownArea, "door '" + door.str() + "' does not touch area " + std::to_string(from.value));
}

std::string AreaDecomposition::dump() const {
    std::string out;
    for (int r = 0; r < height_; ++r) {
        for (int c = 0; c < width_; ++c) {
            const auto i = static_cast<std::size_t>(r * width_ + c);
            if (labels_[i] > 0) {
                out.push_back(static_cast<char>('0' + labels_[i] % 10));
            } else if (door_mask_[i]) {
                out.push_back('D');
            } else {
                out.push_back('#');
            }
        }
        out.push_back('\n');
    }
    return out;
}

AreaDecomposition decompose_areas(const WorldState& world) {
    const int w = world.width();
    const int h = world.height();
    const auto n = static_cast<std::size_t>(w * h);

    AreaDecomposition d;
    d.width_ = w;
    d.height_ = h;
    d.labels_.assign(n, 0);
    d.door_mask_.assign(n, false);
    d.pois_ = world.points_of_interest();

    // First pass: provisional labels from the north and west neighbors.
    std::vector<int> provisional(n, -1);
    DisjointSet sets;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const auto i = static_cast<std::size_t>(r * w + c);
            const TileKind& t = world.tile_at({r, c});
            if (as_door(t)) d.door_mask_[i] = true;
            if (!is_floor(t)) continue;
            const int north = r > 0 ? provisional[i - static_cast<std::size_t>(w)] : -1;
            const int west = c > 0 ? provisional[i - 1] : -1;
            if (north < 0 && west < 0) {
                provisional[i] = sets.make();
            } else if (north >= 0 && west >= 0) {
                provisional[i] = std::min(north, west);
                sets.unite(north, west);
            } else {
                provisional[i] = std::max(north, west);
            }
        }
    }

    // Second pass: resolve equivalences, numbering roots in row-major first-encounter order.
    std::map<int, int> final_label;
    std::map<int, int> counts;
    for (std::size_t i = 0; i < n; ++i) {
        if (provisional[i] < 0) continue;
        const int root = sets.find(provisional[i]);
        auto [it, inserted] = final_label.try_emplace(root, static_cast<int>(final_label.size()) + 1);
        d.labels_[i] = it->second;
        ++counts[it->second];
    }
    for (const auto& [label, count] : counts) d.areas_.push_back({AreaId{label}, count});

    for (const auto& [id, door] : world.doors()) {
        std::set<int> touching;
        for (Direction dir : kAllDirections) {
            const TilePos q = offset(door.position, dir);
            if (!world.in_bounds(q)) continue;
            const int label = d.labels_[static_cast<std::size_t>(q.row * w + q.col)];
            if (label > 0) touching.insert(label);
        }
        if (touching.size() != 2) {
            throw Error(Errc::MalformedDoor, "door '" + id.str() + "' touches " +
                                                 std::to_string(touching.size()) +
                                                 " distinct areas, expected 2");
        }
        d.waypoints_.push_back({id, door.position, AreaId{*touching.begin()}, AreaId{*touching.rbegin()}});
    }
    return d;
}

bool AreaGraph::has_node(AreaId id) const { return adjacency_.contains(id); }

const std::vector<std::pair<DoorId, AreaId>>& AreaGraph::neighbors(AreaId id) const {
    auto it = adjacency_.find(id);
    if (it == adjacency_.end()) throw Error(Errc::UnknownArea, "area " + std::to_string(id.value));
    return it->second;
}

AreaGraph build_area_graph(const AreaDecomposition& decomp) {
    AreaGraph g;
    for (const auto& a : decomp.areas()) {
        g.nodes_.push_back(a.id);
        g.adjacency_[a.id];
    }
    for (const auto& wp : decomp.waypoints()) {
        g.edges_.push_back({wp.door, wp.first, wp.second});
        g.adjacency_[wp.first].emplace_back(wp.door, wp.second);
        g.adjacency_[wp.second].emplace_back(wp.door, wp.first);
    }
    for (auto& [id, list] : g.adjacency_) std::sort(list.begin(), list.end());
    return g;
}

}  // namespace cogbot
