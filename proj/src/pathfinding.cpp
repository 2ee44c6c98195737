#include "cogbot/pathfinding.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

namespace cogbot {

bool PassabilityPolicy::passable(const WorldState& world, TilePos p) const {
    if (!world.in_bounds(p)) return false;
    const TileKind& t = world.tile_at(p);
    if (is_floor(t)) return true;
    const auto* d = as_door(t);
    if (d == nullptr) return false;
    switch (source_) {
        case Source::GroundTruth: return world.door(d->door).state == DoorState::Open;
        case Source::IgnoreDoors: return true;
        case Source::Beliefs: return beliefs_->knows(d->door) && beliefs_->believed_open(d->door);
    }
    return false;
}

std::optional<Path> astar(const WorldState& world, TilePos start, TilePos goal, const PassabilityPolicy& policy) {
    if (!world.in_bounds(goal)) {
        throw Error(Errc::OutOfBounds, "goal (" + std::to_string(goal.row) + "," + std::to_string(goal.col) + ")");
    }
    if (!policy.passable(world, start)) {
        throw Error(Errc::StartBlocked, "start (" + std::to_string(start.row) + "," + std::to_string(start.col) + ")");
    }
    if (start == goal) return Path{{start}};
    if (!policy.passable(world, goal)) return std::nullopt;

    const int w = world.width();
    const auto n = static_cast<std::size_t>(w * world.height());
    auto idx = [w](TilePos p) { return static_cast<std::size_t>(p.row * w + p.col); };

    constexpr int kUnseen = std::numeric_limits<int>::max();
    std::vector<int> g(n, kUnseen);
    std::vector<TilePos> parent(n);
    std::vector<bool> closed(n, false);

    // (f, h, row, col); std::greater turns the max-heap into a min-heap on that order.
    using Entry = std::tuple<int, int, int, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

    g[idx(start)] = 0;
    const int h0 = manhattan(start, goal);
    open.emplace(h0, h0, start.row, start.col);

    while (!open.empty()) {
        const auto [f, h, row, col] = open.top();
        open.pop();
        const TilePos cur{row, col};
        if (closed[idx(cur)]) continue;
        closed[idx(cur)] = true;
        if (cur == goal) {
            Path path;
            for (TilePos p = goal; p != start; p = parent[idx(p)]) path.tiles.push_back(p);
            path.tiles.push_back(start);
            std::reverse(path.tiles.begin(), path.tiles.end());
            return path;
        }
        const int gc = g[idx(cur)];
        for (Direction dir : kAllDirections) {
            const TilePos next = offset(cur, dir);
            if (!policy.passable(world, next) || closed[idx(next)]) continue;
            if (gc + 1 < g[idx(next)]) {
                g[idx(next)] = gc + 1;
                parent[idx(next)] = cur;
                const int hn = manhattan(next, goal);
                open.emplace(gc + 1 + hn, hn, next.row, next.col);
            }
        }
    }
    return std::nullopt;
}

bool path_is_valid(const WorldState& world, const Path& path, const PassabilityPolicy& policy) {
    if (path.tiles.empty()) return false;
    for (std::size_t i = 0; i < path.tiles.size(); ++i) {
        if (!policy.passable(world, path.tiles[i])) return false;
        if (i > 0 && !adjacent4(path.tiles[i - 1], path.tiles[i])) return false;
    }
    return true;
}

std::optional<Path> route_from(const WorldState& world, TilePos start, TilePos goal, const PassabilityPolicy& policy) {
    if (policy.passable(world, start)) return astar(world, start, goal, policy);
    if (start == goal) return Path{{start}};
    std::optional<Path> best;
    for (Direction dir : kAllDirections) {
        const TilePos next = offset(start, dir);
        if (!policy.passable(world, next)) continue;
        auto sub = astar(world, next, goal, policy);
        if (sub && (!best || sub->cost() + 1 < best->cost())) {
            sub->tiles.insert(sub->tiles.begin(), start);
            best = std::move(sub);
        }
    }
    return best;
}

std::vector<DoorId> doors_on(const WorldState& world, const std::vector<TilePos>& tiles) {
    std::vector<DoorId> out;
    for (TilePos p : tiles) {
        if (!world.in_bounds(p)) continue;
        if (const auto* d = as_door(world.tile_at(p))) {
            if (out.empty() || out.back() != d->door) out.push_back(d->door);
        }
    }
    return out;
}

}  // namespace cogbot
