#include "cogbot/world.hpp"

#include <fstream>
#include <sstream>

namespace cogbot {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (end == text.size()) break;
        start = end + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::string pos_str(TilePos p) {
    return "(" + std::to_string(p.row) + "," + std::to_string(p.col) + ")";
}

}  // namespace

const TileKind& WorldState::tile_at(TilePos p) const {
    if (!in_bounds(p)) throw Error(Errc::OutOfBounds, "tile " + pos_str(p));
    return tiles_[index(p)];
}

bool WorldState::is_passable(TilePos p) const {
    if (!in_bounds(p)) return false;
    const TileKind& t = tiles_[index(p)];
    if (is_floor(t)) return true;
    if (const auto* d = as_door(t)) return doors_.at(d->door).state == DoorState::Open;
    return false;
}

const Door& WorldState::door(DoorId id) const {
    auto it = doors_.find(id);
    if (it == doors_.end()) throw Error(Errc::UnknownDoor, "door '" + id.str() + "'");
    return it->second;
}

std::optional<StateChangeEvent> WorldState::set_door_state(DoorId id, DoorState state) {
    auto it = doors_.find(id);
    if (it == doors_.end()) throw Error(Errc::UnknownDoor, "door '" + id.str() + "'");
    if (it->second.state == state) return std::nullopt;
    StateChangeEvent ev{id, it->second.state, state};
    it->second.state = state;
    return ev;
}

const NpcPose& WorldState::npc(NpcId id) const {
    auto it = npcs_.find(id);
    if (it == npcs_.end()) throw Error(Errc::UnknownNpc, id.str());
    return it->second;
}

MoveOutcome WorldState::step_npc(NpcId id, Direction dir) {
    auto it = npcs_.find(id);
    if (it == npcs_.end()) throw Error(Errc::UnknownNpc, id.str());
    NpcPose& pose = it->second;
    pose.facing = dir;
    const TilePos target = offset(pose.position, dir);
    if (!is_passable(target)) return MoveOutcome::Blocked;
    pose.position = target;
    return MoveOutcome::Moved;
}

std::vector<WorldObject> WorldState::objects() const {
    std::vector<WorldObject> out;
    out.reserve(doors_.size() + npcs_.size());
    for (const auto& [id, d] : doors_) {
        out.push_back({id.str(), "door", d.position, false, std::string(to_string(d.state))});
    }
    for (const auto& [id, pose] : npcs_) {
        out.push_back({id.str(), "npc", pose.position, false, ""});
    }
    return out;
}

std::string WorldState::terrain_glyphs() const {
    std::string out;
    out.reserve(tiles_.size());
    for (const TileKind& t : tiles_) {
        if (is_wall(t)) {
            out.push_back('#');
        } else if (const auto* d = as_door(t)) {
            out.push_back(d->door.glyph);
        } else {
            out.push_back('.');
        }
    }
    return out;
}

WorldState parse_map(std::string_view text) {
    const auto lines = split_lines(text);
    std::size_t first_grid = 0;
    std::vector<DoorId> open_directives;
    for (; first_grid < lines.size(); ++first_grid) {
        std::string_view line = lines[first_grid];
        if (line.empty() || line.front() != '!') break;
        std::string_view rest = trim(line.substr(1));
        if (!rest.starts_with("open")) {
            throw Error(Errc::BadDirective, "unknown directive '" + std::string(line) + "'");
        }
        std::string_view arg = trim(rest.substr(4));
        if (arg.size() != 1 || arg[0] < 'a' || arg[0] > 'z') {
            throw Error(Errc::BadDirective, "'!open' needs one door glyph: '" + std::string(line) + "'");
        }
        open_directives.push_back(DoorId{arg[0]});
    }

    const std::size_t rows = lines.size() - first_grid;
    if (rows < 3) throw Error(Errc::RaggedMap, "map needs at least 3 rows");
    const std::size_t width = lines[first_grid].size();
    if (width < 3) throw Error(Errc::RaggedMap, "map lines must be at least 3 wide");

    WorldState w;
    w.width_ = static_cast<int>(width);
    w.height_ = static_cast<int>(rows);
    w.tiles_.reserve(rows * width);
    int next_npc = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        std::string_view line = lines[first_grid + r];
        if (line.size() != width) {
            throw Error(Errc::RaggedMap, "line " + std::to_string(r) + " has length " +
                                             std::to_string(line.size()) + ", expected " +
                                             std::to_string(width));
        }
        for (std::size_t c = 0; c < width; ++c) {
            const char g = line[c];
            const TilePos p{static_cast<int>(r), static_cast<int>(c)};
            if (g == '#') {
                w.tiles_.push_back(WallTile{});
            } else if (g == '.') {
                w.tiles_.push_back(FloorTile{});
            } else if (g >= 'a' && g <= 'z') {
                const DoorId id{g};
                if (w.doors_.contains(id)) throw Error(Errc::DuplicateDoorId, "door '" + id.str() + "'");
                w.doors_.emplace(id, Door{id, p, DoorState::Closed});
                w.tiles_.push_back(DoorTile{id});
            } else if (g == '@') {
                w.npcs_.emplace(NpcId{next_npc++}, NpcPose{p, Direction::N});
                w.tiles_.push_back(FloorTile{});
            } else if (g >= 'A' && g <= 'Z') {
                if (w.pois_.contains(g)) {
                    throw Error(Errc::DuplicatePoi, "point of interest '" + std::string(1, g) + "'");
                }
                w.pois_.emplace(g, p);
                w.tiles_.push_back(FloorTile{});
            } else {
                throw Error(Errc::UnknownGlyph, "glyph '" + std::string(1, g) + "' at " + pos_str(p));
            }
        }
    }
    if (w.npcs_.empty()) throw Error(Errc::NoNpcStart, "map has no '@' marker");
    for (DoorId id : open_directives) {
        auto it = w.doors_.find(id);
        if (it == w.doors_.end()) throw Error(Errc::UnknownDoor, "'!open " + id.str() + "'");
        it->second.state = DoorState::Open;
    }
    return w;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

WorldState load_map_file(const std::string& path) { return parse_map(read_text_file(path)); }

}  // namespace cogbot
