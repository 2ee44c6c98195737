#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cogbot {

using Tick = std::int64_t;

/// Grid coordinate, row-major from the top-left corner of the ASCII map.
struct TilePos {
    int row = 0;
    int col = 0;

    friend auto operator<=>(const TilePos&, const TilePos&) = default;
};

inline int manhattan(TilePos a, TilePos b) {
    const int dr = a.row - b.row;
    const int dc = a.col - b.col;
    return (dr < 0 ? -dr : dr) + (dc < 0 ? -dc : dc);
}

inline bool adjacent4(TilePos a, TilePos b) { return manhattan(a, b) == 1; }

enum class Direction { N, E, S, W };

inline constexpr Direction kAllDirections[] = {Direction::N, Direction::E, Direction::S, Direction::W};

inline TilePos offset(TilePos p, Direction d) {
    switch (d) {
        case Direction::N: return {p.row - 1, p.col};
        case Direction::E: return {p.row, p.col + 1};
        case Direction::S: return {p.row + 1, p.col};
        case Direction::W: return {p.row, p.col - 1};
    }
    return p;
}

std::string_view to_string(Direction d);
Direction direction_from_string(std::string_view s);

enum class DoorState { Open, Closed };

std::string_view to_string(DoorState s);
DoorState door_state_from_string(std::string_view s);

/// Doors are named by their map glyph ('a'..'z').
struct DoorId {
    char glyph = 'a';

    std::string str() const { return std::string(1, glyph); }
    friend auto operator<=>(const DoorId&, const DoorId&) = default;
};

struct NpcId {
    int index = 0;

    /// Wire/trace name, e.g. "npc0".
    std::string str() const { return "npc" + std::to_string(index); }
    friend auto operator<=>(const NpcId&, const NpcId&) = default;
};

/// Accepts "npc3" or "3".
NpcId parse_npc_id(std::string_view s);

enum class Errc {
    RaggedMap,
    DuplicateDoorId,
    DuplicatePoi,
    NoNpcStart,
    UnknownGlyph,
    BadDirective,
    OutOfBounds,
    UnknownDoor,
    UnknownNpc,
    MalformedDoor,
    StartBlocked,
    UnknownArea,
    RefinementFailed,
    InvalidGoal,
    DuplicateAction,
    UnknownAction,
    ParseError,
    UnknownReference,
    NonMonotoneTicks,
};

std::string_view to_string(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace cogbot
