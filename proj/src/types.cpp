#include "cogbot/types.hpp"

#include <charconv>

namespace cogbot {

std::string_view to_string(Direction d) {
    switch (d) {
        case Direction::N: return "N";
        case Direction::E: return "E";
        case Direction::S: return "S";
        case Direction::W: return "W";
    }
    return "?";
}

Direction direction_from_string(std::string_view s) {
    if (s == "N") return Direction::N;
    if (s == "E") return Direction::E;
    if (s == "S") return Direction::S;
    if (s == "W") return Direction::W;
    throw Error(Errc::ParseError, "bad direction '" + std::string(s) + "'");
}

std::string_view to_string(DoorState s) { return s == DoorState::Open ? "open" : "closed"; }

DoorState door_state_from_string(std::string_view s) {
    if (s == "open") return DoorState::Open;
    if (s == "closed") return DoorState::Closed;
    throw Error(Errc::ParseError, "bad door state '" + std::string(s) + "'");
}

NpcId parse_npc_id(std::string_view s) {
    std::string_view digits = s;
    if (digits.starts_with("npc")) digits.remove_prefix(3);
    int value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size() || value < 0) {
        throw Error(Errc::ParseError, "bad npc id '" + std::string(s) + "'");
    }
    return NpcId{value};
}

std::string_view to_string(Errc c) {
    switch (c) {
        case Errc::RaggedMap: return "RaggedMap";
        case Errc::DuplicateDoorId: return "DuplicateDoorId";
        case Errc::DuplicatePoi: return "DuplicatePoi";
        case Errc::NoNpcStart: return "NoNpcStart";
        case Errc::UnknownGlyph: return "UnknownGlyph";
        case Errc::BadDirective: return "BadDirective";
        case Errc::OutOfBounds: return "OutOfBounds";
        case Errc::UnknownDoor: return "UnknownDoor";
        case Errc::UnknownNpc: return "UnknownNpc";
        case Errc::MalformedDoor: return "MalformedDoor";
        case Errc::StartBlocked: return "StartBlocked";
        case Errc::UnknownArea: return "UnknownArea";
        case Errc::RefinementFailed: return "RefinementFailed";
        case Errc::InvalidGoal: return "InvalidGoal";
        case Errc::DuplicateAction: return "DuplicateAction";
        case Errc::UnknownAction: return "UnknownAction";
        case Errc::ParseError: return "ParseError";
        case Errc::UnknownReference: return "UnknownReference";
        case Errc::NonMonotoneTicks: return "NonMonotoneTicks";
    }
    return "Unknown";
}

}  // namespace cogbot
