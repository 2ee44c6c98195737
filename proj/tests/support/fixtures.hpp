#pragma once

#include <string>

#include "cogbot/harness.hpp"

namespace fixtures {

inline constexpr const char* kCanonical =
    "###########\n"
    "#....#....#\n"
    "#@...a...G#\n"
    "#....#....#\n"
    "##b#####c##\n"
    "#.........#\n"
    "###########\n";

// Door x sits inside one room, touching the same area on every side.
inline constexpr const char* kPlazaDoor =
    "#####\n"
    "#...#\n"
    "#.a.#\n"
    "#@..#\n"
    "#####\n";

// Two doors join the same pair of rooms.
inline constexpr const char* kTwoDoors =
    "#######\n"
    "#@.a..#\n"
    "#..#..#\n"
    "#..b..#\n"
    "#######\n";

inline constexpr const char* kMinimal = "###\n#@#\n###";

inline std::string data_file(const std::string& rel) { return std::string(COGBOT_DATA_DIR) + "/" + rel; }

inline cogbot::WorldState canonical() { return cogbot::parse_map(kCanonical); }

inline cogbot::WorldState load_map(const std::string& name) { return cogbot::load_map_file(data_file("maps/" + name)); }

inline cogbot::Scenario load_scenario(const std::string& name, const cogbot::WorldState& world) {
    return cogbot::load_scenario(cogbot::read_text_file(data_file("scenarios/" + name)), world);
}

}  // namespace fixtures
