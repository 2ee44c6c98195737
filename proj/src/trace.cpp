#include "cogbot/trace.hpp"

#include <array>
#include <utility>

namespace cogbot {

namespace {

constexpr std::array<std::pair<TraceKind, std::string_view>, 12> kKindNames{{
    {TraceKind::TickBoundary, "TickBoundary"},
    {TraceKind::Command, "Command"},
    {TraceKind::Percept, "Percept"},
    {TraceKind::BeliefUpdate, "BeliefUpdate"},
    {TraceKind::PlanComputed, "PlanComputed"},
    {TraceKind::NoPlan, "NoPlan"},
    {TraceKind::ActionStart, "ActionStart"},
    {TraceKind::ActionStatus, "ActionStatus"},
    {TraceKind::Move, "Move"},
    {TraceKind::Warning, "Warning"},
    {TraceKind::Error, "Error"},
    {TraceKind::RunEnd, "RunEnd"},
}};

}  // namespace

std::string_view to_string(TraceKind k) {
    for (const auto& [kind, name] : kKindNames) {
        if (kind == k) return name;
    }
    return "?";
}

TraceKind trace_kind_from_string(std::string_view s) {
    for (const auto& [kind, name] : kKindNames) {
        if (name == s) return kind;
    }
    throw Error(Errc::ParseError, "unknown trace kind '" + std::string(s) + "'");
}

Json TraceEvent::to_json() const {
    Json j;
    j["tick"] = tick;
    j["phase"] = static_cast<int>(phase);
    j["npc"] = npc ? Json(npc->str()) : Json(nullptr);
    j["kind"] = std::string(to_string(kind));
    j["payload"] = payload;
    return j;
}

TraceEvent TraceEvent::from_json(const Json& j) {
    TraceEvent ev;
    ev.tick = j.at("tick").get<Tick>();
    ev.phase = static_cast<Phase>(j.at("phase").get<int>());
    if (!j.at("npc").is_null()) ev.npc = parse_npc_id(j.at("npc").get<std::string>());
    ev.kind = trace_kind_from_string(j.at("kind").get<std::string>());
    ev.payload = j.at("payload");
    return ev;
}

std::string render_trace(const std::vector<TraceEvent>& events) {
    std::string out;
    for (const auto& ev : events) {
        out += ev.to_line();
        out.push_back('\n');
    }
    return out;
}

std::vector<TraceEvent> parse_trace(std::string_view text) {
    std::vector<TraceEvent> out;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty()) {
            try {
                out.push_back(TraceEvent::from_json(Json::parse(line)));
            } catch (const nlohmann::json::exception& e) {
                throw Error(Errc::ParseError, std::string("trace line: ") + e.what());
            }
        }
        start = end + 1;
    }
    return out;
}

Json pos_json(TilePos p) { return Json::array({p.row, p.col}); }

TilePos pos_from_json(const Json& j) { return {j.at(0).get<int>(), j.at(1).get<int>()}; }

}  // namespace cogbot
