#include "cogbot/simulation.hpp"

#include "cogbot/baselines.hpp"
#include "cogbot/belief_deliberator.hpp"

namespace cogbot {

Json command_json(const Command& c) {
    return std::visit(
        [](const auto& cmd) -> Json {
            using T = std::decay_t<decltype(cmd)>;
            Json j;
            if constexpr (std::is_same_v<T, OpenDoor>) {
                j["verb"] = "open";
                j["door"] = cmd.door.str();
            } else if constexpr (std::is_same_v<T, CloseDoor>) {
                j["verb"] = "close";
                j["door"] = cmd.door.str();
            } else if constexpr (std::is_same_v<T, MoveToCommand>) {
                j["verb"] = "goto";
                j["npc"] = cmd.npc.str();
                j["target"] = pos_json(cmd.target);
            } else if constexpr (std::is_same_v<T, CancelGoal>) {
                j["verb"] = "cancel";
                j["npc"] = cmd.npc.str();
            } else {
                j["verb"] = "stop";
            }
            return j;
        },
        c);
}

Command command_from_json(const Json& j) {
    const std::string verb = j.at("verb").get<std::string>();
    auto door = [&] {
        const std::string d = j.at("door").get<std::string>();
        if (d.size() != 1) throw Error(Errc::ParseError, "bad door id '" + d + "'");
        return DoorId{d[0]};
    };
    if (verb == "open") return OpenDoor{door()};
    if (verb == "close") return CloseDoor{door()};
    if (verb == "goto") return MoveToCommand{parse_npc_id(j.at("npc").get<std::string>()), pos_from_json(j.at("target"))};
    if (verb == "cancel") return CancelGoal{parse_npc_id(j.at("npc").get<std::string>())};
    if (verb == "stop") return Stop{};
    throw Error(Errc::ParseError, "unknown command verb '" + verb + "'");
}

std::string_view to_string(DeliberatorKind k) {
    switch (k) {
        case DeliberatorKind::Belief: return "belief";
        case DeliberatorKind::Omniscient: return "omniscient";
        case DeliberatorKind::Oblivious: return "oblivious";
    }
    return "?";
}

DeliberatorKind deliberator_kind_from_string(std::string_view s) {
    if (s == "belief") return DeliberatorKind::Belief;
    if (s == "omniscient") return DeliberatorKind::Omniscient;
    if (s == "oblivious") return DeliberatorKind::Oblivious;
    throw Error(Errc::ParseError, "unknown deliberator '" + std::string(s) + "'");
}

Simulation::Simulation(WorldState world, AgentConfig config)
    : world_(std::move(world)),
      topology_(Topology::of(world_)),
      config_(std::move(config)),
      registry_(ActionRegistry::with_builtins()) {
    for (const auto& [id, pose] : world_.npcs()) {
        auto a = std::make_unique<Agent>(Agent{id, Perception(config_.senses), nullptr, nullptr, nullptr});
        const TraceChannel channel(&log_, id);
        switch (config_.deliberator) {
            case DeliberatorKind::Belief:
                a->deliberator = std::make_unique<BeliefDeliberator>(world_, topology_, channel);
                break;
            case DeliberatorKind::Omniscient:
                a->deliberator = std::make_unique<PathDeliberator>(PathDeliberator::Mode::Omniscient, world_, channel);
                a->perception.add_condition(std::make_unique<DoorChangeMonitor>());
                break;
            case DeliberatorKind::Oblivious:
                a->deliberator = std::make_unique<PathDeliberator>(PathDeliberator::Mode::Oblivious, world_, channel);
                break;
        }
        a->controller = std::make_unique<Controller>(*a->deliberator, channel);
        Controller* ctl = a->controller.get();
        a->actions = std::make_unique<ActionComponent>(
            registry_, id, [ctl](const ActionStatusEvent& ev) { ctl->push(ev); }, channel);
        agents_.push_back(std::move(a));
    }
}

Simulation::Agent& Simulation::agent(NpcId id) {
    for (auto& a : agents_) {
        if (a->id == id) return *a;
    }
    throw Error(Errc::UnknownNpc, id.str());
}

const Deliberator& Simulation::deliberator(NpcId id) const {
    for (const auto& a : agents_) {
        if (a->id == id) return *a->deliberator;
    }
    throw Error(Errc::UnknownNpc, id.str());
}

const Perception& Simulation::perception(NpcId id) const {
    for (const auto& a : agents_) {
        if (a->id == id) return a->perception;
    }
    throw Error(Errc::UnknownNpc, id.str());
}

bool Simulation::quiescent() const {
    for (const auto& a : agents_) {
        if (!a->controller->resting() || a->actions->busy()) return false;
    }
    return true;
}

std::string Simulation::validate(const Command& c) const {
    return std::visit(
        [this](const auto& cmd) -> std::string {
            using T = std::decay_t<decltype(cmd)>;
            if constexpr (std::is_same_v<T, OpenDoor> || std::is_same_v<T, CloseDoor>) {
                if (!world_.has_door(cmd.door)) return "unknown door '" + cmd.door.str() + "'";
            } else if constexpr (std::is_same_v<T, MoveToCommand>) {
                if (!world_.has_npc(cmd.npc)) return "unknown npc '" + cmd.npc.str() + "'";
                if (!world_.in_bounds(cmd.target)) return "target out of bounds";
                if (!is_floor(world_.tile_at(cmd.target))) return "impassable target";
            } else if constexpr (std::is_same_v<T, CancelGoal>) {
                if (!world_.has_npc(cmd.npc)) return "unknown npc '" + cmd.npc.str() + "'";
            }
            return "";
        },
        c);
}

void Simulation::apply(const Command& c, std::vector<StateChangeEvent>& changes) {
    Json j = command_json(c);
    std::optional<NpcId> npc;
    if (const auto* m = std::get_if<MoveToCommand>(&c)) npc = m->npc;
    if (const auto* m = std::get_if<CancelGoal>(&c)) npc = m->npc;

    if (const std::string problem = validate(c); !problem.empty()) {
        Json err;
        err["message"] = problem;
        err["command"] = std::move(j);
        log_.emit(npc, TraceKind::Error, std::move(err));
        return;
    }

    std::visit(
        [&](const auto& cmd) {
            using T = std::decay_t<decltype(cmd)>;
            if constexpr (std::is_same_v<T, OpenDoor> || std::is_same_v<T, CloseDoor>) {
                const DoorState want = std::is_same_v<T, OpenDoor> ? DoorState::Open : DoorState::Closed;
                const auto ev = world_.set_door_state(cmd.door, want);
                j["changed"] = ev.has_value();
                if (ev) changes.push_back(*ev);
            } else if constexpr (std::is_same_v<T, MoveToCommand>) {
                Json payload;
                payload["target"] = pos_json(cmd.target);
                agent(cmd.npc).controller->push(EventNotification{std::string(events::kGoto), std::move(payload)});
            } else if constexpr (std::is_same_v<T, CancelGoal>) {
                agent(cmd.npc).controller->push(EventNotification{std::string(events::kCancel), Json::object()});
            } else {
                stopped_ = true;
            }
        },
        c);
    log_.emit(npc, TraceKind::Command, std::move(j));
}

std::vector<TraceEvent> Simulation::advance_tick(std::span<const Command> commands) {
    const Tick now = world_.tick();

    log_.begin(now, Phase::Commands);
    std::vector<StateChangeEvent> changes;
    for (const Command& c : commands) {
        try {
            apply(c, changes);
        } catch (const std::exception& e) {
            Json err;
            err["message"] = e.what();
            err["command"] = command_json(c);
            log_.emit(std::nullopt, TraceKind::Error, std::move(err));
        }
    }

    log_.set_phase(Phase::Perception);
    for (auto& a : agents_) {
        for (auto& ev : a->perception.sweep(world_, a->id, changes)) {
            log_.emit(a->id, TraceKind::Percept, percept_json(ev));
            a->controller->push(std::move(ev));
        }
    }

    log_.set_phase(Phase::Control);
    for (auto& a : agents_) {
        auto out = a->controller->dispatch(world_.npc(a->id), now);
        if (out.cancel_current) a->actions->cancel();
        if (out.invoke) a->controller->action_started(a->actions->invoke_action(*out.invoke, world_));
    }

    log_.set_phase(Phase::Movement);
    for (auto& a : agents_) a->actions->update(world_);

    log_.set_phase(Phase::Emit);
    log_.emit(std::nullopt, TraceKind::TickBoundary);
    world_.advance_clock();
    return log_.take();
}

}  // namespace cogbot
