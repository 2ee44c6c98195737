#include "cogbot/belief_deliberator.hpp"

#include <deque>
#include <map>
#include <set>

namespace cogbot {

namespace {

std::optional<TilePos> exit_tile(const AreaDecomposition& decomp, TilePos door_pos, AreaId destination) {
    for (Direction d : kAllDirections) {
        const TilePos q = offset(door_pos, d);
        if (q.row < 0 || q.col < 0 || q.row >= decomp.height() || q.col >= decomp.width()) continue;
        if (decomp.area_of(q) == destination) return q;
    }
    return std::nullopt;
}

std::string pos_str(TilePos p) { return "(" + std::to_string(p.row) + "," + std::to_string(p.col) + ")"; }

Json path_json(const std::vector<TilePos>& path) {
    Json arr = Json::array();
    for (TilePos p : path) arr.push_back(pos_json(p));
    return arr;
}

}  // namespace

std::vector<AreaId> MacroPlan::area_sequence() const {
    std::vector<AreaId> seq{origin};
    for (const auto& s : steps) seq.push_back(s.destination);
    return seq;
}

Json MacroPlan::to_json() const {
    Json j;
    j["from_area"] = origin.value;
    Json steps_json = Json::array();
    Json route = Json::array();
    for (const auto& s : steps) {
        Json step;
        step["door"] = s.door.str();
        step["area"] = s.destination.value;
        steps_json.push_back(std::move(step));
        route.push_back(s.door.str());
    }
    j["steps"] = std::move(steps_json);
    j["route"] = std::move(route);
    j["target"] = pos_json(final_target);
    j["target_area"] = target_area.value;
    return j;
}

std::optional<std::vector<MacroStep>> plan_high_level(const BeliefState& beliefs, const AreaGraph& graph,
                                                      AreaId from, AreaId to) {
    if (!graph.has_node(from)) throw Error(Errc::UnknownArea, "area " + std::to_string(from.value));
    if (!graph.has_node(to)) throw Error(Errc::UnknownArea, "area " + std::to_string(to.value));
    if (from == to) return std::vector<MacroStep>{};

    std::map<AreaId, std::pair<AreaId, DoorId>> came_from;
    std::set<AreaId> seen{from};
    std::deque<AreaId> frontier{from};
    while (!frontier.empty()) {
        const AreaId cur = frontier.front();
        frontier.pop_front();
        for (const auto& [door, next] : graph.neighbors(cur)) {
            if (seen.contains(next)) continue;
            if (!beliefs.knows(door) || !beliefs.believed_open(door)) continue;
            seen.insert(next);
            came_from[next] = {cur, door};
            if (next == to) {
                std::vector<MacroStep> steps;
                for (AreaId a = to; a != from; a = came_from[a].first) steps.push_back({came_from[a].second, a});
                return std::vector<MacroStep>(steps.rbegin(), steps.rend());
            }
            frontier.push_back(next);
        }
    }
    return std::nullopt;
}

ActionRequest refine_macro(const WorldState& world, const AreaDecomposition& decomp, const BeliefState& beliefs,
                           TilePos current, const MacroStepOrFinal& step) {
    const auto policy = PassabilityPolicy::beliefs(beliefs);
    if (const auto* final_target = std::get_if<FinalTarget>(&step)) {
        auto route = route_from(world, current, final_target->target, policy);
        if (!route) {
            throw Error(Errc::RefinementFailed, "no path " + pos_str(current) + " -> " + pos_str(final_target->target));
        }
        return ActionRequest{"move-to", {{"target", final_target->target}, {"path", std::move(route->tiles)}}};
    }

    const auto& door_step = std::get<MacroStep>(step);
    const TilePos door_pos = decomp.waypoint(door_step.door).position;
    const auto exit = exit_tile(decomp, door_pos, door_step.destination);
    if (!exit) {
        throw Error(Errc::RefinementFailed, "door '" + door_step.door.str() + "' has no exit into area " +
                                                std::to_string(door_step.destination.value));
    }
    std::vector<TilePos> path;
    if (current == door_pos) {
        path = {door_pos};
    } else {
        auto route = route_from(world, current, door_pos, policy);
        if (!route) {
            throw Error(Errc::RefinementFailed, "door '" + door_step.door.str() + "' unreachable from " + pos_str(current));
        }
        path = std::move(route->tiles);
    }
    path.push_back(*exit);
    return ActionRequest{"traverse-door", {{"door", door_step.door.str()}, {"path", std::move(path)}}};
}

BeliefDeliberator::BeliefDeliberator(const WorldState& world, const Topology& topology, TraceChannel trace)
    : world_(&world), topology_(&topology), trace_(trace), beliefs_(init_beliefs(topology.decomposition)) {}

void BeliefDeliberator::set_goal(TilePos target) {
    if (!world_->in_bounds(target) || !topology_->decomposition.area_of(target)) {
        throw Error(Errc::InvalidGoal, "goal " + pos_str(target) + " is not a floor tile");
    }
    goal_ = target;
    plan_.reset();
    last_request_.reset();
}

void BeliefDeliberator::cancel_goal() {
    goal_.reset();
    plan_.reset();
    last_request_.reset();
}

bool BeliefDeliberator::remaining_steps_open(std::size_t from_index) const {
    for (std::size_t i = from_index; i < plan_->steps.size(); ++i) {
        if (!beliefs_.believed_open(plan_->steps[i].door)) return false;
    }
    return true;
}

bool BeliefDeliberator::plan_still_best() const {
    if (!plan_ || !last_area_) return false;
    const auto seq = plan_->area_sequence();
    std::size_t index = seq.size();
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i] == *last_area_) {
            index = i;
            break;
        }
    }
    if (index == seq.size() || !remaining_steps_open(index)) return false;
    const auto candidate = plan_high_level(beliefs_, topology_->graph, *last_area_, plan_->target_area);
    return !candidate || candidate->size() >= plan_->steps.size() - index;
}

std::optional<AreaId> BeliefDeliberator::choose_area(TilePos pos, AreaId target_area) const {
    const auto& decomp = topology_->decomposition;
    std::set<AreaId> around;
    for (Direction d : kAllDirections) {
        const TilePos q = offset(pos, d);
        if (!world_->in_bounds(q)) continue;
        if (auto a = decomp.area_of(q)) around.insert(*a);
    }
    std::optional<AreaId> best;
    std::size_t best_len = 0;
    for (AreaId a : around) {
        auto steps = plan_high_level(beliefs_, topology_->graph, a, target_area);
        if (steps && (!best || steps->size() < best_len)) {
            best = a;
            best_len = steps->size();
        }
    }
    if (!best && !around.empty()) best = *around.begin();
    return best;
}

Decision BeliefDeliberator::get_next_action(const NpcPose& self, Tick) {
    if (!goal_) return NoPlan{NoPlanReason::NoGoal, ""};
    if (self.position == *goal_) {
        goal_.reset();
        plan_.reset();
        last_request_.reset();
        return NoPlan{NoPlanReason::Satisfied, ""};
    }
    const auto& decomp = topology_->decomposition;
    const AreaId target_area = *decomp.area_of(*goal_);
    const TilePos pos = self.position;

    std::optional<AreaId> current = decomp.area_of(pos);
    if (!current) {
        // Standing in a doorway: continue a crossing already under way if the plan allows.
        if (const auto* dt = as_door(world_->tile_at(pos)); dt != nullptr && plan_) {
            for (std::size_t i = 0; i < plan_->steps.size(); ++i) {
                if (plan_->steps[i].door == dt->door && remaining_steps_open(i)) {
                    try {
                        last_request_ = refine_macro(*world_, decomp, beliefs_, pos, plan_->steps[i]);
                        return *last_request_;
                    } catch (const Error&) {
                        break;
                    }
                }
            }
        }
        current = choose_area(pos, target_area);
        if (!current) return NoPlan{NoPlanReason::Failed, "npc is not inside any area"};
    }
    last_area_ = current;

    std::size_t index = 0;
    if (plan_) {
        const auto seq = plan_->area_sequence();
        std::size_t found = seq.size();
        for (std::size_t i = 0; i < seq.size(); ++i) {
            if (seq[i] == *current) {
                found = i;
                break;
            }
        }
        if (found == seq.size() || plan_->final_target != *goal_ || !remaining_steps_open(found)) {
            plan_.reset();
        } else {
            index = found;
        }
    }
    if (!plan_) {
        auto steps = plan_high_level(beliefs_, topology_->graph, *current, target_area);
        if (!steps) {
            last_request_.reset();
            return NoPlan{NoPlanReason::Unreachable, ""};
        }
        plan_ = MacroPlan{*current, std::move(*steps), *goal_, target_area};
        index = 0;
        Json j;
        j["deliberator"] = "belief";
        const Json plan_json = plan_->to_json();
        for (const auto& [k, v] : plan_json.items()) j[k] = v;
        trace_.emit(TraceKind::PlanComputed, std::move(j));
    }

    const MacroStepOrFinal step = index < plan_->steps.size() ? MacroStepOrFinal{plan_->steps[index]}
                                                              : MacroStepOrFinal{FinalTarget{*goal_}};
    try {
        last_request_ = refine_macro(*world_, decomp, beliefs_, pos, step);
    } catch (const Error& e) {
        Json err;
        err["message"] = e.what();
        err["stage"] = "refine";
        trace_.emit(TraceKind::Error, std::move(err));
        plan_.reset();
        last_request_.reset();
        return NoPlan{NoPlanReason::Failed, std::string(to_string(e.code()))};
    }
    return *last_request_;
}

bool BeliefDeliberator::notify_object(const ObjectSnapshot& object, Tick now) {
    if (object.object_type != "door") return false;
    if (object.id.size() != 1 || !beliefs_.knows(DoorId{object.id[0]})) {
        Json w;
        w["message"] = "notification for unknown object ignored";
        w["object"] = object.id;
        trace_.emit(TraceKind::Warning, std::move(w));
        return false;
    }
    const DoorId door{object.id[0]};
    const DoorState previous = beliefs_.believed(door);
    const DoorState observed = door_state_from_string(object.state);
    const bool changed = beliefs_.observe(door, observed, now);

    Json j;
    j["door"] = door.str();
    j["state"] = std::string(to_string(observed));
    j["previous"] = std::string(to_string(previous));
    j["changed"] = changed;
    trace_.emit(TraceKind::BeliefUpdate, std::move(j));

    if (!changed || !plan_) return false;
    if (plan_still_best()) return false;
    plan_.reset();
    return true;
}

bool BeliefDeliberator::notify_event(const EventNotification& event, Tick) {
    if (event.name == events::kGoto) {
        try {
            set_goal(pos_from_json(event.payload.at("target")));
        } catch (const Error& e) {
            Json err;
            err["message"] = e.what();
            err["stage"] = "goal";
            trace_.emit(TraceKind::Error, std::move(err));
            cancel_goal();
        }
        return true;
    }
    if (event.name == events::kCancel) {
        cancel_goal();
        return true;
    }
    return false;
}

Json BeliefDeliberator::plan_summary() const {
    if (!goal_) return nullptr;
    Json j;
    j["goal"] = pos_json(*goal_);
    j["macro"] = plan_ ? plan_->to_json() : Json(nullptr);
    if (last_request_) {
        j["action"] = last_request_->name;
        if (const auto* path = last_request_->get<std::vector<TilePos>>("path")) j["path"] = path_json(*path);
    }
    return j;
}

}  // namespace cogbot
