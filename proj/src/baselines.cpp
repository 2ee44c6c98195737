#include "cogbot/baselines.hpp"

#include <algorithm>

namespace cogbot {

PathDeliberator::PathDeliberator(Mode mode, const WorldState& world, TraceChannel trace)
    : mode_(mode), world_(&world), trace_(trace) {}

Decision PathDeliberator::get_next_action(const NpcPose& self, Tick) {
    last_position_ = self.position;
    if (!goal_) return NoPlan{NoPlanReason::NoGoal, ""};
    if (self.position == *goal_) {
        goal_.reset();
        path_.reset();
        return NoPlan{NoPlanReason::Satisfied, ""};
    }
    auto route = route_from(*world_, self.position, *goal_, policy());
    if (!route) {
        path_.reset();
        return NoPlan{NoPlanReason::Unreachable, ""};
    }
    path_ = std::move(route);

    Json j;
    j["deliberator"] = std::string(kind());
    Json doors = Json::array();
    for (DoorId d : doors_on(*world_, path_->tiles)) doors.push_back(d.str());
    j["route"] = std::move(doors);
    j["target"] = pos_json(*goal_);
    j["cost"] = path_->cost();
    trace_.emit(TraceKind::PlanComputed, std::move(j));

    return ActionRequest{"move-to", {{"target", *goal_}, {"path", path_->tiles}}};
}

bool PathDeliberator::notify_event(const EventNotification& event, Tick) {
    if (event.name == events::kGoto) {
        const TilePos target = pos_from_json(event.payload.at("target"));
        if (!world_->in_bounds(target) || !is_floor(world_->tile_at(target))) {
            Json err;
            err["message"] = "goal is not a floor tile";
            err["stage"] = "goal";
            trace_.emit(TraceKind::Error, std::move(err));
            goal_.reset();
        } else {
            goal_ = target;
        }
        path_.reset();
        return true;
    }
    if (event.name == events::kCancel) {
        goal_.reset();
        path_.reset();
        return true;
    }
    if (event.name == events::kDoorChanged && mode_ == Mode::Omniscient && goal_ && path_ && last_position_) {
        // Ground truth moved under the current route: switch if the best route differs.
        const auto it = std::find(path_->tiles.begin(), path_->tiles.end(), *last_position_);
        const TilePos from = it != path_->tiles.end() ? *last_position_ : path_->tiles.front();
        const auto fresh = route_from(*world_, from, *goal_, policy());
        const Path remaining{std::vector<TilePos>(it != path_->tiles.end() ? it : path_->tiles.begin(), path_->tiles.end())};
        if (!fresh || fresh->cost() < remaining.cost() || !path_is_valid(*world_, remaining, policy())) {
            path_.reset();
            return true;
        }
    }
    return false;
}

Json PathDeliberator::plan_summary() const {
    if (!goal_) return nullptr;
    Json j;
    j["goal"] = pos_json(*goal_);
    if (path_) {
        Json arr = Json::array();
        for (TilePos p : path_->tiles) arr.push_back(pos_json(p));
        j["action"] = "move-to";
        j["path"] = std::move(arr);
    }
    return j;
}

}  // namespace cogbot
