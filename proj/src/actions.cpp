#include "cogbot/actions.hpp"

#include "cogbot/pathfinding.hpp"

namespace cogbot {

namespace {

std::optional<Direction> direction_between(TilePos from, TilePos to) {
    for (Direction d : kAllDirections) {
        if (offset(from, d) == to) return d;
    }
    return std::nullopt;
}

Json param_json(const ActionParam& p) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, TilePos>) {
                return pos_json(v);
            } else if constexpr (std::is_same_v<T, std::vector<TilePos>>) {
                Json arr = Json::array();
                for (TilePos t : v) arr.push_back(pos_json(t));
                return arr;
            } else {
                return Json(v);
            }
        },
        p);
}

std::unique_ptr<RunningAction> make_path_follower(const ActionRequest& req) {
    const auto* path = req.get<std::vector<TilePos>>("path");
    return std::make_unique<PathFollowAction>(path != nullptr ? *path : std::vector<TilePos>{});
}

}  // namespace

const ActionParam* ActionRequest::find(std::string_view key) const {
    for (const auto& [k, v] : params) {
        if (k == key) return &v;
    }
    return nullptr;
}

Json ActionRequest::to_json() const {
    Json j;
    j["name"] = name;
    Json p = Json::object();
    for (const auto& [k, v] : params) p[k] = param_json(v);
    j["params"] = std::move(p);
    return j;
}

std::string_view to_string(ActionStatus s) {
    switch (s) {
        case ActionStatus::Running: return "running";
        case ActionStatus::Succeeded: return "succeeded";
        case ActionStatus::Failed: return "failed";
    }
    return "?";
}

Json ActionStatusEvent::to_json() const {
    Json j;
    j["invocation"] = invocation;
    j["action"] = action;
    j["status"] = std::string(to_string(status));
    if (!reason.empty()) j["reason"] = reason;
    return j;
}

void ActionRegistry::register_action(const std::string& name, ActionImpl impl) {
    if (impls_.contains(name)) throw Error(Errc::DuplicateAction, "action '" + name + "'");
    impls_.emplace(name, std::move(impl));
}

const ActionImpl* ActionRegistry::find(const std::string& name) const {
    auto it = impls_.find(name);
    return it == impls_.end() ? nullptr : &it->second;
}

ActionRegistry ActionRegistry::with_builtins() {
    ActionRegistry r;
    r.register_action("move-to", make_path_follower);
    r.register_action("traverse-door", make_path_follower);
    return r;
}

ActionStatus PathFollowAction::start(const WorldState& world, NpcId npc, std::string& reason) {
    const TilePos here = world.npc(npc).position;
    if (path_.empty() || path_.front() != here) {
        reason = "path does not start at npc position";
        return ActionStatus::Failed;
    }
    for (std::size_t i = 1; i < path_.size(); ++i) {
        if (!adjacent4(path_[i - 1], path_[i])) {
            reason = "path is not 4-connected";
            return ActionStatus::Failed;
        }
    }
    return path_.size() == 1 ? ActionStatus::Succeeded : ActionStatus::Running;
}

ActionStatus PathFollowAction::step(WorldState& world, NpcId npc, TraceChannel& trace, std::string& reason) {
    const TilePos from = world.npc(npc).position;
    const TilePos to = path_[next_];
    const auto dir = direction_between(from, to);
    if (!dir) {
        reason = "off path";
        return ActionStatus::Failed;
    }
    const MoveOutcome outcome = world.step_npc(npc, *dir);
    Json mv;
    mv["from"] = pos_json(from);
    mv["to"] = pos_json(outcome == MoveOutcome::Moved ? to : from);
    mv["facing"] = std::string(to_string(*dir));
    mv["outcome"] = outcome == MoveOutcome::Moved ? "moved" : "blocked";
    trace.emit(TraceKind::Move, std::move(mv));
    if (outcome == MoveOutcome::Blocked) {
        reason = "blocked";
        return ActionStatus::Failed;
    }
    ++next_;
    return next_ >= path_.size() ? ActionStatus::Succeeded : ActionStatus::Running;
}

ActionComponent::ActionComponent(const ActionRegistry& registry, NpcId npc, Notify notify, TraceChannel trace)
    : registry_(&registry), npc_(npc), notify_(std::move(notify)), trace_(trace) {}

std::optional<InvocationId> ActionComponent::current() const {
    if (!running_) return std::nullopt;
    return current_id_;
}

void ActionComponent::finish(ActionStatus status, const std::string& reason) {
    ActionStatusEvent ev{current_id_, current_name_, status, reason};
    trace_.emit(TraceKind::ActionStatus, ev.to_json());
    if (ev.terminal()) running_.reset();
    if (notify_) notify_(ev);
}

InvocationId ActionComponent::invoke_action(const ActionRequest& request, const WorldState& world) {
    if (running_) cancel();
    current_id_ = next_id_++;
    current_name_ = request.name;

    Json start;
    start["invocation"] = current_id_;
    start["action"] = request.name;
    start["params"] = request.to_json()["params"];
    Json route = Json::array();
    if (const auto* path = request.get<std::vector<TilePos>>("path")) {
        for (DoorId d : doors_on(world, *path)) route.push_back(d.str());
    }
    start["route"] = std::move(route);
    trace_.emit(TraceKind::ActionStart, std::move(start));

    const ActionImpl* impl = registry_->find(request.name);
    if (impl == nullptr) {
        running_.reset();
        ActionStatusEvent running{current_id_, current_name_, ActionStatus::Running, ""};
        trace_.emit(TraceKind::ActionStatus, running.to_json());
        if (notify_) notify_(running);
        ActionStatusEvent failed{current_id_, current_name_, ActionStatus::Failed, "unknown action"};
        trace_.emit(TraceKind::ActionStatus, failed.to_json());
        if (notify_) notify_(failed);
        return current_id_;
    }

    running_ = (*impl)(request);
    finish(ActionStatus::Running, "");
    std::string reason;
    const ActionStatus s = running_->start(world, npc_, reason);
    if (s != ActionStatus::Running) finish(s, reason);
    return current_id_;
}

void ActionComponent::update(WorldState& world) {
    if (!running_) return;
    std::string reason;
    const ActionStatus s = running_->step(world, npc_, trace_, reason);
    if (s != ActionStatus::Running) finish(s, reason);
}

void ActionComponent::cancel() {
    if (running_) finish(ActionStatus::Failed, "preempted");
}

}  // namespace cogbot
