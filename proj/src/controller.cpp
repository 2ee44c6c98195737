#include "cogbot/controller.hpp"

namespace cogbot {

std::string_view to_string(NoPlanReason r) {
    switch (r) {
        case NoPlanReason::NoGoal: return "no_goal";
        case NoPlanReason::Satisfied: return "satisfied";
        case NoPlanReason::Unreachable: return "unreachable";
        case NoPlanReason::Failed: return "failed";
    }
    return "?";
}

Controller::Controller(Deliberator& deliberator, TraceChannel trace)
    : deliberator_(&deliberator), trace_(trace) {
    route_event(std::string(events::kGoto));
    route_event(std::string(events::kCancel));
    route_event(std::string(events::kDoorChanged));
}

bool Controller::forward(const PerceptEvent& ev, Tick now) {
    if (const auto* entered = std::get_if<ObjectEnteredFov>(&ev)) {
        return deliberator_->notify_object(entered->object, now);
    }
    if (const auto* changed = std::get_if<ObjectStatusChanged>(&ev)) {
        return deliberator_->notify_object({changed->id, changed->object_type, {}, changed->state}, now);
    }
    if (const auto* note = std::get_if<EventNotification>(&ev)) {
        if (!routes_.contains(note->name)) {
            Json w;
            w["message"] = "unrouted event dropped";
            w["name"] = note->name;
            trace_.emit(TraceKind::Warning, std::move(w));
            return false;
        }
        if (note->name == events::kGoto || note->name == events::kCancel) last_no_plan_.reset();
        return deliberator_->notify_event(*note, now);
    }
    return false;  // ObjectLeftFov carries nothing the deliberator needs
}

void Controller::handle_status(const ActionStatusEvent& ev) {
    if (!current_ || ev.invocation != *current_) return;  // stale: already preempted
    if (ev.terminal()) current_.reset();
}

Controller::Output Controller::dispatch(const NpcPose& self, Tick now) {
    Output out;
    bool invalidated = false;
    while (!inbox_.empty()) {
        InboxItem item = std::move(inbox_.front());
        inbox_.pop_front();
        try {
            if (auto* p = std::get_if<PerceptEvent>(&item)) {
                invalidated = forward(*p, now) || invalidated;
            } else {
                handle_status(std::get<ActionStatusEvent>(item));
            }
        } catch (const std::exception& e) {
            Json err;
            err["message"] = e.what();
            err["stage"] = "notify";
            trace_.emit(TraceKind::Error, std::move(err));
        }
    }

    if (invalidated && current_) {
        out.cancel_current = true;
        current_.reset();
    }
    if (current_) return out;

    Decision decision;
    try {
        decision = deliberator_->get_next_action(self, now);
    } catch (const std::exception& e) {
        Json err;
        err["message"] = e.what();
        err["stage"] = "get_next_action";
        trace_.emit(TraceKind::Error, std::move(err));
        decision = NoPlan{NoPlanReason::Failed, e.what()};
    }

    if (auto* action = std::get_if<ActionRequest>(&decision)) {
        last_no_plan_.reset();
        out.invoke = std::move(*action);
        return out;
    }
    const NoPlan& np = std::get<NoPlan>(decision);
    if (np.reason != NoPlanReason::NoGoal && last_no_plan_ != np) {
        Json j;
        j["reason"] = std::string(to_string(np.reason));
        if (!np.detail.empty()) j["detail"] = np.detail;
        trace_.emit(TraceKind::NoPlan, std::move(j));
    }
    last_no_plan_ = np;
    return out;
}

}  // namespace cogbot
