#pragma once

// The mediator between perception, deliberation and action. It sees only events
// and its own pose; it holds no reference to the world.

#include <deque>
#include <optional>
#include <set>
#include <string>
#include <variant>

#include "cogbot/deliberator.hpp"

namespace cogbot {

class Controller {
public:
    Controller(Deliberator& deliberator, TraceChannel trace);

    /// Event names forwarded to the deliberator; anything else is logged and dropped.
    void route_event(std::string name) { routes_.insert(std::move(name)); }

    void push(PerceptEvent ev) { inbox_.emplace_back(std::move(ev)); }
    void push(ActionStatusEvent ev) { inbox_.emplace_back(std::move(ev)); }

    struct Output {
        bool cancel_current = false;
        std::optional<ActionRequest> invoke;
    };

    /// Drains the inbox, then queries the deliberator at most once if idle.
    Output dispatch(const NpcPose& self, Tick now);

    /// Binds the invocation created for the last Output::invoke.
    void action_started(InvocationId id) { current_ = id; }

    bool idle() const { return !current_.has_value(); }
    bool resting() const { return idle() && last_no_plan_.has_value(); }

private:
    using InboxItem = std::variant<PerceptEvent, ActionStatusEvent>;

    bool forward(const PerceptEvent& ev, Tick now);
    void handle_status(const ActionStatusEvent& ev);

    Deliberator* deliberator_;
    TraceChannel trace_;
    std::set<std::string> routes_;
    std::deque<InboxItem> inbox_;
    std::optional<InvocationId> current_;
    std::optional<NoPlan> last_no_plan_;
};

}  // namespace cogbot
