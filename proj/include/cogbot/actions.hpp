#pragma once

// Action component: a registry of named action implementations and the per-NPC
// executor that runs at most one of them at a time.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cogbot/trace.hpp"
#include "cogbot/world.hpp"

namespace cogbot {

using ActionParam = std::variant<std::string, std::int64_t, TilePos, std::vector<TilePos>>;

struct ActionRequest {
    std::string name;
    std::vector<std::pair<std::string, ActionParam>> params;

    const ActionParam* find(std::string_view key) const;

    template <typename T>
    const T* get(std::string_view key) const {
        const ActionParam* p = find(key);
        return p != nullptr ? std::get_if<T>(p) : nullptr;
    }

    Json to_json() const;
    friend bool operator==(const ActionRequest&, const ActionRequest&) = default;
};

enum class ActionStatus { Running, Succeeded, Failed };

std::string_view to_string(ActionStatus s);

using InvocationId = std::uint64_t;

struct ActionStatusEvent {
    InvocationId invocation = 0;
    std::string action;
    ActionStatus status = ActionStatus::Running;
    std::string reason;

    bool terminal() const { return status != ActionStatus::Running; }
    Json to_json() const;
};

/// One live invocation. `step` is called once per tick in the movement phase.
class RunningAction {
public:
    virtual ~RunningAction() = default;

    /// Called once at invocation; a non-Running result ends the action immediately.
    virtual ActionStatus start(const WorldState& world, NpcId npc, std::string& reason) = 0;
    virtual ActionStatus step(WorldState& world, NpcId npc, TraceChannel& trace, std::string& reason) = 0;
};

using ActionImpl = std::function<std::unique_ptr<RunningAction>(const ActionRequest&)>;

class ActionRegistry {
public:
    /// Throws Errc::DuplicateAction.
    void register_action(const std::string& name, ActionImpl impl);
    bool contains(const std::string& name) const { return impls_.contains(name); }
    const ActionImpl* find(const std::string& name) const;

    /// "move-to" and "traverse-door".
    static ActionRegistry with_builtins();

private:
    std::map<std::string, ActionImpl> impls_;
};

/// Walks a stored tile path one step per tick. Params: "path" (tiles, first = current
/// position). Fails with "blocked" when a step is refused.
class PathFollowAction final : public RunningAction {
public:
    explicit PathFollowAction(std::vector<TilePos> path) : path_(std::move(path)) {}

    ActionStatus start(const WorldState& world, NpcId npc, std::string& reason) override;
    ActionStatus step(WorldState& world, NpcId npc, TraceChannel& trace, std::string& reason) override;

private:
    std::vector<TilePos> path_;
    std::size_t next_ = 1;
};

class ActionComponent {
public:
    using Notify = std::function<void(const ActionStatusEvent&)>;

    ActionComponent(const ActionRegistry& registry, NpcId npc, Notify notify, TraceChannel trace);

    /// Emits Running, and possibly a terminal status at once. Unknown names fail
    /// with reason "unknown action". Any running invocation is cancelled first.
    InvocationId invoke_action(const ActionRequest& request, const WorldState& world);

    /// Advances the running invocation by one step.
    void update(WorldState& world);

    /// Ends the running invocation with Failed("preempted").
    void cancel();

    bool busy() const { return running_ != nullptr; }
    std::optional<InvocationId> current() const;

private:
    void finish(ActionStatus status, const std::string& reason);

    const ActionRegistry* registry_;
    NpcId npc_;
    Notify notify_;
    TraceChannel trace_;
    InvocationId next_id_ = 1;
    InvocationId current_id_ = 0;
    std::string current_name_;
    std::unique_ptr<RunningAction> running_;
};

}  // namespace cogbot
