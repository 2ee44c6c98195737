#include <doctest.h>

#include "../support/fixtures.hpp"
#include "cogbot/actions.hpp"

using namespace cogbot;

namespace {

struct Rig {
    WorldState world = fixtures::canonical();
    ActionRegistry registry = ActionRegistry::with_builtins();
    TraceLog log;
    std::vector<ActionStatusEvent> statuses;
    ActionComponent actions{registry, NpcId{0}, [this](const ActionStatusEvent& e) { statuses.push_back(e); },
                            TraceChannel(&log, NpcId{0})};

    ActionRequest move_to(std::vector<TilePos> path) {
        const TilePos target = path.back();
        return ActionRequest{"move-to", {{"target", target}, {"path", std::move(path)}}};
    }
};

// Ends any invocation immediately with a fixed status.
class Instant final : public RunningAction {
public:
    explicit Instant(ActionStatus s) : s_(s) {}
    ActionStatus start(const WorldState&, NpcId, std::string& reason) override {
        if (s_ == ActionStatus::Failed) reason = "nope";
        return s_;
    }
    ActionStatus step(WorldState&, NpcId, TraceChannel&, std::string&) override { return s_; }

private:
    ActionStatus s_;
};

}  // namespace

TEST_CASE("registry: builtins, duplicates and lookups") {
    ActionRegistry r = ActionRegistry::with_builtins();
    CHECK(r.contains("move-to"));
    CHECK(r.contains("traverse-door"));
    CHECK_FALSE(r.contains("fly"));
    try {
        r.register_action("move-to", [](const ActionRequest&) { return std::make_unique<Instant>(ActionStatus::Succeeded); });
        FAIL("expected DuplicateAction");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DuplicateAction);
    }
    r.register_action("wave", [](const ActionRequest&) { return std::make_unique<Instant>(ActionStatus::Succeeded); });
    CHECK(r.contains("wave"));
    CHECK(r.find("wave") != nullptr);
    CHECK(r.find("fly") == nullptr);
}

TEST_CASE("move-to an adjacent tile: Running, then Succeeded on the step") {
    Rig rig;
    const InvocationId id = rig.actions.invoke_action(rig.move_to({{2, 1}, {2, 2}}), rig.world);
    REQUIRE(rig.statuses.size() == 1);
    CHECK(rig.statuses[0].status == ActionStatus::Running);
    CHECK(rig.statuses[0].invocation == id);
    CHECK(rig.actions.busy());
    rig.actions.update(rig.world);
    REQUIRE(rig.statuses.size() == 2);
    CHECK(rig.statuses[1].status == ActionStatus::Succeeded);
    CHECK(rig.world.npc(NpcId{0}).position == TilePos{2, 2});
    CHECK_FALSE(rig.actions.busy());
}

TEST_CASE("move-to the current position succeeds immediately") {
    Rig rig;
    rig.actions.invoke_action(rig.move_to({{2, 1}}), rig.world);
    REQUIRE(rig.statuses.size() == 2);
    CHECK(rig.statuses[0].status == ActionStatus::Running);
    CHECK(rig.statuses[1].status == ActionStatus::Succeeded);
    CHECK_FALSE(rig.actions.busy());
}

TEST_CASE("move-to through a closed door fails with blocked at the door") {
    Rig rig;
    std::vector<TilePos> path;
    for (int c = 1; c <= 9; ++c) path.push_back({2, c});
    rig.actions.invoke_action(rig.move_to(path), rig.world);
    for (int t = 0; t < 10 && rig.actions.busy(); ++t) rig.actions.update(rig.world);
    REQUIRE(rig.statuses.size() == 2);
    CHECK(rig.statuses[1].status == ActionStatus::Failed);
    CHECK(rig.statuses[1].reason == "blocked");
    CHECK(rig.world.npc(NpcId{0}).position == TilePos{2, 4});
    CHECK(rig.world.npc(NpcId{0}).facing == Direction::E);
    // One Move per update: three moves then a blocked attempt.
    int moved = 0, blocked = 0;
    for (const auto& e : rig.log.take()) {
        if (e.kind != TraceKind::Move) continue;
        (e.payload["outcome"] == "moved" ? moved : blocked) += 1;
    }
    CHECK(moved == 3);
    CHECK(blocked == 1);
}

TEST_CASE("unknown action name fails with an event, not an exception") {
    Rig rig;
    CHECK_NOTHROW(rig.actions.invoke_action(ActionRequest{"fly", {}}, rig.world));
    REQUIRE(rig.statuses.size() == 2);
    CHECK(rig.statuses[1].status == ActionStatus::Failed);
    CHECK(rig.statuses[1].reason == "unknown action");
}

TEST_CASE("malformed paths fail at start") {
    Rig rig;
    rig.actions.invoke_action(rig.move_to({{3, 3}, {3, 4}}), rig.world);
    CHECK(rig.statuses.back().reason == "path does not start at npc position");
    rig.actions.invoke_action(rig.move_to({{2, 1}, {2, 3}}), rig.world);
    CHECK(rig.statuses.back().reason == "path is not 4-connected");
    rig.actions.invoke_action(ActionRequest{"move-to", {}}, rig.world);
    CHECK(rig.statuses.back().status == ActionStatus::Failed);
}

TEST_CASE("a new invocation preempts the running one") {
    Rig rig;
    const InvocationId first = rig.actions.invoke_action(rig.move_to({{2, 1}, {2, 2}, {2, 3}}), rig.world);
    const InvocationId second = rig.actions.invoke_action(rig.move_to({{2, 1}, {1, 1}}), rig.world);
    CHECK(first != second);
    REQUIRE(rig.statuses.size() == 3);
    CHECK(rig.statuses[1].invocation == first);
    CHECK(rig.statuses[1].reason == "preempted");
    CHECK(rig.actions.current() == second);
    rig.actions.cancel();
    CHECK(rig.statuses.back().invocation == second);
    CHECK(rig.statuses.back().reason == "preempted");
    CHECK_FALSE(rig.actions.busy());
}

TEST_CASE("property: every invocation ends exactly once") {
    Rig rig;
    rig.registry.register_action("ok", [](const ActionRequest&) { return std::make_unique<Instant>(ActionStatus::Succeeded); });
    rig.registry.register_action("bad", [](const ActionRequest&) { return std::make_unique<Instant>(ActionStatus::Failed); });
    const std::vector<ActionRequest> requests{
        rig.move_to({{2, 1}, {2, 2}}), ActionRequest{"ok", {}}, ActionRequest{"bad", {}}, ActionRequest{"fly", {}},
        rig.move_to({{2, 2}, {2, 3}, {2, 4}, {2, 5}}), rig.move_to({{2, 4}, {1, 4}, {1, 3}})};
    for (const auto& r : requests) {
        rig.actions.invoke_action(r, rig.world);
        rig.actions.update(rig.world);
    }
    rig.actions.cancel();
    std::map<InvocationId, int> running, terminal;
    for (const auto& s : rig.statuses) (s.terminal() ? terminal : running)[s.invocation] += 1;
    CHECK(running.size() == requests.size());
    for (const auto& [id, n] : running) {
        CHECK(n == 1);
        CHECK(terminal[id] == 1);
    }
}

TEST_CASE("status events serialize") {
    const ActionStatusEvent e{3, "move-to", ActionStatus::Failed, "blocked"};
    const Json j = e.to_json();
    CHECK(j["invocation"] == 3);
    CHECK(j["status"] == "failed");
    CHECK(j["reason"] == "blocked");
    CHECK_FALSE(ActionStatusEvent{1, "x", ActionStatus::Running, ""}.to_json().contains("reason"));
}
