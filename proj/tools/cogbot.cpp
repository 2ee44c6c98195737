#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <thread>

#include "cogbot/harness.hpp"
#include "cogbot/server.hpp"

namespace {

using namespace cogbot;

std::vector<DeliberatorKind> parse_kinds(const std::vector<std::string>& names) {
    std::vector<DeliberatorKind> out;
    for (const auto& n : names) out.push_back(deliberator_kind_from_string(n));
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CogBot GridWorld simulator"};
    app.require_subcommand(1);

    std::string map_path, scenario_path, out_path = "-", deliberator = "belief";
    Tick max_ticks = kDefaultMaxTicks;

    auto* run = app.add_subcommand("run", "Run a scenario headless and write its JSONL trace");
    run->add_option("--map", map_path, "Map file")->required()->check(CLI::ExistingFile);
    run->add_option("--scenario", scenario_path, "Scenario file")->check(CLI::ExistingFile);
    run->add_option("--deliberator", deliberator, "belief | omniscient | oblivious")
        ->check(CLI::IsMember({"belief", "omniscient", "oblivious"}));
    run->add_option("--max-ticks", max_ticks, "Tick limit")->check(CLI::PositiveNumber);
    run->add_option("-t,--trace", out_path, "Trace output path ('-' for stdout)");

    std::vector<std::string> kinds{"belief", "omniscient", "oblivious"};
    std::string npc = "npc0";
    auto* compare = app.add_subcommand("compare", "Run a scenario under several deliberators and report metrics");
    compare->add_option("--map", map_path, "Map file")->required()->check(CLI::ExistingFile);
    compare->add_option("--scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
    compare->add_option("--deliberators", kinds, "Deliberators to compare")
        ->check(CLI::IsMember({"belief", "omniscient", "oblivious"}));
    compare->add_option("--npc", npc, "NPC to measure");
    compare->add_option("--max-ticks", max_ticks, "Tick limit")->check(CLI::PositiveNumber);
    compare->add_option("-o,--out", out_path, "Report output path ('-' for stdout)");

    ServerOptions server_opts;
    double tick_rate = 4.0;
    bool paused = false;
    auto* serve = app.add_subcommand("serve", "Serve a live simulation over WebSocket");
    serve->add_option("--map", map_path, "Map file")->required()->check(CLI::ExistingFile);
    serve->add_option("--deliberator", deliberator, "belief | omniscient | oblivious")
        ->check(CLI::IsMember({"belief", "omniscient", "oblivious"}));
    serve->add_option("--address", server_opts.address, "Listen address");
    serve->add_option("--port", server_opts.port, "Listen port");
    serve->add_option("--tick-rate", tick_rate, "Ticks per second")->check(CLI::PositiveNumber);
    serve->add_flag("--paused", paused, "Start paused");

    CLI11_PARSE(app, argc, argv);

    if (*serve) {
        try {
            AgentConfig cfg;
            cfg.deliberator = deliberator_kind_from_string(deliberator);
            ServiceSession session(load_map_file(map_path), cfg, tick_rate, paused);

            sigset_t signals;
            sigemptyset(&signals);
            sigaddset(&signals, SIGINT);
            sigaddset(&signals, SIGTERM);
            pthread_sigmask(SIG_BLOCK, &signals, nullptr);

            Server server(session, server_opts);
            std::cerr << "listening on ws://" << server_opts.address << ":" << server.port() << "\n";
            std::thread waiter([&] {
                int sig = 0;
                sigwait(&signals, &sig);
                server.stop();
            });
            server.run();
            pthread_kill(waiter.native_handle(), SIGTERM);
            waiter.join();
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
        return 0;
    }

    try {
        const WorldState world = load_map_file(map_path);
        const Scenario scenario = scenario_path.empty() ? Scenario{} : load_scenario(read_text_file(scenario_path), world);
        if (*run) {
            const RunResult r = run_scenario(world, scenario, deliberator_kind_from_string(deliberator), max_ticks);
            write_text(out_path, render_trace(r.events));
            std::cerr << "ended: " << r.end_reason << " after " << r.ticks << " ticks\n";
        } else if (*compare) {
            const auto report = compare_deliberators(world, scenario, parse_kinds(kinds), parse_npc_id(npc), max_ticks);
            write_text(out_path, report.to_json().dump(2) + "\n");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
