#pragma once

// WebSocket front end for a ServiceSession. One io_context thread runs the tick
// timer, every connection and all broadcasts.

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>

#include "cogbot/protocol.hpp"

namespace cogbot {

struct ServerOptions {
    std::string address = "127.0.0.1";
    std::uint16_t port = 8765;  // 0 picks a free port
    std::chrono::milliseconds heartbeat{1000};
};

class Server {
public:
    Server(ServiceSession& session, ServerOptions options);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Port actually bound; valid after construction.
    std::uint16_t port() const;

    /// Serves until stop() is called. On connect a client receives "hello" and the
    /// latest snapshot; afterwards every tick's trace messages and snapshot.
    void run();

    /// Safe to call from any thread.
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace cogbot
