#include "cogbot/server.hpp"

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/steady_timer.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include <deque>
#include <set>

namespace cogbot {

namespace beast = boost::beast;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

class Hub;

class Connection : public std::enable_shared_from_this<Connection> {
public:
    Connection(tcp::socket socket, Hub& hub) : ws_(std::move(socket)), hub_(hub) {}

    void start();
    // A null message queues a ping frame.
    void send(std::shared_ptr<const std::string> message);
    void close();

private:
    void on_accept(beast::error_code ec);
    void do_read();
    void on_read(beast::error_code ec);
    void do_write();
    void on_write(beast::error_code ec);
    void fail();

    websocket::stream<beast::tcp_stream> ws_;
    beast::flat_buffer buffer_;
    std::deque<std::shared_ptr<const std::string>> outbox_;
    Hub& hub_;
    bool open_ = false;
};

class Hub {
public:
    Hub(ServiceSession& session, const ServerOptions& options)
        : session_(session),
          options_(options),
          acceptor_(ioc_),
          tick_timer_(ioc_),
          heartbeat_timer_(ioc_) {
        const tcp::endpoint ep(net::ip::make_address(options.address), options.port);
        acceptor_.open(ep.protocol());
        acceptor_.set_option(net::socket_base::reuse_address(true));
        acceptor_.bind(ep);
        acceptor_.listen();
    }

    std::uint16_t port() const { return acceptor_.local_endpoint().port(); }

    void run() {
        do_accept();
        arm_tick();
        arm_heartbeat();
        ioc_.run();
    }

    void stop() {
        net::post(ioc_, [this] {
            beast::error_code ec;
            acceptor_.close(ec);
            tick_timer_.cancel();
            heartbeat_timer_.cancel();
            for (const auto& c : std::set(connections_)) c->close();
            connections_.clear();
        });
    }

    ServiceSession& session() { return session_; }

    void join(const std::shared_ptr<Connection>& c) { connections_.insert(c); }
    void leave(const std::shared_ptr<Connection>& c) { connections_.erase(c); }

    void broadcast(const Json& message) {
        auto text = std::make_shared<const std::string>(message.dump());
        for (const auto& c : connections_) c->send(text);
    }

private:
    void do_accept() {
        acceptor_.async_accept(ioc_, [this](beast::error_code ec, tcp::socket socket) {
            if (ec) return;
            std::make_shared<Connection>(std::move(socket), *this)->start();
            do_accept();
        });
    }

    void arm_tick() {
        const bool paused = session_.paused();
        const auto period = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
            std::chrono::duration<double>(1.0 / session_.tick_rate()));
        tick_timer_.expires_after(paused ? std::min(period, kPausedPoll) : period);
        tick_timer_.async_wait([this](beast::error_code ec) {
            if (ec) return;
            if (!session_.paused()) {
                for (const Json& m : session_.step()) broadcast(m);
            }
            arm_tick();
        });
    }

    void arm_heartbeat() {
        heartbeat_timer_.expires_after(options_.heartbeat);
        heartbeat_timer_.async_wait([this](beast::error_code ec) {
            if (ec) return;
            for (const auto& c : connections_) c->send(nullptr);
            arm_heartbeat();
        });
    }

    static constexpr std::chrono::steady_clock::duration kPausedPoll = std::chrono::milliseconds(20);

    ServiceSession& session_;
    ServerOptions options_;
    net::io_context ioc_{1};
    tcp::acceptor acceptor_;
    net::steady_timer tick_timer_;
    net::steady_timer heartbeat_timer_;
    std::set<std::shared_ptr<Connection>> connections_;
};

void Connection::start() {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept([self = shared_from_this()](beast::error_code ec) { self->on_accept(ec); });
}

void Connection::on_accept(beast::error_code ec) {
    if (ec) return;
    open_ = true;
    hub_.join(shared_from_this());
    send(std::make_shared<const std::string>(hub_.session().hello().dump()));
    send(std::make_shared<const std::string>(hub_.session().latest_snapshot().dump()));
    do_read();
}

void Connection::do_read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) { self->on_read(ec); });
}

void Connection::on_read(beast::error_code ec) {
    if (ec) return fail();
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    send(std::make_shared<const std::string>(hub_.session().enqueue(text).dump()));
    do_read();
}

void Connection::send(std::shared_ptr<const std::string> message) {
    if (!open_) return;
    outbox_.push_back(std::move(message));
    if (outbox_.size() == 1) do_write();
}

void Connection::do_write() {
    auto self = shared_from_this();
    if (outbox_.front() == nullptr) {
        ws_.async_ping({}, [self](beast::error_code ec) { self->on_write(ec); });
        return;
    }
    ws_.text(true);
    auto message = outbox_.front();
    ws_.async_write(net::buffer(*message),
                    [self, message](beast::error_code ec, std::size_t) { self->on_write(ec); });
}

void Connection::on_write(beast::error_code ec) {
    if (ec) return fail();
    if (!open_) return;
    outbox_.pop_front();
    if (!outbox_.empty()) do_write();
}

void Connection::close() {
    if (!open_) return;
    open_ = false;
    outbox_.clear();
    beast::error_code ec;
    beast::get_lowest_layer(ws_).socket().shutdown(tcp::socket::shutdown_both, ec);
    beast::get_lowest_layer(ws_).close();
}

void Connection::fail() {
    const bool was_open = open_;
    open_ = false;
    outbox_.clear();
    if (was_open) hub_.leave(shared_from_this());
}

}  // namespace

struct Server::Impl {
    Impl(ServiceSession& s, const ServerOptions& o) : hub(s, o) {}
    Hub hub;
};

Server::Server(ServiceSession& session, ServerOptions options)
    : impl_(std::make_unique<Impl>(session, options)) {}

Server::~Server() = default;

std::uint16_t Server::port() const { return impl_->hub.port(); }

void Server::run() { impl_->hub.run(); }

void Server::stop() { impl_->hub.stop(); }

}  // namespace cogbot
