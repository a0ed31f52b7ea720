#pragma once

#include "dcled/field.hpp"
#include "dcled/store.hpp"
#include "dcled/wire.hpp"

#include <cstdint>
#include <filesystem>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

namespace dcled {

// A daemon knows only its own listen address and data directory. It has no
// notion of peers: the separation between servers is structural.
struct DaemonConfig {
    std::string listen_addr = "127.0.0.1";
    std::uint16_t port = 0;  // 0 picks an ephemeral port
    std::filesystem::path data_dir;
    u128 modulus = Field::default_modulus();
};

class Daemon {
public:
    // Opens (and recovers) the share store; the socket is not bound yet.
    explicit Daemon(DaemonConfig cfg);
    ~Daemon();

    Daemon(const Daemon&) = delete;
    Daemon& operator=(const Daemon&) = delete;

    void start();  // binds, listens, begins accepting
    void stop();   // stops accepting, closes live connections, joins

    std::uint16_t port() const;  // valid after start()

    // Request handling, exposed for in-process use: the wire layer is a
    // thin shell around this.
    wire::Response handle(const wire::Request& request);

private:
    struct Conn;

    void accept_loop();
    void reap_finished();
    void serve(Conn* conn);

    DaemonConfig cfg_;
    Field field_;
    ShareStore store_;

    std::mutex mu_;
    int listen_fd_ = -1;
    std::uint16_t port_ = 0;
    bool stopping_ = false;
    std::thread acceptor_;
    std::list<std::unique_ptr<Conn>> conns_;
};

}  // namespace dcled
