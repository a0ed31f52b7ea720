// dcledd: one share server. It listens on a TCP port, persists STORE'd
// shares in an append-only log under its data directory, and answers EVAL
// requests. Run one instance per role, each with its own directory; the
// daemons never talk to each other.
//
// The data directory comes from --data-dir or, failing that, from the
// DCLEDD_DATA_DIR environment variable. With --port 0 (the default) the
// kernel picks a free port; the chosen endpoint is printed to stdout as
//   listening on 127.0.0.1:41234
// so wrappers can scrape it. SIGINT or SIGTERM shuts down cleanly.
//
// Exit codes: 0 clean shutdown, 2 usage error, 3 could not bind or listen,
// 4 data directory or store failure.

#include "dcled/field.hpp"
#include "dcled/server.hpp"
#include "dcled/util.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <system_error>

int main(int argc, char** argv) {
    CLI::App app{"dcled share server"};
    std::string listen = "127.0.0.1";
    std::uint16_t port = 0;
    std::string data_dir;
    std::string modulus;
    app.add_option("--listen", listen, "Address to bind")->capture_default_str();
    app.add_option("--port", port, "TCP port; 0 picks a free port")->capture_default_str();
    app.add_option("--data-dir", data_dir, "Directory for the share log")
        ->envname("DCLEDD_DATA_DIR")
        ->required();
    app.add_option("--modulus", modulus, "Field modulus, decimal or 0x-hex");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    dcled::DaemonConfig cfg;
    cfg.listen_addr = listen;
    cfg.port = port;
    cfg.data_dir = data_dir;
    if (!modulus.empty()) {
        try {
            cfg.modulus = dcled::parse_u128(modulus);
            (void)dcled::Field(cfg.modulus);
        } catch (const std::invalid_argument& e) {
            std::cerr << "dcledd: --modulus: " << e.what() << "\n";
            return 2;
        }
    }

    // Block the shutdown signals before any thread exists so every daemon
    // thread inherits the mask and sigwait below is their only consumer.
    sigset_t stop_signals;
    sigemptyset(&stop_signals);
    sigaddset(&stop_signals, SIGINT);
    sigaddset(&stop_signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

    std::error_code ec;
    std::filesystem::create_directories(cfg.data_dir, ec);
    if (ec) {
        std::cerr << "dcledd: " << cfg.data_dir.string() << ": " << ec.message() << "\n";
        return 4;
    }

    std::unique_ptr<dcled::Daemon> daemon;
    try {
        daemon = std::make_unique<dcled::Daemon>(cfg);
    } catch (const std::exception& e) {
        std::cerr << "dcledd: " << e.what() << "\n";
        return 4;
    }
    try {
        daemon->start();
    } catch (const std::exception& e) {
        std::cerr << "dcledd: " << e.what() << "\n";
        return 3;
    }
    std::cout << "listening on " << cfg.listen_addr << ":" << daemon->port() << std::endl;

    int sig = 0;
    sigwait(&stop_signals, &sig);
    daemon->stop();
    return 0;
}
