#include "dcled/server.hpp"

#include "dcled/program.hpp"
#include "dcled/scheme2s.hpp"
#include "dcled/scheme2v.hpp"
#include "dcled/schemeds.hpp"
#include "socket.hpp"

#include <sys/socket.h>

#include <atomic>
#include <system_error>
#include <utility>
#include <vector>

namespace dcled {

namespace {

wire::Response ok() { return {wire::Response::Kind::ok, {}, {}, {}}; }

wire::Response result(std::vector<std::uint8_t> payload) {
    return {wire::Response::Kind::result, std::move(payload), {}, {}};
}

wire::Response err(std::string code, std::string detail) {
    return {wire::Response::Kind::err, {}, std::move(code), std::move(detail)};
}

// Validates that the share bytes parse as the declared scheme and role.
void check_share(const Field& f, Scheme scheme, std::uint8_t role,
                 std::span<const std::uint8_t> share) {
    switch (scheme) {
        case Scheme::two_server:
            if (role > 2) throw std::invalid_argument("role must be 1 or 2");
            if (role == 1)
                (void)parse_share1(f, share);
            else
                (void)parse_share2(f, share);
            return;
        case Scheme::two_server_verified:
            if (role > 2) throw std::invalid_argument("role must be 1 or 2");
            if (role == 1)
                (void)parse_vshare1(f, share);
            else
                (void)parse_vshare2(f, share);
            return;
        case Scheme::d_server: {
            const ShareRow row = parse_share_row(f, share);
            if (role > row.entries.size())
                throw std::invalid_argument("role exceeds the row width");
            return;
        }
        case Scheme::d_server_verified: {
            const TagRow row = parse_tag_row(f, share);
            if (role > row.entries.size())
                throw std::invalid_argument("role exceeds the row width");
            return;
        }
    }
    throw std::invalid_argument("unknown scheme");
}

// Fetches the stored shares for every program label, enforcing a uniform
// role. Returns an error response in `failure` when something is missing.
bool collect_shares(const ShareStore& store, Scheme scheme, std::uint8_t role,
                    std::span<const std::string> labels,
                    std::vector<std::vector<std::uint8_t>>& out, wire::Response& failure) {
    std::string missing;
    for (const auto& label : labels) {
        const auto rec = store.get(scheme, label);
        if (!rec) {
            if (!missing.empty()) missing += ',';
            missing += label;
            continue;
        }
        if (rec->role != role) {
            failure = err("bad-request",
                          "label " + label + " is stored for role " + std::to_string(rec->role));
            return false;
        }
        out.push_back(rec->share);
    }
    if (!missing.empty()) {
        failure = err("missing-label", missing);
        return false;
    }
    return true;
}

}  // namespace

struct Daemon::Conn {
    detail::Fd fd;
    std::thread thread;
    std::atomic<bool> done{false};
};

Daemon::Daemon(DaemonConfig cfg)
    : cfg_(std::move(cfg)), field_(cfg_.modulus), store_(cfg_.data_dir) {}

Daemon::~Daemon() { stop(); }

void Daemon::start() {
    detail::Fd fd = detail::listen_on(cfg_.listen_addr, cfg_.port);
    {
        std::lock_guard lock(mu_);
        port_ = detail::local_port(fd.get());
        listen_fd_ = fd.get();
        stopping_ = false;
    }
    acceptor_ = std::thread([this, fd = std::move(fd)]() mutable {
        (void)fd;  // owns the listening socket for the loop's lifetime
        accept_loop();
    });
}

void Daemon::stop() {
    {
        std::lock_guard lock(mu_);
        if (stopping_) return;
        stopping_ = true;
        if (listen_fd_ >= 0) ::shutdown(listen_fd_, SHUT_RDWR);
    }
    if (acceptor_.joinable()) acceptor_.join();
    std::list<std::unique_ptr<Conn>> conns;
    {
        std::lock_guard lock(mu_);
        conns.swap(conns_);
    }
    for (auto& conn : conns) {
        ::shutdown(conn->fd.get(), SHUT_RDWR);
        if (conn->thread.joinable()) conn->thread.join();
    }
}

std::uint16_t Daemon::port() const { return port_; }

void Daemon::accept_loop() {
    for (;;) {
        int listen_fd;
        {
            std::lock_guard lock(mu_);
            if (stopping_) return;
            listen_fd = listen_fd_;
        }
        detail::Fd client(::accept(listen_fd, nullptr, nullptr));
        reap_finished();
        if (!client) {
            std::lock_guard lock(mu_);
            if (stopping_) return;
            continue;
        }
        auto conn = std::make_unique<Conn>();
        conn->fd = std::move(client);
        Conn* raw = conn.get();
        {
            std::lock_guard lock(mu_);
            if (stopping_) return;
            try {
                raw->thread = std::thread([this, raw] { serve(raw); });
            } catch (...) {
                continue;  // out of thread resources: drop this connection
            }
            conns_.push_back(std::move(conn));
        }
    }
}

// Joins and discards connections whose serving thread has already exited,
// so a long-lived daemon does not accumulate dead records.
void Daemon::reap_finished() {
    std::list<std::unique_ptr<Conn>> finished;
    {
        std::lock_guard lock(mu_);
        for (auto it = conns_.begin(); it != conns_.end();) {
            if ((*it)->done.load()) {
                finished.push_back(std::move(*it));
                it = conns_.erase(it);
            } else {
                ++it;
            }
        }
    }
    for (auto& conn : finished)
        if (conn->thread.joinable()) conn->thread.join();
}

void Daemon::serve(Conn* conn) {
    try {
        detail::send_all(conn->fd.get(), std::string(wire::kGreeting) + "\n");
        detail::LineReader reader(conn->fd.get(), wire::kMaxLine);
        std::string line;
        while (reader.read_line(line)) {
            wire::Response response;
            std::string detail;
            if (const auto request = wire::parse_request(line, detail)) {
                response = handle(*request);
            } else {
                // An undecodable payload is a malformed share or program;
                // anything else wrong with the frame is a bad request.
                response = err(detail == "payload is not valid hex" ? "malformed" : "bad-request",
                               detail);
            }
            detail::send_all(conn->fd.get(), wire::format(response));
        }
    } catch (...) {
        // Connection-level failure: drop the connection, keep the daemon up.
    }
    conn->done.store(true);
}

wire::Response Daemon::handle(const wire::Request& request) {
    try {
        if (request.verb == wire::Request::Verb::store) {
            try {
                check_share(field_, request.scheme, request.role, request.payload);
            } catch (const std::invalid_argument& e) {
                return err("malformed", e.what());
            }
            if (!store_.put(request.scheme, request.role, request.label, request.payload))
                return err("duplicate", "label already stored for this scheme");
            return ok();
        }

        Program program;
        try {
            program = parse_program(field_, request.payload);
        } catch (const std::invalid_argument& e) {
            return err("malformed", e.what());
        }

        const Field& f = field_;
        const std::uint8_t role = request.role;
        switch (request.scheme) {
            case Scheme::two_server:
            case Scheme::two_server_verified: {
                const auto* quad = std::get_if<QuadraticProgram>(&program);
                if (!quad)
                    return err("unsupported", "scheme evaluates quadratic programs only");
                if (role > 2) return err("bad-request", "role must be 1 or 2");
                std::vector<std::vector<std::uint8_t>> shares;
                wire::Response failure;
                if (!collect_shares(store_, request.scheme, role, quad->labels, shares, failure))
                    return failure;
                if (request.scheme == Scheme::two_server) {
                    Fe value;
                    if (role == 1) {
                        std::vector<Share1> parsed;
                        for (const auto& s : shares) parsed.push_back(parse_share1(f, s));
                        value = eval1(f, *quad, parsed);
                    } else {
                        std::vector<Share2> parsed;
                        for (const auto& s : shares) parsed.push_back(parse_share2(f, s));
                        value = eval2(f, *quad, parsed);
                    }
                    return result(f.encode(value));
                }
                Poly tag;
                if (role == 1) {
                    std::vector<VShare1> parsed;
                    for (const auto& s : shares) parsed.push_back(parse_vshare1(f, s));
                    tag = veval1(f, *quad, parsed);
                } else {
                    std::vector<VShare2> parsed;
                    for (const auto& s : shares) parsed.push_back(parse_vshare2(f, s));
                    tag = veval2(f, *quad, parsed);
                }
                return result(serialize(f, tag));
            }
            case Scheme::d_server:
            case Scheme::d_server_verified: {
                const auto* mono = std::get_if<MonomialProgram>(&program);
                if (!mono)
                    return err("unsupported", "scheme evaluates full-product monomials only");
                const std::size_t d = mono->labels.size();
                if (d < 2 || d > kMaxServers)
                    return err("unsupported", "monomial degree out of the supported range");
                if (role > d) return err("bad-request", "role exceeds the server count");
                std::vector<std::vector<std::uint8_t>> shares;
                wire::Response failure;
                if (!collect_shares(store_, request.scheme, role, mono->labels, shares, failure))
                    return failure;
                if (request.scheme == Scheme::d_server) {
                    ShareMatrix view;
                    view.server = role;
                    for (const auto& s : shares) {
                        ShareRow row = parse_share_row(f, s);
                        if (row.entries.size() != d)
                            return err("bad-request", "stored row width does not match the program");
                        view.rows.push_back(std::move(row));
                    }
                    return result(f.encode(compute_Sj(f, view)));
                }
                VdsShareMatrix view;
                view.server = role;
                for (const auto& s : shares) {
                    TagRow row = parse_tag_row(f, s);
                    if (row.entries.size() != d)
                        return err("bad-request", "stored row width does not match the program");
                    view.rows.push_back(std::move(row));
                }
                return result(serialize(f, compute_Sj_tags(f, view)));
            }
        }
        return err("bad-request", "unknown scheme");
    } catch (const std::system_error& e) {
        return err("io", e.what());
    } catch (const std::exception& e) {
        return err("internal", e.what());
    }
}

}  // namespace dcled
