#include "dcled/client.hpp"

#include "dcled/poly.hpp"
#include "socket.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <system_error>
#include <thread>
#include <utility>

namespace dcled {

RemoteError::RemoteError(std::string code, const std::string& detail)
    : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

struct Connection::Impl {
    detail::Fd fd;
    detail::LineReader reader;
    explicit Impl(detail::Fd f) : fd(std::move(f)), reader(fd.get(), wire::kMaxLine) {}
};

Connection::Connection(const Endpoint& ep, int timeout_ms) {
    try {
        impl_ = std::make_unique<Impl>(detail::connect_to(ep.host, ep.port, timeout_ms));
        std::string greeting;
        if (!impl_->reader.read_line(greeting))
            throw TransportError("connection closed before the greeting");
        if (greeting != wire::kGreeting)
            throw TransportError("unexpected greeting: " + greeting);
    } catch (const std::system_error& e) {
        throw TransportError(e.what());
    }
}

Connection::~Connection() = default;
Connection::Connection(Connection&&) noexcept = default;
Connection& Connection::operator=(Connection&&) noexcept = default;

wire::Response Connection::roundtrip(const wire::Request& request) {
    try {
        detail::send_all(impl_->fd.get(), wire::format(request));
        std::string line;
        if (!impl_->reader.read_line(line))
            throw TransportError("connection closed before the response");
        return wire::parse_response(line);
    } catch (const std::system_error& e) {
        throw TransportError(e.what());
    } catch (const std::length_error& e) {
        throw TransportError(e.what());
    } catch (const std::invalid_argument& e) {
        throw TransportError(std::string("malformed response: ") + e.what());
    }
}

void Connection::store(Scheme scheme, std::uint8_t role, std::string_view label,
                       std::span<const std::uint8_t> share) {
    wire::Request r;
    r.verb = wire::Request::Verb::store;
    r.scheme = scheme;
    r.role = role;
    r.label = std::string(label);
    r.payload.assign(share.begin(), share.end());
    const wire::Response resp = roundtrip(r);
    if (resp.kind == wire::Response::Kind::err) throw RemoteError(resp.code, resp.detail);
    if (resp.kind != wire::Response::Kind::ok)
        throw TransportError("store answered with a result frame");
}

std::vector<std::uint8_t> Connection::eval(Scheme scheme, std::uint8_t role,
                                           std::span<const std::uint8_t> program) {
    wire::Request r;
    r.verb = wire::Request::Verb::eval;
    r.scheme = scheme;
    r.role = role;
    r.payload.assign(program.begin(), program.end());
    wire::Response resp = roundtrip(r);
    if (resp.kind == wire::Response::Kind::err) throw RemoteError(resp.code, resp.detail);
    if (resp.kind != wire::Response::Kind::result)
        throw TransportError("eval answered without a result");
    return std::move(resp.payload);
}

namespace {

// Runs fn on a fresh connection, retrying transport failures up to the
// policy's attempt budget. Refusals propagate immediately.
template <class Fn>
auto with_retries(const Endpoint& ep, const RetryPolicy& retry, Fn&& fn) {
    const int attempts = std::max(1, retry.attempts);
    for (int attempt = 1;; ++attempt) {
        try {
            Connection conn(ep, retry.timeout_ms);
            return fn(conn);
        } catch (const TransportError&) {
            if (attempt >= attempts) throw;
            if (retry.backoff_ms > 0)
                std::this_thread::sleep_for(std::chrono::milliseconds(retry.backoff_ms));
        }
    }
}

void store_at(const Endpoint& ep, const RetryPolicy& retry, Scheme scheme, std::uint8_t role,
              std::string_view label, std::span<const std::uint8_t> share) {
    with_retries(ep, retry, [&](Connection& conn) {
        conn.store(scheme, role, label, share);
        return 0;
    });
}

std::vector<std::uint8_t> eval_at(const Endpoint& ep, const RetryPolicy& retry, Scheme scheme,
                                  std::uint8_t role, std::span<const std::uint8_t> program) {
    return with_retries(ep, retry,
                        [&](Connection& conn) { return conn.eval(scheme, role, program); });
}

// Waits on every task, then rethrows the first failure. Settling all tasks
// first keeps pending connections from outliving the call.
void join_all(std::vector<std::future<void>>& futures) {
    std::exception_ptr first_error;
    for (auto& fut : futures) {
        try {
            fut.get();
        } catch (...) {
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
}

// Issues one EVAL per server in parallel and returns the payloads in server
// order. Any failure propagates once every task has settled.
std::vector<std::vector<std::uint8_t>> fan_out_eval(std::span<const Endpoint> servers,
                                                    const RetryPolicy& retry, Scheme scheme,
                                                    std::span<const std::uint8_t> program) {
    std::vector<std::vector<std::uint8_t>> payloads(servers.size());
    std::vector<std::future<void>> futures;
    futures.reserve(servers.size());
    for (std::size_t j = 0; j < servers.size(); ++j)
        futures.push_back(std::async(std::launch::async, [&, j] {
            payloads[j] =
                eval_at(servers[j], retry, scheme, static_cast<std::uint8_t>(j + 1), program);
        }));
    join_all(futures);
    return payloads;
}

// STORE fan-out over parallel label/share lists: shares[j] goes to
// servers[j] as role j+1 under labels[j].
void fan_out_store(std::span<const Endpoint> servers, const RetryPolicy& retry, Scheme scheme,
                   std::span<const std::string_view> labels,
                   std::span<const std::vector<std::uint8_t>> shares) {
    std::vector<std::future<void>> futures;
    futures.reserve(servers.size());
    for (std::size_t j = 0; j < servers.size(); ++j)
        futures.push_back(std::async(std::launch::async, [&, j] {
            store_at(servers[j], retry, scheme, static_cast<std::uint8_t>(j + 1), labels[j],
                     shares[j]);
        }));
    join_all(futures);
}

void check_server_count(std::size_t servers, std::size_t want) {
    if (servers != want)
        throw std::invalid_argument("need exactly " + std::to_string(want) + " servers, got " +
                                    std::to_string(servers));
}

}  // namespace

void upload2s(const Field& f, const std::array<Endpoint, 2>& servers, const TwoServerKey& key,
              std::string_view label, Fe value, const RetryPolicy& retry) {
    const auto [s1, s2] = encrypt2s(f, key, label, value);
    const std::vector<std::vector<std::uint8_t>> shares = {serialize(f, s1), serialize(f, s2)};
    const std::array<std::string_view, 2> labels = {label, label};
    fan_out_store(servers, retry, Scheme::two_server, labels, shares);
}

void upload2v(const Field& f, const std::array<Endpoint, 2>& servers, const VerifiableKey& key,
              std::string_view label, Fe value, const RetryPolicy& retry) {
    const auto [s1, s2] = vencrypt(f, key, label, value);
    const std::vector<std::vector<std::uint8_t>> shares = {serialize(f, s1), serialize(f, s2)};
    const std::array<std::string_view, 2> labels = {label, label};
    fan_out_store(servers, retry, Scheme::two_server_verified, labels, shares);
}

void upload_ds(const Field& f, std::span<const Endpoint> servers, const PrfKey& key,
               std::span<const std::string> labels, std::span<const Fe> values,
               const RetryPolicy& retry) {
    check_server_count(servers.size(), labels.size());
    const std::vector<ShareMatrix> views = ds_encrypt(f, key, labels, values);
    std::vector<std::future<void>> futures;
    futures.reserve(servers.size());
    for (std::size_t j = 0; j < servers.size(); ++j)
        futures.push_back(std::async(std::launch::async, [&, j] {
            with_retries(servers[j], retry, [&](Connection& conn) {
                for (std::size_t i = 0; i < labels.size(); ++i)
                    conn.store(Scheme::d_server, static_cast<std::uint8_t>(j + 1), labels[i],
                               serialize(f, views[j].rows[i]));
                return 0;
            });
        }));
    join_all(futures);
}

void upload_vds(const Field& f, std::span<const Endpoint> servers, const VdsKey& key,
                std::span<const std::string> labels, std::span<const Fe> values,
                const RetryPolicy& retry) {
    check_server_count(servers.size(), labels.size());
    const std::vector<VdsShareMatrix> views = vds_encrypt(f, key, labels, values);
    std::vector<std::future<void>> futures;
    futures.reserve(servers.size());
    for (std::size_t j = 0; j < servers.size(); ++j)
        futures.push_back(std::async(std::launch::async, [&, j] {
            with_retries(servers[j], retry, [&](Connection& conn) {
                for (std::size_t i = 0; i < labels.size(); ++i)
                    conn.store(Scheme::d_server_verified, static_cast<std::uint8_t>(j + 1),
                               labels[i], serialize(f, views[j].rows[i]));
                return 0;
            });
        }));
    join_all(futures);
}

Fe delegate2s(const Field& f, const std::array<Endpoint, 2>& servers, const TwoServerKey& key,
              const QuadraticProgram& p, const RetryPolicy& retry) {
    const std::vector<std::uint8_t> program = serialize(f, p);
    const auto payloads = fan_out_eval(servers, retry, Scheme::two_server, program);
    return decrypt2s(f, key, p, f.decode(payloads[0]), f.decode(payloads[1]));
}

VerifyOutcome delegate2v(const Field& f, const std::array<Endpoint, 2>& servers,
                         const VerifiableKey& key, const QuadraticProgram& p,
                         const RetryPolicy& retry) {
    const std::vector<std::uint8_t> program = serialize(f, p);
    const auto payloads = fan_out_eval(servers, retry, Scheme::two_server_verified, program);
    return vdecrypt(f, key, p, parse_poly(f, payloads[0]), parse_poly(f, payloads[1]));
}

Fe delegate_ds(const Field& f, std::span<const Endpoint> servers, const PrfKey& key,
               const MonomialProgram& p, const RetryPolicy& retry) {
    check_server_count(servers.size(), p.labels.size());
    const std::vector<std::uint8_t> program = serialize(f, p);
    const auto payloads = fan_out_eval(servers, retry, Scheme::d_server, program);
    std::vector<Fe> responses;
    responses.reserve(payloads.size());
    for (const auto& payload : payloads) responses.push_back(f.decode(payload));
    return ds_reconstruct(f, key, p.labels, responses);
}

VdsOutcome delegate_vds(const Field& f, std::span<const Endpoint> servers, const VdsKey& key,
                        const MonomialProgram& p, const RetryPolicy& retry) {
    check_server_count(servers.size(), p.labels.size());
    const std::vector<std::uint8_t> program = serialize(f, p);
    const auto payloads = fan_out_eval(servers, retry, Scheme::d_server_verified, program);
    std::vector<Poly> responses;
    responses.reserve(payloads.size());
    for (const auto& payload : payloads) responses.push_back(parse_poly(f, payload));
    return vds_decrypt(f, key, p.labels, responses);
}

}  // namespace dcled
