#pragma once

#include "dcled/field.hpp"
#include "dcled/program.hpp"
#include "dcled/scheme2s.hpp"
#include "dcled/scheme2v.hpp"
#include "dcled/schemeds.hpp"
#include "dcled/wire.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dcled {

struct Endpoint {
    std::string host;
    std::uint16_t port = 0;
};

// The daemon could not be reached or the conversation broke down mid-frame.
// Retryable: a fresh connection may succeed.
class TransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The daemon understood the request and refused it. code() is the machine
// readable reason from the ERR frame; the same request will fail the same
// way again.
class RemoteError : public std::runtime_error {
public:
    RemoteError(std::string code, const std::string& detail);
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

struct RetryPolicy {
    int attempts = 1;        // total connection attempts per request
    int timeout_ms = 10000;  // per socket operation
    int backoff_ms = 100;    // pause between attempts
};

// One conversation with one daemon: connects, checks the greeting, then
// issues one request per call. Reusable for many requests in sequence; not
// safe to share across threads.
class Connection {
public:
    Connection(const Endpoint& ep, int timeout_ms = 10000);
    ~Connection();
    Connection(Connection&&) noexcept;
    Connection& operator=(Connection&&) noexcept;

    void store(Scheme scheme, std::uint8_t role, std::string_view label,
               std::span<const std::uint8_t> share);
    std::vector<std::uint8_t> eval(Scheme scheme, std::uint8_t role,
                                   std::span<const std::uint8_t> program);

private:
    struct Impl;
    wire::Response roundtrip(const wire::Request& request);
    std::unique_ptr<Impl> impl_;
};

// High-level delegation. Every helper fans out to all servers in parallel
// and is all-or-nothing: the first failure aborts the whole call. Transport
// failures are retried per RetryPolicy; refusals (RemoteError) are not.
// Uploads that fail part-way may leave shares on a subset of servers; the
// store is append-only, so recover by choosing a fresh label.
//
// Server order is binding: servers[0] plays role 1, servers[1] role 2, and
// so on. The same order must be used for upload and delegate.

void upload2s(const Field& f, const std::array<Endpoint, 2>& servers, const TwoServerKey& key,
              std::string_view label, Fe value, const RetryPolicy& retry = {});
void upload2v(const Field& f, const std::array<Endpoint, 2>& servers, const VerifiableKey& key,
              std::string_view label, Fe value, const RetryPolicy& retry = {});

// The d-server schemes share one batch of d labeled values across d servers
// (labels.size() == values.size() == servers.size()).
void upload_ds(const Field& f, std::span<const Endpoint> servers, const PrfKey& key,
               std::span<const std::string> labels, std::span<const Fe> values,
               const RetryPolicy& retry = {});
void upload_vds(const Field& f, std::span<const Endpoint> servers, const VdsKey& key,
                std::span<const std::string> labels, std::span<const Fe> values,
                const RetryPolicy& retry = {});

Fe delegate2s(const Field& f, const std::array<Endpoint, 2>& servers, const TwoServerKey& key,
              const QuadraticProgram& p, const RetryPolicy& retry = {});
VerifyOutcome delegate2v(const Field& f, const std::array<Endpoint, 2>& servers,
                         const VerifiableKey& key, const QuadraticProgram& p,
                         const RetryPolicy& retry = {});
Fe delegate_ds(const Field& f, std::span<const Endpoint> servers, const PrfKey& key,
               const MonomialProgram& p, const RetryPolicy& retry = {});
VdsOutcome delegate_vds(const Field& f, std::span<const Endpoint> servers, const VdsKey& key,
                        const MonomialProgram& p, const RetryPolicy& retry = {});

}  // namespace dcled
