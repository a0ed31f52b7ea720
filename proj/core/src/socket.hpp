#pragma once

// Minimal POSIX socket helpers shared by the daemon and the client.

#include <cstdint>
#include <string>
#include <string_view>

namespace dcled::detail {

// RAII file descriptor.
class Fd {
public:
    Fd() = default;
    explicit Fd(int fd) : fd_(fd) {}
    Fd(Fd&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }
    Fd& operator=(Fd&& other) noexcept;
    ~Fd() { reset(); }
    int get() const { return fd_; }
    explicit operator bool() const { return fd_ >= 0; }
    void reset(int fd = -1);

private:
    int fd_ = -1;
};

// Throws std::system_error on failure.
Fd listen_on(const std::string& addr, std::uint16_t port);
std::uint16_t local_port(int fd);
Fd connect_to(const std::string& host, std::uint16_t port, int timeout_ms);

// Full send; throws std::system_error.
void send_all(int fd, std::string_view data);

// Buffered newline framing. read_line() strips the trailing '\n' and
// returns false on orderly EOF; lines beyond max_line throw.
class LineReader {
public:
    explicit LineReader(int fd, std::size_t max_line) : fd_(fd), max_(max_line) {}
    bool read_line(std::string& out);

private:
    int fd_;
    std::size_t max_;
    std::string buf_;
};

}  // namespace dcled::detail
