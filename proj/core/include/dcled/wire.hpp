#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dcled {

// Wire identifiers for the four share schemes.
enum class Scheme : std::uint8_t { two_server = 1, two_server_verified = 2, d_server = 3, d_server_verified = 4 };

std::string_view scheme_token(Scheme s);
std::optional<Scheme> scheme_from_token(std::string_view token);

namespace wire {

// Protocol: newline-delimited text frames over a stream socket. The server
// opens every connection with a greeting line; after that, each request line
// gets exactly one response line. Binary payloads travel as lowercase hex so
// frames stay 7-bit clean.
//
//   greeting:  DCLED/1
//   requests:  STORE <scheme> <role> <label> <share-hex>
//              EVAL <scheme> <role> <program-hex>
//   responses: OK
//              RESULT <payload-hex>
//              ERR <code> <detail...>
inline constexpr std::string_view kGreeting = "DCLED/1";

// Upper bound on any single frame; a full quadratic program over 1000
// inputs is ~24 MB of hex.
inline constexpr std::size_t kMaxLine = 64u << 20;

// Labels are client-chosen identifiers: 1..255 bytes of UTF-8 with no
// control characters or whitespace (frames are space-delimited).
bool valid_label(std::string_view label);

struct Request {
    enum class Verb { store, eval };
    Verb verb{};
    Scheme scheme{};
    std::uint8_t role = 0;
    std::string label;                  // store only
    std::vector<std::uint8_t> payload;  // share bytes or serialized program
};

struct Response {
    enum class Kind { ok, result, err };
    Kind kind{};
    std::vector<std::uint8_t> payload;  // result only
    std::string code;                   // err only
    std::string detail;
};

std::string format(const Request& r);
std::string format(const Response& r);

// Parse one frame (without the trailing newline). On failure returns
// nullopt and sets `detail` to a human-readable reason.
std::optional<Request> parse_request(std::string_view line, std::string& detail);

// Throws std::invalid_argument on malformed response lines.
Response parse_response(std::string_view line);

}  // namespace wire

}  // namespace dcled
