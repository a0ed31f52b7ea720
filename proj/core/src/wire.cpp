#include "dcled/wire.hpp"

#include "dcled/util.hpp"

#include <charconv>
#include <stdexcept>

namespace dcled {

std::string_view scheme_token(Scheme s) {
    switch (s) {
        case Scheme::two_server: return "2s";
        case Scheme::two_server_verified: return "2v";
        case Scheme::d_server: return "ds";
        case Scheme::d_server_verified: return "vds";
    }
    throw std::invalid_argument("unknown scheme");
}

std::optional<Scheme> scheme_from_token(std::string_view token) {
    if (token == "2s") return Scheme::two_server;
    if (token == "2v") return Scheme::two_server_verified;
    if (token == "ds") return Scheme::d_server;
    if (token == "vds") return Scheme::d_server_verified;
    return std::nullopt;
}

namespace wire {

namespace {

// Splits off the next space-delimited token; empty when exhausted.
std::string_view next_token(std::string_view& rest) {
    const auto start = rest.find_first_not_of(' ');
    if (start == std::string_view::npos) {
        rest = {};
        return {};
    }
    rest.remove_prefix(start);
    const auto end = rest.find(' ');
    const std::string_view tok = rest.substr(0, end);
    rest.remove_prefix(end == std::string_view::npos ? rest.size() : end + 1);
    return tok;
}

bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const auto b = static_cast<unsigned char>(s[i]);
        std::size_t len = 0;
        std::uint32_t cp = 0;
        if (b < 0x80) {
            len = 1;
            cp = b;
        } else if ((b & 0xE0) == 0xC0) {
            len = 2;
            cp = b & 0x1Fu;
        } else if ((b & 0xF0) == 0xE0) {
            len = 3;
            cp = b & 0x0Fu;
        } else if ((b & 0xF8) == 0xF0) {
            len = 4;
            cp = b & 0x07u;
        } else {
            return false;
        }
        if (i + len > s.size()) return false;
        for (std::size_t k = 1; k < len; ++k) {
            const auto c = static_cast<unsigned char>(s[i + k]);
            if ((c & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (c & 0x3Fu);
        }
        // Overlong encodings, surrogates, and out-of-range code points.
        static constexpr std::uint32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
        if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
        i += len;
    }
    return true;
}

}  // namespace

bool valid_label(std::string_view label) {
    if (label.empty() || label.size() > 255) return false;
    for (const char ch : label) {
        const auto b = static_cast<unsigned char>(ch);
        if (b <= 0x20 || b == 0x7F) return false;
    }
    return valid_utf8(label);
}

std::string format(const Request& r) {
    std::string out(r.verb == Request::Verb::store ? "STORE " : "EVAL ");
    out += scheme_token(r.scheme);
    out += ' ';
    out += std::to_string(r.role);
    out += ' ';
    if (r.verb == Request::Verb::store) {
        out += r.label;
        out += ' ';
    }
    out += hex_encode(r.payload);
    out += '\n';
    return out;
}

std::string format(const Response& r) {
    switch (r.kind) {
        case Response::Kind::ok: return "OK\n";
        case Response::Kind::result: return "RESULT " + hex_encode(r.payload) + "\n";
        case Response::Kind::err: return "ERR " + r.code + " " + r.detail + "\n";
    }
    throw std::invalid_argument("unknown response kind");
}

std::optional<Request> parse_request(std::string_view line, std::string& detail) {
    std::string_view rest = line;
    const std::string_view verb = next_token(rest);
    Request r;
    if (verb == "STORE") {
        r.verb = Request::Verb::store;
    } else if (verb == "EVAL") {
        r.verb = Request::Verb::eval;
    } else {
        detail = "unknown verb";
        return std::nullopt;
    }

    const auto scheme = scheme_from_token(next_token(rest));
    if (!scheme) {
        detail = "unknown scheme";
        return std::nullopt;
    }
    r.scheme = *scheme;

    const std::string_view role = next_token(rest);
    unsigned role_value = 0;
    const auto [ptr, ec] = std::from_chars(role.data(), role.data() + role.size(), role_value);
    if (ec != std::errc{} || ptr != role.data() + role.size() || role_value < 1 ||
        role_value > 255) {
        detail = "bad role index";
        return std::nullopt;
    }
    r.role = static_cast<std::uint8_t>(role_value);

    if (r.verb == Request::Verb::store) {
        const std::string_view label = next_token(rest);
        if (!valid_label(label)) {
            detail = "invalid label";
            return std::nullopt;
        }
        r.label = std::string(label);
    }

    const std::string_view payload = next_token(rest);
    if (payload.empty()) {
        detail = "missing payload";
        return std::nullopt;
    }
    try {
        r.payload = hex_decode(payload);
    } catch (const std::invalid_argument&) {
        detail = "payload is not valid hex";
        return std::nullopt;
    }
    if (!rest.empty() && rest.find_first_not_of(' ') != std::string_view::npos) {
        detail = "trailing tokens";
        return std::nullopt;
    }
    return r;
}

Response parse_response(std::string_view line) {
    std::string_view rest = line;
    const std::string_view kind = next_token(rest);
    Response r;
    if (kind == "OK") {
        r.kind = Response::Kind::ok;
        if (!rest.empty()) throw std::invalid_argument("trailing tokens after OK");
        return r;
    }
    if (kind == "RESULT") {
        r.kind = Response::Kind::result;
        const std::string_view payload = next_token(rest);
        if (payload.empty()) throw std::invalid_argument("RESULT without payload");
        r.payload = hex_decode(payload);
        if (!rest.empty()) throw std::invalid_argument("trailing tokens after RESULT");
        return r;
    }
    if (kind == "ERR") {
        r.kind = Response::Kind::err;
        r.code = std::string(next_token(rest));
        if (r.code.empty()) throw std::invalid_argument("ERR without code");
        r.detail = std::string(rest);
        return r;
    }
    throw std::invalid_argument("unknown response kind");
}

}  // namespace wire

}  // namespace dcled
