// dcled: client-side command line for the delegation toolkit.
//
//   keygen          write a fresh secret key file (0600, refuses to clobber)
//   encrypt-upload  mask CSV rows under the key and store shares on servers
//   delegate        evaluate a program file over uploaded labels
//   oracle          plain evaluation of a program on the CSV, no servers
//   bench           in-process timing grid as CSV
//   game            forgery game against the verified two-server scheme
//   queue-sim       single-worker queueing model on a measured service time
//
// Servers are passed as repeated --server host:port flags and play roles in
// flag order: the first --server is server 1, and so on. Key files bind the
// scheme, the modulus, and (for the d-server schemes) the server count, so
// every other command only needs --key.
//
// Exit codes: 0 success, 1 verification failure (delegate printed REJECT,
// or the game was not clean), 2 usage error, 3 transport failure or server
// refusal, 4 file or I/O error.

#include "dcled/bench.hpp"
#include "dcled/client.hpp"
#include "dcled/field.hpp"
#include "dcled/game.hpp"
#include "dcled/prf.hpp"
#include "dcled/program.hpp"
#include "dcled/scheme2s.hpp"
#include "dcled/scheme2v.hpp"
#include "dcled/schemeds.hpp"
#include "dcled/util.hpp"
#include "dcled/wire.hpp"

#include <CLI11.hpp>

#include <fcntl.h>
#include <sys/utsname.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

namespace {

using dcled::Fe;
using dcled::Field;
using dcled::u128;

constexpr int kOk = 0;
constexpr int kReject = 1;
constexpr int kUsage = 2;
constexpr int kTransport = 3;
constexpr int kIo = 4;

// Bad flag combinations discovered after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Anything wrong with a file: unreadable, unwritable, or malformed content.
struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s) {
    const auto from = s.find_first_not_of(" \t\r");
    if (from == std::string_view::npos) return "";
    const auto to = s.find_last_not_of(" \t\r");
    return std::string(s.substr(from, to - from + 1));
}

std::string u128_hex(u128 v) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    do {
        s.push_back(digits[static_cast<unsigned>(v & 15)]);
        v >>= 4;
    } while (v != 0);
    std::reverse(s.begin(), s.end());
    return s;
}

Field make_field(const std::string& modulus_text) {
    try {
        const u128 p =
            modulus_text.empty() ? Field::default_modulus() : dcled::parse_u128(modulus_text);
        return Field(p);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--modulus: ") + e.what());
    }
}

// Secret material never passes through a group- or world-readable window:
// the file is born 0600. An existing file is left untouched; losing a key
// by accident orphans every share stored under it.
void write_private(const std::string& path, const std::string& text) {
    const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_EXCL, 0600);
    if (fd < 0) {
        const std::string why = errno == EEXIST
                                    ? "already exists; refusing to overwrite a key file"
                                    : std::strerror(errno);
        throw FileError(path + ": " + why);
    }
    std::size_t off = 0;
    while (off < text.size()) {
        const ssize_t n = ::write(fd, text.data() + off, text.size() - off);
        if (n < 0) {
            const int err = errno;
            ::close(fd);
            throw FileError(path + ": " + std::strerror(err));
        }
        off += static_cast<std::size_t>(n);
    }
    if (::close(fd) != 0) throw FileError(path + ": " + std::strerror(errno));
}

// name=value lines, blank lines and #-comments ignored.
std::map<std::string, std::string> read_kv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError(path + ": cannot open");
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string entry = trim(line);
        if (entry.empty()) continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw FileError(path + ":" + std::to_string(lineno) + ": expected name=value");
        const std::string name = trim(entry.substr(0, eq));
        const std::string value = trim(entry.substr(eq + 1));
        if (name.empty())
            throw FileError(path + ":" + std::to_string(lineno) + ": empty name");
        if (!out.emplace(name, value).second)
            throw FileError(path + ":" + std::to_string(lineno) + ": duplicate " + name);
    }
    return out;
}

dcled::PrfKey parse_prf_hex(const std::string& path, const std::string& name,
                            const std::string& text) {
    std::vector<std::uint8_t> raw;
    try {
        raw = dcled::hex_decode(text);
    } catch (const std::invalid_argument&) {
        throw FileError(path + ": " + name + " is not valid hex");
    }
    dcled::PrfKey k{};
    if (raw.size() != k.bytes.size())
        throw FileError(path + ": " + name + " must be " + std::to_string(2 * k.bytes.size()) +
                        " hex characters");
    std::copy(raw.begin(), raw.end(), k.bytes.begin());
    return k;
}

Fe parse_fe_hex(const Field& f, const std::string& path, const std::string& name,
                const std::string& text) {
    try {
        return f.decode(dcled::hex_decode(text));
    } catch (const std::invalid_argument& e) {
        throw FileError(path + ": " + name + ": " + e.what());
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string::size_type from = 0;
    while (true) {
        const auto at = text.find(sep, from);
        if (at == std::string::npos) {
            out.push_back(text.substr(from));
            return out;
        }
        out.push_back(text.substr(from, at - from));
        from = at + 1;
    }
}

// A parsed key file. Only the members for `scheme` are meaningful.
struct KeyData {
    std::string scheme;
    u128 p = 0;
    std::uint32_t d = 0;
    dcled::TwoServerKey two;
    dcled::VerifiableKey ver;
    dcled::PrfKey prf;
    dcled::VdsKey vds;
};

KeyData load_key(const std::string& path) {
    const auto kv = read_kv(path);
    const auto need = [&](const char* name) -> const std::string& {
        const auto it = kv.find(name);
        if (it == kv.end()) throw FileError(path + ": missing " + name);
        return it->second;
    };
    KeyData key;
    key.scheme = need("scheme");
    try {
        key.p = dcled::parse_u128(need("p"));
        (void)Field(key.p);
    } catch (const std::invalid_argument& e) {
        throw FileError(path + ": p: " + e.what());
    }
    const Field f(key.p);
    const auto need_d = [&] {
        try {
            const u128 d = dcled::parse_u128(need("d"));
            if (d < 2 || d > dcled::kMaxServers) throw std::invalid_argument("out of range");
            key.d = static_cast<std::uint32_t>(d);
        } catch (const std::invalid_argument&) {
            throw FileError(path + ": d must be between 2 and " +
                            std::to_string(dcled::kMaxServers));
        }
    };
    const auto need_nonzero = [&](const char* name, Fe x) {
        if (x.v == 0) throw FileError(path + ": " + name + " must be nonzero");
        return x;
    };
    if (key.scheme == "2s") {
        key.two.k = parse_prf_hex(path, "k", need("k"));
    } else if (key.scheme == "2v") {
        key.ver.k1 = parse_prf_hex(path, "k1", need("k1"));
        key.ver.k2 = parse_prf_hex(path, "k2", need("k2"));
        key.ver.s1 = need_nonzero("s1", parse_fe_hex(f, path, "s1", need("s1")));
        key.ver.s2 = need_nonzero("s2", parse_fe_hex(f, path, "s2", need("s2")));
    } else if (key.scheme == "ds") {
        need_d();
        key.prf = parse_prf_hex(path, "k", need("k"));
    } else if (key.scheme == "vds") {
        need_d();
        key.vds.k1 = parse_prf_hex(path, "k1", need("k1"));
        key.vds.k2 = parse_prf_hex(path, "k2", need("k2"));
        const auto parts = split(need("s"), ',');
        if (parts.size() != key.d)
            throw FileError(path + ": s must list exactly d=" + std::to_string(key.d) +
                            " points");
        for (std::size_t j = 0; j < parts.size(); ++j) {
            const std::string name = "s[" + std::to_string(j + 1) + "]";
            key.vds.s.push_back(
                need_nonzero(name.c_str(), parse_fe_hex(f, path, name, trim(parts[j]))));
        }
    } else {
        throw FileError(path + ": unknown scheme '" + key.scheme + "'");
    }
    return key;
}

// CSV rows "label,value"; value decimal or 0x-hex, reduced mod p. Blank
// lines and #-comments are skipped. Labels must be distinct and must be
// storable, i.e. pass the wire label rules.
struct Rows {
    std::vector<std::string> labels;
    std::vector<Fe> values;
};

Rows read_rows(const Field& f, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError(path + ": cannot open");
    Rows rows;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string entry = trim(line);
        if (entry.empty() || entry[0] == '#') continue;
        const auto at = std::string_view(entry).find(',');
        const std::string where = path + ":" + std::to_string(lineno);
        if (at == std::string_view::npos) throw FileError(where + ": expected label,value");
        const std::string label = trim(entry.substr(0, at));
        const std::string value = trim(entry.substr(at + 1));
        if (!dcled::wire::valid_label(label)) throw FileError(where + ": invalid label");
        if (!seen.insert(label).second) throw FileError(where + ": duplicate label " + label);
        try {
            rows.values.push_back(f.from_u128(dcled::parse_u128(value)));
        } catch (const std::invalid_argument& e) {
            throw FileError(where + ": " + e.what());
        }
        rows.labels.push_back(label);
    }
    return rows;
}

dcled::Program load_program(const Field& f, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError(path + ": cannot open");
    try {
        return dcled::parse_program_text(f, in);
    } catch (const std::invalid_argument& e) {
        throw FileError(path + ": " + e.what());
    }
}

std::vector<dcled::Endpoint> parse_endpoints(const std::vector<std::string>& specs) {
    std::vector<dcled::Endpoint> out;
    for (const auto& spec : specs) {
        const auto colon = spec.rfind(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == spec.size())
            throw UsageError("--server expects host:port, got '" + spec + "'");
        dcled::Endpoint ep;
        ep.host = spec.substr(0, colon);
        try {
            const u128 port = dcled::parse_u128(spec.substr(colon + 1));
            if (port == 0 || port > 65535) throw std::invalid_argument("out of range");
            ep.port = static_cast<std::uint16_t>(port);
        } catch (const std::invalid_argument&) {
            throw UsageError("--server port must be 1..65535, got '" + spec + "'");
        }
        out.push_back(std::move(ep));
    }
    return out;
}

struct NetOpts {
    std::vector<std::string> servers;
    int retries = 0;
    int timeout_ms = 10000;
    int backoff_ms = 100;
};

void add_net_options(CLI::App* cmd, NetOpts& net) {
    cmd->add_option("--server", net.servers,
                    "Server endpoint host:port; repeat once per role, in role order")
        ->required();
    cmd->add_option("--retries", net.retries, "Extra attempts after a transport failure")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--timeout-ms", net.timeout_ms, "Per-socket-operation timeout")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--backoff-ms", net.backoff_ms, "Pause between attempts")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
}

dcled::RetryPolicy retry_of(const NetOpts& net) {
    return {net.retries + 1, net.timeout_ms, net.backoff_ms};
}

std::array<dcled::Endpoint, 2> exactly_two(const std::vector<dcled::Endpoint>& eps,
                                           const std::string& scheme) {
    if (eps.size() != 2)
        throw UsageError("scheme " + scheme + " needs exactly 2 --server endpoints");
    return {eps[0], eps[1]};
}

std::string default_hardware() {
    utsname u{};
    std::string s = ::uname(&u) == 0 ? std::string(u.machine) : "unknown";
    const unsigned threads = std::thread::hardware_concurrency();
    if (threads != 0) s += " " + std::to_string(threads) + "t";
    return s;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!(out << text) || !out.flush()) throw FileError(out_path + ": cannot write");
}

int run_keygen(const std::string& scheme, const std::string& out, std::uint32_t servers,
               const std::string& modulus_text) {
    const Field f = make_field(modulus_text);
    if ((scheme == "2s" || scheme == "2v") && servers != 0)
        throw UsageError("--servers applies to schemes ds and vds only");
    std::ostringstream body;
    body << "# dcled secret key. Keep this file private.\n";
    body << "scheme=" << scheme << "\n";
    body << "p=0x" << u128_hex(f.modulus()) << "\n";
    if (scheme == "2s") {
        const auto key = dcled::keygen2s();
        body << "k=" << dcled::hex_encode(key.k.bytes) << "\n";
    } else if (scheme == "2v") {
        const auto key = dcled::vkeygen(f);
        body << "k1=" << dcled::hex_encode(key.k1.bytes) << "\n";
        body << "k2=" << dcled::hex_encode(key.k2.bytes) << "\n";
        body << "s1=" << f.to_hex(key.s1) << "\n";
        body << "s2=" << f.to_hex(key.s2) << "\n";
    } else {
        if (servers == 0)
            throw UsageError("--servers is required for schemes ds and vds");
        if (servers < 2 || servers > dcled::kMaxServers)
            throw UsageError("--servers must be between 2 and " +
                             std::to_string(dcled::kMaxServers));
        body << "d=" << servers << "\n";
        if (scheme == "ds") {
            body << "k=" << dcled::hex_encode(dcled::random_prf_key().bytes) << "\n";
        } else {
            const auto key = dcled::vds_keygen(f, servers);
            body << "k1=" << dcled::hex_encode(key.k1.bytes) << "\n";
            body << "k2=" << dcled::hex_encode(key.k2.bytes) << "\n";
            body << "s=";
            for (std::size_t j = 0; j < key.s.size(); ++j)
                body << (j == 0 ? "" : ",") << f.to_hex(key.s[j]);
            body << "\n";
        }
    }
    write_private(out, body.str());
    return kOk;
}

int run_upload(const std::string& key_path, const std::string& data_path, const NetOpts& net) {
    const KeyData key = load_key(key_path);
    const Field f(key.p);
    const auto endpoints = parse_endpoints(net.servers);
    const Rows rows = read_rows(f, data_path);
    const auto retry = retry_of(net);
    if (key.scheme == "2s" || key.scheme == "2v") {
        const auto pair = exactly_two(endpoints, key.scheme);
        for (std::size_t i = 0; i < rows.labels.size(); ++i) {
            if (key.scheme == "2s")
                dcled::upload2s(f, pair, key.two, rows.labels[i], rows.values[i], retry);
            else
                dcled::upload2v(f, pair, key.ver, rows.labels[i], rows.values[i], retry);
        }
    } else {
        if (endpoints.size() != key.d)
            throw UsageError("scheme " + key.scheme + " needs exactly d=" +
                             std::to_string(key.d) + " --server endpoints");
        if (rows.labels.size() != key.d)
            throw FileError(data_path + ": scheme " + key.scheme + " stores exactly d=" +
                            std::to_string(key.d) + " rows per upload, got " +
                            std::to_string(rows.labels.size()));
        if (key.scheme == "ds")
            dcled::upload_ds(f, endpoints, key.prf, rows.labels, rows.values, retry);
        else
            dcled::upload_vds(f, endpoints, key.vds, rows.labels, rows.values, retry);
    }
    std::cout << "stored " << rows.labels.size() << " rows on " << endpoints.size()
              << " servers\n";
    return kOk;
}

int run_delegate(const std::string& key_path, const std::string& program_path,
                 const NetOpts& net) {
    const KeyData key = load_key(key_path);
    const Field f(key.p);
    const auto endpoints = parse_endpoints(net.servers);
    const auto retry = retry_of(net);
    const dcled::Program program = load_program(f, program_path);
    const auto print_value = [&](Fe v) {
        std::cout << dcled::u128_to_dec(v.v) << "\n";
        return kOk;
    };
    if (key.scheme == "2s" || key.scheme == "2v") {
        const auto* quad = std::get_if<dcled::QuadraticProgram>(&program);
        if (quad == nullptr)
            throw UsageError("scheme " + key.scheme + " delegates quadratic programs");
        const auto pair = exactly_two(endpoints, key.scheme);
        if (key.scheme == "2s")
            return print_value(dcled::delegate2s(f, pair, key.two, *quad, retry));
        const auto outcome = dcled::delegate2v(f, pair, key.ver, *quad, retry);
        if (outcome.accepted()) return print_value(outcome.value);
        if (!outcome.ok1) std::cerr << "dcled: server 1 response failed its tag check\n";
        if (!outcome.ok2) std::cerr << "dcled: server 2 response failed its tag check\n";
        std::cout << "REJECT\n";
        return kReject;
    }
    const auto* mono = std::get_if<dcled::MonomialProgram>(&program);
    if (mono == nullptr)
        throw UsageError("scheme " + key.scheme + " delegates product (monomial) programs");
    if (endpoints.size() != key.d)
        throw UsageError("scheme " + key.scheme + " needs exactly d=" + std::to_string(key.d) +
                         " --server endpoints");
    if (mono->labels.size() != key.d)
        throw UsageError("a d=" + std::to_string(key.d) + " key delegates products of exactly " +
                         std::to_string(key.d) + " labels, got " +
                         std::to_string(mono->labels.size()));
    if (key.scheme == "ds")
        return print_value(dcled::delegate_ds(f, endpoints, key.prf, *mono, retry));
    const auto outcome = dcled::delegate_vds(f, endpoints, key.vds, *mono, retry);
    if (outcome.accepted()) return print_value(outcome.value);
    for (std::size_t j = 0; j < outcome.ok.size(); ++j)
        if (!outcome.ok[j])
            std::cerr << "dcled: server " << j + 1 << " response failed its tag check\n";
    std::cout << "REJECT\n";
    return kReject;
}

int run_oracle(const std::string& data_path, const std::string& program_path,
               const std::string& modulus_text) {
    const Field f = make_field(modulus_text);
    const dcled::Program program = load_program(f, program_path);
    std::unordered_map<std::string, Fe> by_label;
    if (!data_path.empty()) {
        const Rows rows = read_rows(f, data_path);
        for (std::size_t i = 0; i < rows.labels.size(); ++i)
            by_label.emplace(rows.labels[i], rows.values[i]);
    }
    const auto& labels = std::holds_alternative<dcled::QuadraticProgram>(program)
                             ? std::get<dcled::QuadraticProgram>(program).labels
                             : std::get<dcled::MonomialProgram>(program).labels;
    std::vector<Fe> values;
    values.reserve(labels.size());
    for (const auto& label : labels) {
        const auto it = by_label.find(label);
        if (it == by_label.end())
            throw FileError((data_path.empty() ? std::string("--data") : data_path) +
                            ": no row for label " + label);
        values.push_back(it->second);
    }
    const Fe value = std::holds_alternative<dcled::QuadraticProgram>(program)
                         ? dcled::eval_plain(f, std::get<dcled::QuadraticProgram>(program), values)
                         : dcled::eval_plain(f, std::get<dcled::MonomialProgram>(program), values);
    std::cout << dcled::u128_to_dec(value.v) << "\n";
    return kOk;
}

int run_bench(const std::vector<std::uint32_t>& sizes, int reps, std::uint64_t seed,
              const std::string& scheme, const std::string& modulus_text,
              const std::string& hardware, const std::string& out_path) {
    const Field f = make_field(modulus_text);
    if (sizes.empty()) throw UsageError("--sizes needs at least one size");
    for (const auto n : sizes)
        if (n == 0) throw UsageError("--sizes entries must be positive");
    std::vector<dcled::BenchRow> rows;
    if (scheme == "2s" || scheme == "both") {
        const auto part = dcled::run_bench2s(f, sizes, reps, seed);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    if (scheme == "2v" || scheme == "both") {
        const auto part = dcled::run_bench2v(f, sizes, reps, seed);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    emit(out_path, dcled::bench_csv(rows, seed, hardware.empty() ? default_hardware() : hardware));
    return kOk;
}

int run_game(std::uint64_t seed, std::uint32_t forged, std::uint32_t honest,
             const std::string& modulus_text, const std::string& out_path) {
    const Field f = make_field(modulus_text);
    const auto report = dcled::run_forgery_game(f, seed, forged, honest);
    emit(out_path, dcled::to_csv(report));
    if (report.clean()) return kOk;
    if (report.forged_accepted != 0)
        std::cerr << "dcled: " << report.forged_accepted << " of " << report.forged_trials
                  << " forgeries were accepted\n";
    if (report.honest_successes != report.honest_trials)
        std::cerr << "dcled: " << report.honest_trials - report.honest_successes << " of "
                  << report.honest_trials << " honest runs failed\n";
    return kReject;
}

int run_queue_sim(std::uint32_t n, const std::vector<std::uint64_t>& ts, int reps,
                  std::uint64_t seed, const std::string& modulus_text,
                  const std::string& out_path) {
    const Field f = make_field(modulus_text);
    if (n == 0) throw UsageError("--n must be positive");
    if (ts.empty()) throw UsageError("--t needs at least one request count");
    for (const auto t : ts)
        if (t == 0) throw UsageError("--t entries must be positive");
    emit(out_path, dcled::to_csv(dcled::queue_sim(f, n, ts, reps, seed)));
    return kOk;
}

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const UsageError& e) {
        std::cerr << "dcled: " << e.what() << "\n";
        return kUsage;
    } catch (const dcled::RemoteError& e) {
        std::cerr << "dcled: server refused: " << e.what() << "\n";
        return kTransport;
    } catch (const dcled::TransportError& e) {
        std::cerr << "dcled: " << e.what() << "\n";
        return kTransport;
    } catch (const FileError& e) {
        std::cerr << "dcled: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "dcled: " << e.what() << "\n";
        return kIo;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"delegation toolkit client"};
    app.require_subcommand(1);

    auto* keygen = app.add_subcommand("keygen", "Write a fresh secret key file");
    std::string kg_scheme;
    std::string kg_out;
    std::uint32_t kg_servers = 0;
    std::string kg_modulus;
    keygen->add_option("--scheme", kg_scheme, "One of 2s, 2v, ds, vds")
        ->required()
        ->check(CLI::IsMember({"2s", "2v", "ds", "vds"}));
    keygen->add_option("--out", kg_out, "Key file path")->required();
    keygen->add_option("--servers", kg_servers, "Server count d (ds and vds only)");
    keygen->add_option("--modulus", kg_modulus, "Field modulus, decimal or 0x-hex");

    auto* upload = app.add_subcommand("encrypt-upload",
                                      "Mask CSV rows and store the shares on the servers");
    std::string up_key;
    std::string up_data;
    NetOpts up_net;
    upload->add_option("--key", up_key, "Key file from keygen")->required();
    upload->add_option("--data", up_data, "CSV of label,value rows")->required();
    add_net_options(upload, up_net);

    auto* delegate = app.add_subcommand("delegate",
                                        "Evaluate a program file over uploaded labels");
    std::string dl_key;
    std::string dl_program;
    NetOpts dl_net;
    delegate->add_option("--key", dl_key, "Key file from keygen")->required();
    delegate->add_option("--program", dl_program, "Program text file")->required();
    add_net_options(delegate, dl_net);

    auto* oracle = app.add_subcommand("oracle",
                                      "Evaluate a program file on the plaintext CSV locally");
    std::string or_data;
    std::string or_program;
    std::string or_modulus;
    oracle->add_option("--data", or_data, "CSV of label,value rows");
    oracle->add_option("--program", or_program, "Program text file")->required();
    oracle->add_option("--modulus", or_modulus, "Field modulus, decimal or 0x-hex");

    auto* bench = app.add_subcommand("bench", "In-process timing grid, CSV output");
    std::vector<std::uint32_t> be_sizes = {10, 50, 100, 500, 1000};
    int be_reps = 5;
    std::uint64_t be_seed = 42;
    std::string be_scheme = "both";
    std::string be_modulus;
    std::string be_hardware;
    std::string be_out;
    bench->add_option("--sizes", be_sizes, "Input counts n, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--reps", be_reps, "Repetitions per cell; the median is reported")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench->add_option("--seed", be_seed, "Workload seed")->capture_default_str();
    bench->add_option("--scheme", be_scheme, "2s, 2v, or both")
        ->check(CLI::IsMember({"2s", "2v", "both"}))
        ->capture_default_str();
    bench->add_option("--modulus", be_modulus, "Field modulus, decimal or 0x-hex");
    bench->add_option("--hardware", be_hardware, "Hardware note for the CSV; default uname");
    bench->add_option("--out", be_out, "Write CSV here instead of stdout");

    auto* game = app.add_subcommand("game",
                                    "Forgery game against the verified two-server scheme");
    std::uint64_t gm_seed = 42;
    std::uint32_t gm_forged = 10000;
    std::uint32_t gm_honest = 100;
    std::string gm_modulus;
    std::string gm_out;
    game->add_option("--seed", gm_seed, "Game seed")->capture_default_str();
    game->add_option("--forged", gm_forged, "Forged trials")->capture_default_str();
    game->add_option("--honest", gm_honest, "Honest trials")->capture_default_str();
    game->add_option("--modulus", gm_modulus, "Field modulus, decimal or 0x-hex");
    game->add_option("--out", gm_out, "Write CSV here instead of stdout");

    auto* queue = app.add_subcommand("queue-sim",
                                     "Single-worker queueing model on measured service time");
    std::uint32_t qs_n = 1000;
    std::vector<std::uint64_t> qs_t = {10, 100, 1000, 10000};
    int qs_reps = 5;
    std::uint64_t qs_seed = 42;
    std::string qs_modulus;
    std::string qs_out;
    queue->add_option("--n", qs_n, "Input count of the delegated program")
        ->capture_default_str();
    queue->add_option("--t", qs_t, "Burst sizes, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    queue->add_option("--reps", qs_reps, "Service time repetitions; the median is used")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    queue->add_option("--seed", qs_seed, "Workload seed")->capture_default_str();
    queue->add_option("--modulus", qs_modulus, "Field modulus, decimal or 0x-hex");
    queue->add_option("--out", qs_out, "Write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    if (*keygen)
        return run_guarded([&] { return run_keygen(kg_scheme, kg_out, kg_servers, kg_modulus); });
    if (*upload) return run_guarded([&] { return run_upload(up_key, up_data, up_net); });
    if (*delegate)
        return run_guarded([&] { return run_delegate(dl_key, dl_program, dl_net); });
    if (*oracle) return run_guarded([&] { return run_oracle(or_data, or_program, or_modulus); });
    if (*bench)
        return run_guarded([&] {
            return run_bench(be_sizes, be_reps, be_seed, be_scheme, be_modulus, be_hardware,
                             be_out);
        });
    if (*game)
        return run_guarded([&] { return run_game(gm_seed, gm_forged, gm_honest, gm_modulus,
                                                 gm_out); });
    return run_guarded([&] { return run_queue_sim(qs_n, qs_t, qs_reps, qs_seed, qs_modulus,
                                                  qs_out); });
}
