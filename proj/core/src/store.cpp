#include "dcled/store.hpp"

#include "bytes.hpp"

#include <fcntl.h>
#include <unistd.h>
#include <zlib.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <mutex>
#include <system_error>

namespace dcled {

namespace {

constexpr std::uint8_t kRecordVersion = 1;
constexpr std::size_t kMaxRecord = 64u << 20;

[[noreturn]] void throw_errno(const char* what) {
    throw std::system_error(errno, std::generic_category(), what);
}

std::uint32_t crc_of(std::span<const std::uint8_t> bytes) {
    return static_cast<std::uint32_t>(
        ::crc32(0, bytes.data(), static_cast<uInt>(bytes.size())));
}

std::vector<std::uint8_t> encode_record(const StoreRecord& r) {
    std::vector<std::uint8_t> out;
    detail::put_u8(out, kRecordVersion);
    detail::put_u8(out, static_cast<std::uint8_t>(r.scheme));
    detail::put_u8(out, r.role);
    detail::put_u32(out, static_cast<std::uint32_t>(r.label.size()));
    out.insert(out.end(), r.label.begin(), r.label.end());
    detail::put_u32(out, static_cast<std::uint32_t>(r.share.size()));
    out.insert(out.end(), r.share.begin(), r.share.end());
    for (int i = 7; i >= 0; --i)
        detail::put_u8(out, static_cast<std::uint8_t>(r.stored_nanos >> (8 * i)));
    return out;
}

std::optional<StoreRecord> decode_record(std::span<const std::uint8_t> bytes) {
    try {
        detail::ByteReader r{bytes};
        if (r.u8() != kRecordVersion) return std::nullopt;
        StoreRecord rec;
        const std::uint8_t scheme = r.u8();
        if (scheme < 1 || scheme > 4) return std::nullopt;
        rec.scheme = static_cast<Scheme>(scheme);
        rec.role = r.u8();
        const auto label_len = r.u32();
        const auto label = r.take(label_len);
        rec.label.assign(label.begin(), label.end());
        const auto share_len = r.u32();
        const auto share = r.take(share_len);
        rec.share.assign(share.begin(), share.end());
        for (int i = 0; i < 8; ++i) rec.stored_nanos = (rec.stored_nanos << 8) | r.u8();
        if (!r.empty()) return std::nullopt;
        return rec;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::uint64_t now_nanos() {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                          std::chrono::system_clock::now().time_since_epoch())
                                          .count());
}

void write_all(int fd, std::span<const std::uint8_t> bytes) {
    std::size_t off = 0;
    while (off < bytes.size()) {
        const ssize_t n = ::write(fd, bytes.data() + off, bytes.size() - off);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw_errno("write share log");
        }
        off += static_cast<std::size_t>(n);
    }
}

}  // namespace

std::string ShareStore::key(Scheme scheme, std::string_view label) {
    std::string k;
    k.reserve(label.size() + 1);
    k.push_back(static_cast<char>(scheme));
    k.append(label);
    return k;
}

ShareStore::ShareStore(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path path = dir / "store.log";
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0600);
    if (fd_ < 0) throw_errno("open share log");

    // Replay: keep the longest prefix of intact records, truncate the rest.
    std::vector<std::uint8_t> data;
    {
        std::uint8_t buf[1 << 16];
        ssize_t n;
        while ((n = ::read(fd_, buf, sizeof buf)) != 0) {
            if (n < 0) {
                if (errno == EINTR) continue;
                throw_errno("read share log");
            }
            data.insert(data.end(), buf, buf + n);
        }
    }
    std::size_t good = 0;
    std::size_t off = 0;
    while (data.size() - off >= 4) {
        std::uint32_t len = 0;
        for (int i = 0; i < 4; ++i) len = (len << 8) | data[off + static_cast<std::size_t>(i)];
        if (len == 0 || len > kMaxRecord || data.size() - off - 4 < std::size_t{len} + 4) break;
        const std::span<const std::uint8_t> payload{data.data() + off + 4, len};
        std::uint32_t crc = 0;
        for (int i = 0; i < 4; ++i)
            crc = (crc << 8) | data[off + 4 + len + static_cast<std::size_t>(i)];
        if (crc != crc_of(payload)) break;
        auto rec = decode_record(payload);
        if (!rec) break;
        off += 4 + std::size_t{len} + 4;
        good = off;
        index_.try_emplace(key(rec->scheme, rec->label), std::move(*rec));
    }
    if (good != data.size()) {
        if (::ftruncate(fd_, static_cast<off_t>(good)) != 0) throw_errno("truncate share log");
    }
    if (::lseek(fd_, 0, SEEK_END) < 0) throw_errno("seek share log");
}

ShareStore::~ShareStore() {
    if (fd_ >= 0) ::close(fd_);
}

bool ShareStore::put(Scheme scheme, std::uint8_t role, std::string_view label,
                     std::span<const std::uint8_t> share) {
    StoreRecord rec{scheme, role, std::string(label),
                    std::vector<std::uint8_t>(share.begin(), share.end()), now_nanos()};
    const std::vector<std::uint8_t> payload = encode_record(rec);

    std::unique_lock lock(mu_);
    if (index_.contains(key(scheme, label))) return false;

    std::vector<std::uint8_t> frame;
    frame.reserve(payload.size() + 8);
    detail::put_u32(frame, static_cast<std::uint32_t>(payload.size()));
    frame.insert(frame.end(), payload.begin(), payload.end());
    detail::put_u32(frame, crc_of(payload));
    write_all(fd_, frame);
    if (::fsync(fd_) != 0) throw_errno("fsync share log");

    index_.emplace(key(scheme, label), std::move(rec));
    return true;
}

std::optional<StoreRecord> ShareStore::get(Scheme scheme, std::string_view label) const {
    std::shared_lock lock(mu_);
    const auto it = index_.find(key(scheme, label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t ShareStore::size() const {
    std::shared_lock lock(mu_);
    return index_.size();
}

}  // namespace dcled
