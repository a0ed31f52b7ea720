#pragma once

#include "dcled/wire.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dcled {

struct StoreRecord {
    Scheme scheme{};
    std::uint8_t role = 0;
    std::string label;
    std::vector<std::uint8_t> share;
    std::uint64_t stored_nanos = 0;  // wall clock at insertion
};

// Durable share store: one append-only log file, an in-memory index keyed by
// (scheme, label). Each log entry is [u32 length][record][u32 crc32], and
// put() reaches the disk (fsync) before it returns, so every acknowledged
// record survives a crash. Recovery replays the log and truncates it at the
// first torn or corrupt entry, leaving exactly the acknowledged prefix.
class ShareStore {
public:
    // Opens (creating if needed) <dir>/store.log and replays it.
    explicit ShareStore(const std::filesystem::path& dir);
    ~ShareStore();

    ShareStore(const ShareStore&) = delete;
    ShareStore& operator=(const ShareStore&) = delete;

    // False if (scheme, label) is already present; shares are immutable.
    // Throws std::system_error on I/O failure.
    bool put(Scheme scheme, std::uint8_t role, std::string_view label,
             std::span<const std::uint8_t> share);

    std::optional<StoreRecord> get(Scheme scheme, std::string_view label) const;

    std::size_t size() const;

private:
    static std::string key(Scheme scheme, std::string_view label);

    mutable std::shared_mutex mu_;
    int fd_ = -1;
    std::unordered_map<std::string, StoreRecord> index_;
};

}  // namespace dcled
