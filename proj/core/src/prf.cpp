#include "dcled/prf.hpp"

#include <openssl/core_names.h>
#include <openssl/evp.h>
#include <openssl/rand.h>

#include <cstring>
#include <stdexcept>
#include <vector>

namespace dcled {

namespace {

EVP_MAC* cmac_algorithm() {
    static EVP_MAC* mac = EVP_MAC_fetch(nullptr, "CMAC", nullptr);
    if (mac == nullptr) throw std::runtime_error("OpenSSL CMAC is unavailable");
    return mac;
}

}  // namespace

PrfKey random_prf_key() {
    PrfKey k;
    if (RAND_bytes(k.bytes.data(), static_cast<int>(k.bytes.size())) != 1)
        throw std::runtime_error("OS entropy source failed");
    return k;
}

SecureRng::result_type SecureRng::operator()() {
    std::array<std::uint8_t, 8> buf;
    if (RAND_bytes(buf.data(), static_cast<int>(buf.size())) != 1)
        throw std::runtime_error("OS entropy source failed");
    result_type v = 0;
    for (const auto b : buf) v = (v << 8) | b;
    return v;
}

std::array<std::uint8_t, 16> aes128_cmac(const std::array<std::uint8_t, 16>& key,
                                         std::span<const std::uint8_t> msg) {
    EVP_MAC_CTX* ctx = EVP_MAC_CTX_new(cmac_algorithm());
    if (ctx == nullptr) throw std::runtime_error("EVP_MAC_CTX_new failed");
    char cipher[] = "AES-128-CBC";
    const OSSL_PARAM params[] = {
        OSSL_PARAM_construct_utf8_string(OSSL_MAC_PARAM_CIPHER, cipher, 0),
        OSSL_PARAM_construct_end(),
    };
    std::array<std::uint8_t, 16> out{};
    std::size_t out_len = 0;
    const bool ok = EVP_MAC_init(ctx, key.data(), key.size(), params) == 1 &&
                    EVP_MAC_update(ctx, msg.data(), msg.size()) == 1 &&
                    EVP_MAC_final(ctx, out.data(), &out_len, out.size()) == 1;
    EVP_MAC_CTX_free(ctx);
    if (!ok || out_len != out.size()) throw std::runtime_error("CMAC computation failed");
    return out;
}

Fe prf_eval(const Field& f, const PrfKey& key, std::string_view label, unsigned index) {
    if (index > 255) throw std::invalid_argument("PRF index out of range");
    if (label.size() > 0xffffffffull) throw std::invalid_argument("label too long");
    std::vector<std::uint8_t> msg;
    msg.reserve(4 + label.size() + 1);
    const auto n = static_cast<std::uint32_t>(label.size());
    msg.push_back(static_cast<std::uint8_t>(n >> 24));
    msg.push_back(static_cast<std::uint8_t>(n >> 16));
    msg.push_back(static_cast<std::uint8_t>(n >> 8));
    msg.push_back(static_cast<std::uint8_t>(n));
    msg.insert(msg.end(), label.begin(), label.end());
    msg.push_back(static_cast<std::uint8_t>(index));
    const auto mac = aes128_cmac(key.bytes, msg);
    u128 v = 0;
    for (std::uint8_t b : mac) v = v << 8 | b;
    return f.from_u128(v);
}

}  // namespace dcled
