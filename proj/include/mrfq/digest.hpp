#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

namespace mrfq {

/// Streaming FNV-1a 64-bit digest. Used for content-addressed stage caching
/// and manifest digests; not a cryptographic hash.
class Digest {
public:
    Digest& update(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            state_ ^= p[i];
            state_ *= 0x100000001b3ULL;
        }
        return *this;
    }

    Digest& update(const std::string& s) { return update(s.data(), s.size()); }

    template <typename T>
    Digest& update_value(const T& v) {
        static_assert(std::is_trivially_copyable_v<T>);
        return update(&v, sizeof(T));
    }

    template <typename T>
    Digest& update_span(const T* v, std::size_t n) {
        static_assert(std::is_trivially_copyable_v<T>);
        return update(v, n * sizeof(T));
    }

    std::uint64_t value() const { return state_; }

    std::string hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out(16, '0');
        std::uint64_t v = state_;
        for (int i = 15; i >= 0; --i) {
            out[static_cast<std::size_t>(i)] = digits[v & 0xF];
            v >>= 4;
        }
        return out;
    }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace mrfq
