#pragma once

#include <cstdint>
#include <string>

namespace sievecost {

inline constexpr const char* kVersion = "0.1.0";

// FNV-1a, used to stamp outputs with a stable configuration fingerprint.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace sievecost
