#include "cognate/random.hpp"

#include <limits>
#include <string>

#include "cognate/digest.hpp"

namespace cognate {

std::uint64_t SeedStreams::derive(std::string_view purpose) const {
    auto hex = sha256_hex(std::to_string(seed_) + "/" + std::string(purpose));
    return std::stoull(hex.substr(0, 16), nullptr, 16);
}

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
    // Rejection sampling removes modulo bias.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(rng);
}

}  // namespace cognate
