#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace cognate {

// Derives independent, reproducible generators from one experiment seed.
// Each purpose ("split/hi-mr", "init/hi-mr/combo", ...) gets its own stream,
// so adding a stage never shifts the numbers another stage sees.
class SeedStreams {
public:
    explicit SeedStreams(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t derive(std::string_view purpose) const;
    std::mt19937_64 stream(std::string_view purpose) const { return std::mt19937_64(derive(purpose)); }

private:
    std::uint64_t seed_;
};

// The standard distributions are implementation-defined; these are not, so
// results are identical across standard libraries.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound);
double uniform_unit(std::mt19937_64& rng);  // [0, 1)
double uniform_real(std::mt19937_64& rng, double lo, double hi);

template <typename T>
void shuffle(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        auto j = static_cast<std::size_t>(uniform_index(rng, i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace cognate
