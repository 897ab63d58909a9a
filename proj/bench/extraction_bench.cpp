// Serial reference vs OpenMP candidate generation on a synthetic wordnet.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "cognate/extraction.hpp"
#include "support.hpp"

using namespace cognate;

namespace {

const LinkedWordnet& wordnet(std::size_t synsets) {
    static std::map<std::size_t, LinkedWordnet> cache;
    auto it = cache.find(synsets);
    if (it == cache.end()) {
        it = cache.emplace(synsets, testing::synthetic_wordnet(7, synsets, {Language::hi, Language::bn}, 8)).first;
    }
    return it->second;
}

template <auto Generate>
void run(benchmark::State& state) {
    const auto& wn = wordnet(static_cast<std::size_t>(state.range(0)));
    std::size_t found = 0;
    for (auto _ : state) {
        auto pairs = Generate(wn, Language::hi, Language::bn, ExtractionOptions{});
        found = pairs.size();
        benchmark::DoNotOptimize(pairs.data());
    }
    state.counters["candidates"] = static_cast<double>(found);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void cognates_parallel(benchmark::State& s) { run<&generate_cognate_candidates>(s); }
void cognates_serial(benchmark::State& s) { run<&serial::generate_cognate_candidates>(s); }
void false_friends_parallel(benchmark::State& s) { run<&generate_false_friend_candidates>(s); }
void false_friends_serial(benchmark::State& s) { run<&serial::generate_false_friend_candidates>(s); }

}  // namespace

BENCHMARK(cognates_serial)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(cognates_parallel)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(false_friends_serial)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(false_friends_parallel)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
