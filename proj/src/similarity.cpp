#include "cognate/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "cognate/error.hpp"

namespace cognate {

namespace {

// Outside Unicode, so it never collides with a real character.
constexpr char32_t kBoundary = 0x110000;

std::unordered_map<std::u32string, long long> shingle_counts(std::u32string_view word, std::size_t n) {
    std::u32string padded;
    if (word.size() < n) {
        padded.assign(n - 1, kBoundary);
        padded.append(word);
        padded.append(n - 1, kBoundary);
        word = padded;
    }
    std::unordered_map<std::u32string, long long> counts;
    for (std::size_t i = 0; i + n <= word.size(); ++i) ++counts[std::u32string(word.substr(i, n))];
    return counts;
}

}  // namespace

std::size_t edit_distance(std::u32string_view a, std::u32string_view b) {
    if (a.size() < b.size()) std::swap(a, b);
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diagonal = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t above = row[j];
            std::size_t substitute = diagonal + (a[i - 1] == b[j - 1] ? 0 : 1);
            row[j] = std::min({above + 1, row[j - 1] + 1, substitute});
            diagonal = above;
        }
    }
    return row[b.size()];
}

double ned_similarity(std::u32string_view a, std::u32string_view b) {
    auto longest = std::max(a.size(), b.size());
    if (longest == 0) throw UsageError("normalized edit distance is undefined for two empty strings");
    // (max - d) / max rather than 1 - d / max: one rounding, so 7/10 compares equal to 0.7.
    return static_cast<double>(longest - edit_distance(a, b)) / static_cast<double>(longest);
}

double shingle_cosine(std::u32string_view a, std::u32string_view b, std::size_t n) {
    if (n == 0) throw UsageError("shingle size must be at least 1");
    auto ca = shingle_counts(a, n);
    auto cb = shingle_counts(b, n);
    if (ca.empty() || cb.empty()) return ca.empty() && cb.empty() ? 1.0 : 0.0;
    if (ca.size() > cb.size()) std::swap(ca, cb);
    long long dot = 0;
    long long norm_a = 0;
    long long norm_b = 0;
    for (const auto& [gram, count] : ca) {
        norm_a += count * count;
        if (auto it = cb.find(gram); it != cb.end()) dot += count * it->second;
    }
    for (const auto& [gram, count] : cb) norm_b += count * count;
    double value = static_cast<double>(dot) /
                   std::sqrt(static_cast<double>(norm_a) * static_cast<double>(norm_b));
    return std::min(value, 1.0);
}

double jaro_winkler(std::u32string_view a, std::u32string_view b) {
    // Greedy matching depends on scan direction; fixing the order makes the
    // measure symmetric by construction.
    if (a.size() > b.size() || (a.size() == b.size() && a > b)) std::swap(a, b);
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty()) return 0.0;

    const std::size_t window = std::max(a.size(), b.size()) / 2 > 0
                                   ? std::max(a.size(), b.size()) / 2 - 1
                                   : 0;
    std::vector<bool> a_matched(a.size(), false);
    std::vector<bool> b_matched(b.size(), false);
    std::size_t matches = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::size_t lo = i > window ? i - window : 0;
        std::size_t hi = std::min(b.size(), i + window + 1);
        for (std::size_t j = lo; j < hi; ++j) {
            if (!b_matched[j] && a[i] == b[j]) {
                a_matched[i] = b_matched[j] = true;
                ++matches;
                break;
            }
        }
    }
    if (matches == 0) return 0.0;

    std::size_t half_transpositions = 0;
    for (std::size_t i = 0, j = 0; i < a.size(); ++i) {
        if (!a_matched[i]) continue;
        while (!b_matched[j]) ++j;
        if (a[i] != b[j]) ++half_transpositions;
        ++j;
    }
    const double m = static_cast<double>(matches);
    const double t = static_cast<double>(half_transpositions / 2);
    const double jaro = (m / static_cast<double>(a.size()) + m / static_cast<double>(b.size()) +
                         (m - t) / m) / 3.0;

    std::size_t prefix = 0;
    while (prefix < 4 && prefix < a.size() && a[prefix] == b[prefix]) ++prefix;
    return std::min(1.0, jaro + static_cast<double>(prefix) * 0.1 * (1.0 - jaro));
}

double phonetic_substitution_cost(char32_t x, char32_t y, const PhoneticTable& table) {
    if (x == y) return 0.0;
    const auto& vx = table.lookup(x);
    const auto& vy = table.lookup(y);
    double dot = 0;
    double nx = 0;
    double ny = 0;
    for (std::size_t k = 0; k < kPhoneticDim; ++k) {
        dot += vx[k] * vy[k];
        nx += vx[k] * vx[k];
        ny += vy[k] * vy[k];
    }
    if (nx == 0.0 || ny == 0.0) return 1.0;
    return std::clamp(1.0 - dot / std::sqrt(nx * ny), 0.0, 1.0);
}

double phonetic_similarity(std::u32string_view a, std::u32string_view b, const PhoneticTable& table) {
    if (a.empty() || b.empty()) throw UsageError("phonetic similarity needs two non-empty words");
    std::vector<double> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<double>(j);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        double diagonal = row[0];
        row[0] = static_cast<double>(i);
        for (std::size_t j = 1; j <= b.size(); ++j) {
            double above = row[j];
            double substitute = diagonal + phonetic_substitution_cost(a[i - 1], b[j - 1], table);
            row[j] = std::min({above + 1.0, row[j - 1] + 1.0, substitute});
            diagonal = above;
        }
    }
    double longest = static_cast<double>(std::max(a.size(), b.size()));
    return std::clamp(1.0 - row[b.size()] / longest, 0.0, 1.0);
}

double phonetic_similarity(const NormalizedWord& a, const NormalizedWord& b, const PhoneticTable& table) {
    return phonetic_similarity(a.canonical, b.canonical, table);
}

}  // namespace cognate
