#pragma once

#include <array>
#include <atomic>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cognate {

inline constexpr std::size_t kPhoneticDim = 38;
using PhoneticVector = std::array<double, kPhoneticDim>;

// Articulatory feature vectors for the canonical (Devanagari) block. Rows are
// keyed by offset from the block base; codepoints without a row (digits,
// punctuation, other scripts) map to the zero vector and are counted.
class PhoneticTable {
public:
    PhoneticTable();
    PhoneticTable(const PhoneticTable& other);
    PhoneticTable& operator=(const PhoneticTable& other);

    // The table compiled into the library; data/phonetic_features.tsv is a dump of it.
    static const PhoneticTable& builtin();

    // TSV: "# version: <v>" comment, header "offset<TAB><feature names>", one row per
    // mapped offset (hex). Throws DataError on malformed input.
    static PhoneticTable read(std::istream& in, std::string_view source_name);
    static PhoneticTable read_file(const std::string& path);
    void write(std::ostream& out) const;

    const PhoneticVector& lookup(char32_t canonical) const;
    bool contains(char32_t canonical) const;
    std::size_t unmapped_lookups() const { return unmapped_.load(std::memory_order_relaxed); }
    void reset_diagnostics() const { unmapped_.store(0, std::memory_order_relaxed); }

    const std::string& version() const { return version_; }
    static const std::array<std::string_view, kPhoneticDim>& feature_names();

    void set_row(std::size_t offset, const PhoneticVector& row);
    bool operator==(const PhoneticTable& other) const {
        return version_ == other.version_ && rows_ == other.rows_;
    }

private:
    std::string version_;
    std::array<std::optional<PhoneticVector>, 128> rows_;
    mutable std::atomic<std::size_t> unmapped_{0};
};

}  // namespace cognate
