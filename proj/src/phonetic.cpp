#include "cognate/phonetic.hpp"

#include <charconv>
#include <fstream>
#include <initializer_list>
#include <utility>

#include <fmt/format.h>

#include "cognate/error.hpp"
#include "cognate/script.hpp"
#include "cognate/text.hpp"

namespace cognate {

namespace {

enum Feature : std::size_t {
    kVowel, kVowelSign, kConsonant, kAnusvara, kCandrabindu, kVisarga, kVirama, kNuktaSign,
    kLong, kLow, kMid, kHigh, kFront, kCentral, kBack, kRounded, kDiphthong, kSyllabic,
    kVelar, kPalatal, kRetroflex, kDental, kAlveolar, kLabial, kGlottal,
    kStop, kNasal, kApproximant, kLateral, kRhotic, kFricative, kFlap,
    kVoiced, kAspirated, kNasalized, kSibilant, kLabiodental, kAvagraha,
};

constexpr std::array<std::string_view, kPhoneticDim> kFeatureNames = {
    "vowel", "vowel_sign", "consonant", "anusvara", "candrabindu", "visarga", "virama", "nukta",
    "long", "low", "mid", "high", "front", "central", "back", "rounded", "diphthong", "syllabic",
    "velar", "palatal", "retroflex", "dental", "alveolar", "labial", "glottal",
    "stop", "nasal", "approximant", "lateral", "rhotic", "fricative", "flap",
    "voiced", "aspirated", "nasalized", "sibilant", "labiodental", "avagraha",
};

using Spec = std::initializer_list<std::pair<Feature, double>>;

PhoneticVector make(Spec spec) {
    PhoneticVector v{};
    for (auto [f, value] : spec) v[f] = value;
    return v;
}

PhoneticVector with(PhoneticVector v, Spec extra) {
    for (auto [f, value] : extra) v[f] = value;
    return v;
}

// Vowel qualities shared by independent letters and dependent signs.
struct VowelRow {
    std::size_t independent;  // offset of the independent letter, 0 if none
    std::size_t sign;         // offset of the dependent sign, 0 if none
    Spec quality;
};

PhoneticTable build_builtin() {
    PhoneticTable table;

    const VowelRow vowels[] = {
        {0x04, 0x00, {{kLow, 1}, {kCentral, 1}}},
        {0x05, 0x00, {{kLow, 1}, {kCentral, 1}}},
        {0x06, 0x3E, {{kLow, 1}, {kCentral, 1}, {kLong, 1}}},
        {0x07, 0x3F, {{kHigh, 1}, {kFront, 1}}},
        {0x08, 0x40, {{kHigh, 1}, {kFront, 1}, {kLong, 1}}},
        {0x09, 0x41, {{kHigh, 1}, {kBack, 1}, {kRounded, 1}}},
        {0x0A, 0x42, {{kHigh, 1}, {kBack, 1}, {kRounded, 1}, {kLong, 1}}},
        {0x0B, 0x43, {{kSyllabic, 1}, {kRhotic, 1}}},
        {0x60, 0x44, {{kSyllabic, 1}, {kRhotic, 1}, {kLong, 1}}},
        {0x0C, 0x62, {{kSyllabic, 1}, {kLateral, 1}}},
        {0x61, 0x63, {{kSyllabic, 1}, {kLateral, 1}, {kLong, 1}}},
        {0x0D, 0x45, {{kMid, 1}, {kFront, 1}, {kLow, 0.5}}},
        {0x0E, 0x46, {{kMid, 1}, {kFront, 1}}},
        {0x0F, 0x47, {{kMid, 1}, {kFront, 1}, {kLong, 1}}},
        {0x10, 0x48, {{kMid, 1}, {kFront, 1}, {kLow, 0.5}, {kLong, 1}, {kDiphthong, 1}}},
        {0x11, 0x49, {{kMid, 1}, {kBack, 1}, {kRounded, 1}, {kLow, 0.5}}},
        {0x12, 0x4A, {{kMid, 1}, {kBack, 1}, {kRounded, 1}}},
        {0x13, 0x4B, {{kMid, 1}, {kBack, 1}, {kRounded, 1}, {kLong, 1}}},
        {0x14, 0x4C, {{kMid, 1}, {kBack, 1}, {kRounded, 1}, {kLow, 0.5}, {kLong, 1}, {kDiphthong, 1}}},
    };
    for (const auto& row : vowels) {
        auto quality = make(row.quality);
        if (row.independent) table.set_row(row.independent, with(quality, {{kVowel, 1}}));
        if (row.sign) table.set_row(row.sign, with(quality, {{kVowelSign, 1}}));
    }

    // Five-member stop series: voiceless, aspirated, voiced, voiced aspirated, nasal.
    const std::pair<std::size_t, Feature> series[] = {
        {0x15, kVelar}, {0x1A, kPalatal}, {0x1F, kRetroflex}, {0x24, kDental}, {0x2A, kLabial}};
    for (auto [base, place] : series) {
        auto stop = make({{kConsonant, 1}, {place, 1}, {kStop, 1}});
        table.set_row(base + 0, stop);
        table.set_row(base + 1, with(stop, {{kAspirated, 1}}));
        table.set_row(base + 2, with(stop, {{kVoiced, 1}}));
        table.set_row(base + 3, with(stop, {{kVoiced, 1}, {kAspirated, 1}}));
        table.set_row(base + 4, make({{kConsonant, 1}, {place, 1}, {kNasal, 1}, {kVoiced, 1},
                                      {kNasalized, 1}}));
    }

    auto consonant = [](Spec spec) { return with(make(spec), {{kConsonant, 1}}); };
    table.set_row(0x29, consonant({{kAlveolar, 1}, {kNasal, 1}, {kVoiced, 1}, {kNasalized, 1}}));
    table.set_row(0x2F, consonant({{kPalatal, 1}, {kApproximant, 1}, {kVoiced, 1}}));
    table.set_row(0x30, consonant({{kAlveolar, 1}, {kRhotic, 1}, {kVoiced, 1}}));
    table.set_row(0x31, consonant({{kAlveolar, 1}, {kRhotic, 1}, {kVoiced, 1}, {kFlap, 1}}));
    table.set_row(0x32, consonant({{kAlveolar, 1}, {kLateral, 1}, {kVoiced, 1}}));
    table.set_row(0x33, consonant({{kRetroflex, 1}, {kLateral, 1}, {kVoiced, 1}}));
    table.set_row(0x34, consonant({{kRetroflex, 1}, {kApproximant, 1}, {kRhotic, 0.5}, {kVoiced, 1}}));
    table.set_row(0x35, consonant({{kLabial, 1}, {kLabiodental, 1}, {kApproximant, 1}, {kVoiced, 1}}));
    table.set_row(0x36, consonant({{kPalatal, 1}, {kFricative, 1}, {kSibilant, 1}}));
    table.set_row(0x37, consonant({{kRetroflex, 1}, {kFricative, 1}, {kSibilant, 1}}));
    table.set_row(0x38, consonant({{kDental, 1}, {kFricative, 1}, {kSibilant, 1}}));
    table.set_row(0x39, consonant({{kGlottal, 1}, {kFricative, 1}, {kVoiced, 1}}));

    // Precomposed nukta letters.
    table.set_row(0x58, consonant({{kVelar, 1}, {kStop, 1}, {kNuktaSign, 1}}));
    table.set_row(0x59, consonant({{kVelar, 1}, {kFricative, 1}, {kNuktaSign, 1}}));
    table.set_row(0x5A, consonant({{kVelar, 1}, {kFricative, 1}, {kVoiced, 1}, {kNuktaSign, 1}}));
    table.set_row(0x5B, consonant({{kAlveolar, 1}, {kFricative, 1}, {kSibilant, 1}, {kVoiced, 1},
                                   {kNuktaSign, 1}}));
    table.set_row(0x5C, consonant({{kRetroflex, 1}, {kFlap, 1}, {kVoiced, 1}, {kNuktaSign, 1}}));
    table.set_row(0x5D, consonant({{kRetroflex, 1}, {kFlap, 1}, {kVoiced, 1}, {kAspirated, 1},
                                   {kNuktaSign, 1}}));
    table.set_row(0x5E, consonant({{kLabial, 1}, {kLabiodental, 1}, {kFricative, 1}, {kNuktaSign, 1}}));
    table.set_row(0x5F, consonant({{kPalatal, 1}, {kApproximant, 1}, {kVoiced, 1}, {kNuktaSign, 1}}));

    table.set_row(0x01, make({{kCandrabindu, 1}, {kNasalized, 1}}));
    table.set_row(0x02, make({{kAnusvara, 1}, {kNasal, 1}, {kNasalized, 1}}));
    table.set_row(0x03, make({{kVisarga, 1}, {kGlottal, 1}, {kFricative, 1}}));
    table.set_row(0x3C, make({{kNuktaSign, 1}}));
    table.set_row(0x3D, make({{kAvagraha, 1}}));
    table.set_row(0x4D, make({{kVirama, 1}}));
    return table;
}

std::string format_value(double v) {
    if (v == 0.0) return "0";
    if (v == 1.0) return "1";
    return fmt::format("{}", v);
}

}  // namespace

PhoneticTable::PhoneticTable() : version_("1") {}

PhoneticTable::PhoneticTable(const PhoneticTable& other)
    : version_(other.version_), rows_(other.rows_), unmapped_(0) {}

PhoneticTable& PhoneticTable::operator=(const PhoneticTable& other) {
    version_ = other.version_;
    rows_ = other.rows_;
    unmapped_.store(0);
    return *this;
}

const PhoneticTable& PhoneticTable::builtin() {
    static const PhoneticTable table = build_builtin();
    return table;
}

const std::array<std::string_view, kPhoneticDim>& PhoneticTable::feature_names() {
    return kFeatureNames;
}

void PhoneticTable::set_row(std::size_t offset, const PhoneticVector& row) {
    if (offset >= rows_.size()) throw UsageError(fmt::format("offset {:#x} outside block", offset));
    rows_[offset] = row;
}

bool PhoneticTable::contains(char32_t canonical) const {
    if (canonical < kCanonicalBlockBase || canonical >= kCanonicalBlockBase + kBlockSize) return false;
    return rows_[canonical - kCanonicalBlockBase].has_value();
}

const PhoneticVector& PhoneticTable::lookup(char32_t canonical) const {
    static const PhoneticVector kZero{};
    if (contains(canonical)) return *rows_[canonical - kCanonicalBlockBase];
    unmapped_.fetch_add(1, std::memory_order_relaxed);
    return kZero;
}

void PhoneticTable::write(std::ostream& out) const {
    out << "# version: " << version_ << '\n';
    out << "offset";
    for (auto name : kFeatureNames) out << '\t' << name;
    out << '\n';
    for (std::size_t offset = 0; offset < rows_.size(); ++offset) {
        if (!rows_[offset]) continue;
        out << fmt::format("{:02X}", offset);
        for (double v : *rows_[offset]) out << '\t' << format_value(v);
        out << '\n';
    }
}

PhoneticTable PhoneticTable::read(std::istream& in, std::string_view source_name) {
    PhoneticTable table;
    table.version_.clear();
    std::string raw;
    std::size_t line_no = 0;
    bool header_seen = false;
    auto fail = [&](const std::string& message) {
        throw DataError(fmt::format("{}:{}: {}", source_name, line_no, message));
    };
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (line.ends_with('\r')) line.remove_suffix(1);
        if (trim(line).empty()) continue;
        if (line.starts_with('#')) {
            auto body = trim(line.substr(1));
            if (body.starts_with("version:")) table.version_ = std::string(trim(body.substr(8)));
            continue;
        }
        auto fields = split(line, '\t');
        if (!header_seen) {
            if (fields.size() != kPhoneticDim + 1 || fields[0] != "offset") {
                fail("expected header 'offset' followed by 38 feature names");
            }
            for (std::size_t i = 0; i < kPhoneticDim; ++i) {
                if (fields[i + 1] != kFeatureNames[i]) {
                    fail(fmt::format("feature column {} should be '{}'", i + 1, kFeatureNames[i]));
                }
            }
            header_seen = true;
            continue;
        }
        if (fields.size() != kPhoneticDim + 1) {
            fail(fmt::format("expected {} fields, found {}", kPhoneticDim + 1, fields.size()));
        }
        unsigned offset = 0;
        auto key = trim(fields[0]);
        auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), offset, 16);
        if (ec != std::errc{} || p != key.data() + key.size() || offset >= kBlockSize) {
            fail(fmt::format("bad offset '{}'", key));
        }
        if (table.rows_[offset]) fail(fmt::format("duplicate offset {:02X}", offset));
        PhoneticVector row{};
        for (std::size_t i = 0; i < kPhoneticDim; ++i) {
            std::string cell(trim(fields[i + 1]));
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(cell, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != cell.size() || cell.empty() || !(v >= 0.0 && v <= 1.0)) {
                fail(fmt::format("feature '{}' must be a number in [0,1], found '{}'", kFeatureNames[i], cell));
            }
            row[i] = v;
        }
        table.rows_[offset] = row;
    }
    if (!header_seen) throw DataError(fmt::format("{}: missing header row", source_name));
    if (table.version_.empty()) throw DataError(fmt::format("{}: missing '# version:' line", source_name));
    return table;
}

PhoneticTable PhoneticTable::read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(fmt::format("cannot open phonetic table '{}'", path));
    return read(in, path);
}

}  // namespace cognate
