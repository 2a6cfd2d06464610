#include "entity_guard/entities.hpp"

#include <algorithm>
#include <array>

#include "entity_guard/errors.hpp"
#include "entity_guard/unicode.hpp"

namespace entity_guard {

namespace {

constexpr std::array<std::string_view, 9> kCategoryNames = {
    "alphanumeric", "email", "emoji", "iban", "ip", "isbn", "phone", "social", "url",
};

// Verbatim registry patterns. Emoji has no pattern entry: it is matched
// by the pictographic run scanner below.
constexpr std::string_view kAlphanumeric =
    R"(\b[\p{N}\p{L}][\p{N}\p{L}\p{P}]*(\p{L}\p{N}|\p{N}\p{L})[\p{N}\p{L}\p{P}]*[\p{N}\p{L}]\b)";
constexpr std::string_view kEmail = R"(\b[\p{L}\p{N}._%+-]+@[\p{L}\p{N}.-]+\.[\p{L}]{2,}\b)";
constexpr std::string_view kIban = R"(\b([A-Z]{2})[ \-]?([0-9]{2})[ \-]?([A-Z0-9]{9,30})\b)";
constexpr std::string_view kIp = R"(\b\d{1,3}\.\d{1,3}\.\d{1,3}\.\d{1,3}\b)";
constexpr std::string_view kIsbn =
    R"(\b(?:ISBN(?:-13)?:?\ )?(?=[0-9]{13}$|(?=(?:[0-9]+[-\ ]){4})[-\ 0-9]{17}$)97[89][-\ ]?[0-9]{1,5}[-\ ]?[0-9]+[-\ ]?[0-9]+[-\ ]?[0-9]\b)";
constexpr std::string_view kPhone =
    R"(\b[\d\+\/\=\%\^\(\)\[\]\{\}][\d\., \+\:\-*\/\=\%\^\(\)\[\]\{\}]{2,}[\d\+\:\-*\/\=\%\^\(\)\[\]\{\}]\b)";
constexpr std::string_view kSocial = R"(\@[0-9_.\p{L}]{2,24}[0-9_\p{L}]\b)";
constexpr std::string_view kUrl =
    R"(\b((imap|s3|file|ftp|https?):\/\/[\p{L}\p{N}_-]+(\.[-_/?=\p{L}\p{N}]+){1,15}|\d{1,3}\.\d{1,3}\.\d{1,3}\.\d{1,3}|www\.[\p{L}\p{N}_-]+(\.[-_/?=\p{L}\p{N}]+){1,15})\b)";

std::string_view default_pattern_text(EntityCategory category) {
    switch (category) {
        case EntityCategory::alphanumeric: return kAlphanumeric;
        case EntityCategory::email: return kEmail;
        case EntityCategory::emoji: return {};
        case EntityCategory::iban: return kIban;
        case EntityCategory::ip: return kIp;
        case EntityCategory::isbn: return kIsbn;
        case EntityCategory::phone: return kPhone;
        case EntityCategory::social: return kSocial;
        case EntityCategory::url: return kUrl;
    }
    return {};
}

// Removes every (?=...) group from a pattern, tracking escapes and nesting,
// so patterns whose lookaheads anchor on $ can be used as candidate
// scanners: the full pattern is then re-validated against the candidate in
// isolation, which turns those $ anchors into end-of-entity anchors.
std::string strip_lookaheads(std::string_view pattern) {
    std::string out;
    out.reserve(pattern.size());
    std::size_t i = 0;
    while (i < pattern.size()) {
        if (pattern[i] == '\\' && i + 1 < pattern.size()) {
            out.append(pattern.substr(i, 2));
            i += 2;
            continue;
        }
        if (pattern.compare(i, 3, "(?=") == 0) {
            int depth = 0;
            std::size_t j = i;
            for (; j < pattern.size(); ++j) {
                if (pattern[j] == '\\') {
                    ++j;
                    continue;
                }
                if (pattern[j] == '(') ++depth;
                if (pattern[j] == ')' && --depth == 0) break;
            }
            if (j >= pattern.size()) throw PatternError("unbalanced lookahead group");
            i = j + 1;
            continue;
        }
        out.push_back(pattern[i]);
        ++i;
    }
    return out;
}

struct RegistryEntry {
    PatternSpec spec;
    std::optional<rx::Pattern> full;     // empty for emoji
    std::optional<rx::Pattern> scanner;  // lookahead-stripped body, when two-pass
};

std::vector<EngineRequirement> requirements_of(const rx::Pattern& p) {
    std::vector<EngineRequirement> reqs;
    if (p.uses_property_classes()) reqs.push_back(EngineRequirement::unicode_property_classes);
    if (p.uses_lookahead()) reqs.push_back(EngineRequirement::lookahead);
    if (p.uses_anchors()) reqs.push_back(EngineRequirement::anchors);
    return reqs;
}

RegistryEntry make_entry(EntityCategory category, std::string_view pattern_text) {
    RegistryEntry entry;
    entry.spec.category = category;
    entry.spec.pattern_text = std::string(pattern_text);
    if (!pattern_text.empty()) {
        entry.full = rx::Pattern::compile(pattern_text);
        entry.spec.engine_requirements = requirements_of(*entry.full);
        if (entry.full->uses_lookahead()) {
            entry.scanner = rx::Pattern::compile(strip_lookaheads(pattern_text));
        }
    }
    return entry;
}

std::array<RegistryEntry, 9>& registry() {
    static std::array<RegistryEntry, 9> entries = [] {
        std::array<RegistryEntry, 9> out;
        for (std::size_t i = 0; i < kAllCategories.size(); ++i) {
            out[i] = make_entry(kAllCategories[i], default_pattern_text(kAllCategories[i]));
        }
        return out;
    }();
    return entries;
}

// The ISBN registry pattern allows a literal label prefix before the
// number. The label positions the match but is not entity content, so the
// reported surface starts at the digits.
std::size_t label_prefix_length(std::u32string_view candidate) {
    static const std::u32string kLabel = U"ISBN";
    if (candidate.size() < kLabel.size() ||
        candidate.compare(0, kLabel.size(), kLabel) != 0) {
        return 0;
    }
    std::size_t i = kLabel.size();
    if (candidate.compare(i, 3, U"-13") == 0) i += 3;
    if (i < candidate.size() && candidate[i] == U':') ++i;
    if (i < candidate.size() && candidate[i] == U' ') return i + 1;
    return 0;
}

std::vector<rx::Span> emoji_runs(std::u32string_view text) {
    std::vector<rx::Span> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        if (!uni::is_extended_pictographic(text[i])) {
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        while (j < n) {
            const char32_t cp = text[j];
            if (uni::is_extended_pictographic(cp) || uni::is_emoji_modifier(cp) ||
                uni::is_variation_selector(cp)) {
                ++j;
                continue;
            }
            if (cp == uni::kZeroWidthJoiner && j + 1 < n &&
                uni::is_extended_pictographic(text[j + 1])) {
                j += 2;
                continue;
            }
            break;
        }
        out.push_back({i, j});
        i = j;
    }
    return out;
}

// Candidate scan with the lookahead-stripped body, then re-validation of
// the full pattern against the candidate substring in isolation.
std::vector<rx::Span> two_pass_find(const RegistryEntry& entry, std::u32string_view text) {
    std::vector<rx::Span> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto cand = entry.scanner->search(text, pos);
        if (!cand) break;
        const auto slice = text.substr(cand->begin, cand->end - cand->begin);
        if (entry.full->full_match(slice)) {
            out.push_back(*cand);
            pos = cand->end > cand->begin ? cand->end : cand->begin + 1;
        } else {
            pos = cand->begin + 1;
        }
    }
    return out;
}

}  // namespace

std::string_view to_string(EntityCategory category) {
    return kCategoryNames[static_cast<std::size_t>(category)];
}

std::optional<EntityCategory> category_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
        if (kCategoryNames[i] == name) return kAllCategories[i];
    }
    return std::nullopt;
}

const PatternSpec& pattern_for(EntityCategory category) {
    return registry()[static_cast<std::size_t>(category)].spec;
}

void override_pattern(EntityCategory category, std::string_view pattern_text) {
    registry()[static_cast<std::size_t>(category)] = make_entry(category, pattern_text);
}

void reset_patterns() {
    for (EntityCategory category : kAllCategories) {
        registry()[static_cast<std::size_t>(category)] =
            make_entry(category, default_pattern_text(category));
    }
}

std::vector<EntityMatch> detect_entities(std::string_view text, EntityCategory category) {
    const std::u32string cps = uni::decode_utf8(text);
    const RegistryEntry& entry = registry()[static_cast<std::size_t>(category)];

    std::vector<rx::Span> spans;
    if (category == EntityCategory::emoji && !entry.full) {
        spans = emoji_runs(cps);
    } else if (entry.scanner) {
        spans = two_pass_find(entry, cps);
    } else {
        spans = entry.full->find_all(cps);
    }

    std::vector<EntityMatch> out;
    out.reserve(spans.size());
    for (auto span : spans) {
        if (category == EntityCategory::isbn) {
            span.begin += label_prefix_length(
                std::u32string_view(cps).substr(span.begin, span.end - span.begin));
        }
        EntityMatch m;
        m.category = category;
        m.begin = span.begin;
        m.end = span.end;
        m.surface = uni::encode_utf8(
            std::u32string_view(cps).substr(span.begin, span.end - span.begin));
        out.push_back(std::move(m));
    }
    return out;
}

SingleEntityResult validate_single(std::string_view text, EntityCategory category) {
    auto matches = detect_entities(text, category);
    SingleEntityResult result;
    result.match_count = matches.size();
    if (matches.size() == 1) result.entity = std::move(matches.front());
    return result;
}

}  // namespace entity_guard
