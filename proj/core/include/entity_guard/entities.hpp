// The nine no-translate entity categories, their detection patterns, and
// deterministic extraction. Spans are half-open intervals of Unicode
// scalar offsets into the source text; surfaces are the exact UTF-8
// substrings, no normalization anywhere.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entity_guard/pattern.hpp"

namespace entity_guard {

enum class EntityCategory {
    alphanumeric,
    email,
    emoji,
    iban,
    ip,
    isbn,
    phone,
    social,
    url,
};

inline constexpr std::array<EntityCategory, 9> kAllCategories = {
    EntityCategory::alphanumeric, EntityCategory::email, EntityCategory::emoji,
    EntityCategory::iban,         EntityCategory::ip,    EntityCategory::isbn,
    EntityCategory::phone,        EntityCategory::social, EntityCategory::url,
};

std::string_view to_string(EntityCategory category);
std::optional<EntityCategory> category_from_string(std::string_view name);

enum class EngineRequirement {
    unicode_property_classes,
    lookahead,
    anchors,
};

struct PatternSpec {
    EntityCategory category;
    std::string pattern_text;  // verbatim registry entry
    std::vector<EngineRequirement> engine_requirements;
};

struct EntityMatch {
    EntityCategory category;
    std::string surface;    // substring of the source text over [begin, end)
    std::size_t begin = 0;  // code point offsets
    std::size_t end = 0;

    bool operator==(const EntityMatch&) const = default;
};

// Registry pattern for a category; total over all nine categories.
// The emoji entry carries an empty pattern_text: that category is matched
// by a pictographic run scanner, not a pattern (see detect_entities).
const PatternSpec& pattern_for(EntityCategory category);

// Replaces a category's pattern (config override). Throws PatternError if
// the replacement does not compile. Not thread-safe against concurrent
// detection; intended for process start-up.
void override_pattern(EntityCategory category, std::string_view pattern_text);
void reset_patterns();

// Leftmost-first, non-overlapping matches ordered by span start.
// Pure: identical input yields identical output.
std::vector<EntityMatch> detect_entities(std::string_view text, EntityCategory category);

// Corpus gate: exactly one entity of the category.
struct SingleEntityResult {
    std::optional<EntityMatch> entity;  // set iff match_count == 1
    std::size_t match_count = 0;

    bool ok() const { return match_count == 1; }
    bool zero() const { return match_count == 0; }
    bool multiple() const { return match_count > 1; }
};

SingleEntityResult validate_single(std::string_view text, EntityCategory category);

}  // namespace entity_guard
