// A small backtracking pattern engine over Unicode scalar values.
//
// std::regex cannot match \p{L}-style property classes and the system has
// no ICU, so the engine is built here: it supports exactly the construct
// set the entity patterns need, with Python-compatible semantics
// (leftmost-first matching, greedy quantifiers, Unicode-aware \b and \d).
//
// Supported syntax:
//   literals, escaped literals (\. \- \@ \/ "\ " ...)
//   character classes [...] with ranges, negation, \d and \p{...} members
//   \d \p{L} \p{N} \p{P} outside classes
//   groups (...) and (?:...), lookahead (?=...)
//   alternation |, quantifiers ? * + {m} {m,} {m,n} (greedy)
//   anchors ^ $ and word boundary \b
//
// Compiled patterns are immutable and safe to share across threads.
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace entity_guard::rx {

struct Span {
    std::size_t begin = 0;  // code point offsets, half-open
    std::size_t end = 0;
    bool operator==(const Span&) const = default;
};

namespace detail {
struct Program;
}

class Pattern {
  public:
    // Throws PatternError on syntax the engine does not implement.
    static Pattern compile(std::string_view pattern_utf8);

    // Leftmost match whose start is >= pos, first result in backtracking
    // order. Anchored variant requires the match to start exactly at pos.
    std::optional<Span> search(std::u32string_view text, std::size_t pos = 0) const;
    std::optional<Span> match_at(std::u32string_view text, std::size_t pos) const;

    // True when the pattern consumes the entire text.
    bool full_match(std::u32string_view text) const;

    // Leftmost-first, non-overlapping matches in input order.
    std::vector<Span> find_all(std::u32string_view text) const;

    const std::string& source() const { return source_; }

    bool uses_lookahead() const;
    bool uses_property_classes() const;
    bool uses_anchors() const;

  private:
    Pattern() = default;
    std::string source_;
    std::shared_ptr<const detail::Program> program_;
};

}  // namespace entity_guard::rx
