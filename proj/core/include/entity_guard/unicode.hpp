// UTF-8 transcoding and the Unicode character queries used by the
// pattern engine and the tokenizer. Property lookups are backed by
// range tables compiled into the library; no locale involvement.
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace entity_guard::uni {

inline constexpr char32_t kReplacementChar = 0xFFFD;
inline constexpr char32_t kZeroWidthJoiner = 0x200D;

// Decodes UTF-8 into code points. Malformed sequences decode to U+FFFD,
// one replacement per invalid byte, so decoding never fails.
std::u32string decode_utf8(std::string_view text);

std::string encode_utf8(std::u32string_view text);
void append_utf8(std::string& out, char32_t cp);

// Number of Unicode scalar values in a UTF-8 string.
std::size_t count_code_points(std::string_view text);

bool is_letter(char32_t cp);       // \p{L}
bool is_number(char32_t cp);       // \p{N}
bool is_decimal_digit(char32_t cp); // \p{Nd}, the \d class
bool is_punctuation(char32_t cp);  // \p{P}
bool is_extended_pictographic(char32_t cp);
bool is_whitespace(char32_t cp);

// Word character for \b purposes: letter, number, or underscore.
inline bool is_word(char32_t cp) {
    return cp == U'_' || is_letter(cp) || is_number(cp);
}

// Emoji run plumbing: skin-tone modifiers and variation selectors that
// may trail a pictographic code point.
inline bool is_emoji_modifier(char32_t cp) { return cp >= 0x1F3FB && cp <= 0x1F3FF; }
inline bool is_variation_selector(char32_t cp) { return cp == 0xFE0E || cp == 0xFE0F; }

}  // namespace entity_guard::uni
