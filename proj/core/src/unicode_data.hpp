// Range tables backing the Unicode property queries in unicode.hpp.
// The general-category tables live in unicode_data.cpp (generated, see
// tools/gen_unicode_tables.py); the pictographic tables are maintained here.
#pragma once

#include <cstddef>
#include <cstdint>

namespace entity_guard::uni::detail {

struct CpRange {
    char32_t lo;
    char32_t hi;
};

extern const CpRange k_letter[];
extern const std::size_t k_letter_size;

extern const CpRange k_number[];
extern const std::size_t k_number_size;

extern const CpRange k_decimal_digit[];
extern const std::size_t k_decimal_digit_size;

extern const CpRange k_punctuation[];
extern const std::size_t k_punctuation_size;

extern const CpRange k_extended_pictographic[];
extern const std::size_t k_extended_pictographic_size;

}  // namespace entity_guard::uni::detail
