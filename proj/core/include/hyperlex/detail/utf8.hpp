#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <string>
#include <string_view>

#include "hyperlex/detail/unicode_tables.hpp"

namespace hyperlex::detail {

inline constexpr char32_t kReplacementChar = 0xFFFD;

struct DecodedChar {
  char32_t codepoint;
  unsigned length;  // bytes consumed, >= 1
};

// Decodes one code point at `pos`. Invalid sequences (bad continuation
// bytes, overlong forms, surrogates, out-of-range values) yield
// U+FFFD and consume a single byte, so decoding never fails.
inline DecodedChar decode_utf8(std::string_view text, std::size_t pos) {
  const auto byte = [&](std::size_t i) -> std::uint8_t {
    return static_cast<std::uint8_t>(text[i]);
  };
  const std::uint8_t b0 = byte(pos);
  if (b0 < 0x80) return {b0, 1};

  unsigned length = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    length = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    length = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    length = 4;
    cp = b0 & 0x07;
  } else {
    return {kReplacementChar, 1};
  }
  if (pos + length > text.size()) return {kReplacementChar, 1};
  for (unsigned i = 1; i < length; ++i) {
    const std::uint8_t b = byte(pos + i);
    if ((b & 0xC0) != 0x80) return {kReplacementChar, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMinByLength[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMinByLength[length]) return {kReplacementChar, 1};
  if (cp >= 0xD800 && cp <= 0xDFFF) return {kReplacementChar, 1};
  if (cp > 0x10FFFF) return {kReplacementChar, 1};
  return {cp, length};
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline bool is_letter(char32_t cp) {
  const auto* begin = std::begin(kLetterRanges);
  const auto* end = std::end(kLetterRanges);
  const auto* it = std::upper_bound(
      begin, end, cp,
      [](char32_t value, const CodepointRange& r) { return value < r.lo; });
  if (it == begin) return false;
  --it;
  return cp >= it->lo && cp <= it->hi;
}

// Simple one-to-one lowercase mapping; code points whose lowercase form
// expands to multiple characters are left unchanged.
inline char32_t to_lower(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= U'A' && cp <= U'Z') ? cp + 0x20 : cp;
  }
  const auto* begin = std::begin(kLowerMappings);
  const auto* end = std::end(kLowerMappings);
  const auto* it = std::lower_bound(
      begin, end, cp,
      [](const LowerMapping& m, char32_t value) { return m.from < value; });
  if (it != end && it->from == cp) return it->to;
  return cp;
}

}  // namespace hyperlex::detail
