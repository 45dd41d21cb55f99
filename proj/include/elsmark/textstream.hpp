#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace elsmark {

enum class NormMode { LettersOnly, Raw };

// Normalized symbol sequence that ELS positions are defined over, with a map
// back to the source text. Offsets are Unicode code point indices into the
// original input. In letters-only mode every symbol is one of 'a'..'z'.
struct LetterStream {
  std::u32string letters;
  std::vector<std::size_t> origin_offsets;
  NormMode mode = NormMode::LettersOnly;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  // Test/fixture helper: wraps an ASCII letter string as a letters-only
  // stream with identity offsets.
  static LetterStream from_ascii(std::string_view letters);
};

// Folds one code point to a lowercase ASCII letter. Covers ASCII plus the
// single-base-letter decompositions of Latin-1 Supplement and Latin
// Extended-A; everything else (Greek, Hebrew, digits, multi-letter ligatures
// like U+0152) yields nullopt and is dropped in letters-only mode.
std::optional<char> fold_letter(char32_t cp);

// Decodes the code point starting at byte i, advancing i. Invalid sequences
// decode to U+FFFD and consume one byte.
char32_t decode_utf8(std::string_view s, std::size_t& i);

// Letters-only mode: fold + keep a-z. Raw mode: every code point verbatim.
LetterStream normalize(std::string_view text, NormMode mode);

// Lowercase letters of a single token, e.g. "Cat," -> "cat".
std::string fold_word(std::string_view token);

// Appends a code point to a UTF-8 string.
void append_utf8(std::string& out, char32_t cp);

}  // namespace elsmark
