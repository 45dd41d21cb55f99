#include "elsmark/textstream.hpp"

namespace elsmark {

namespace {

// Base letters for U+00C0..U+00FF (Latin-1 Supplement). 0 = no single-letter
// fold (ligatures, thorn, sharp s, math signs).
constexpr char kLatin1[0x40] = {
    // 0xC0: À Á Â Ã Ä Å Æ Ç È É Ê Ë Ì Í Î Ï
    'a', 'a', 'a', 'a', 'a', 'a', 0, 'c', 'e', 'e', 'e', 'e', 'i', 'i', 'i',
    'i',
    // 0xD0: Ð Ñ Ò Ó Ô Õ Ö × Ø Ù Ú Û Ü Ý Þ ß
    'd', 'n', 'o', 'o', 'o', 'o', 'o', 0, 'o', 'u', 'u', 'u', 'u', 'y', 0, 0,
    // 0xE0: à á â ã ä å æ ç è é ê ë ì í î ï
    'a', 'a', 'a', 'a', 'a', 'a', 0, 'c', 'e', 'e', 'e', 'e', 'i', 'i', 'i',
    'i',
    // 0xF0: ð ñ ò ó ô õ ö ÷ ø ù ú û ü ý þ ÿ
    'd', 'n', 'o', 'o', 'o', 'o', 'o', 0, 'o', 'u', 'u', 'u', 'u', 'y', 0,
    'y'};

// Base letters for U+0100..U+017F (Latin Extended-A). The two-letter
// ligatures IJ (U+0132/33) and OE (U+0152/53) have no single-letter fold.
char latin_ext_a(char32_t cp) {
  if (cp <= 0x105) return 'a';
  if (cp <= 0x10D) return 'c';
  if (cp <= 0x111) return 'd';
  if (cp <= 0x11B) return 'e';
  if (cp <= 0x123) return 'g';
  if (cp <= 0x127) return 'h';
  if (cp <= 0x131) return 'i';
  if (cp <= 0x133) return 0;
  if (cp <= 0x135) return 'j';
  if (cp <= 0x138) return 'k';
  if (cp <= 0x142) return 'l';
  if (cp <= 0x14B) return 'n';
  if (cp <= 0x151) return 'o';
  if (cp <= 0x153) return 0;
  if (cp <= 0x159) return 'r';
  if (cp <= 0x161) return 's';
  if (cp <= 0x167) return 't';
  if (cp <= 0x173) return 'u';
  if (cp <= 0x175) return 'w';
  if (cp <= 0x178) return 'y';
  if (cp <= 0x17E) return 'z';
  return 's';  // U+017F LATIN SMALL LETTER LONG S
}

}  // namespace

std::optional<char> fold_letter(char32_t cp) {
  if (cp >= 'a' && cp <= 'z') return static_cast<char>(cp);
  if (cp >= 'A' && cp <= 'Z') return static_cast<char>(cp - 'A' + 'a');
  if (cp >= 0xC0 && cp <= 0xFF) {
    const char c = kLatin1[cp - 0xC0];
    if (c) return c;
    return std::nullopt;
  }
  if (cp >= 0x100 && cp <= 0x17F) {
    const char c = latin_ext_a(cp);
    if (c) return c;
    return std::nullopt;
  }
  return std::nullopt;
}

char32_t decode_utf8(std::string_view s, std::size_t& i) {
  const auto byte = [&](std::size_t j) {
    return static_cast<unsigned char>(s[j]);
  };
  const unsigned char b0 = byte(i);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + len > s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (int j = 1; j < len; ++j) {
    const unsigned char bj = byte(i + j);
    if ((bj & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (bj & 0x3F);
  }
  i += len;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

LetterStream normalize(std::string_view text, NormMode mode) {
  LetterStream stream;
  stream.mode = mode;
  std::size_t byte = 0;
  std::size_t index = 0;  // code point index
  while (byte < text.size()) {
    const char32_t cp = decode_utf8(text, byte);
    if (mode == NormMode::Raw) {
      stream.letters.push_back(cp);
      stream.origin_offsets.push_back(index);
    } else if (const auto c = fold_letter(cp)) {
      stream.letters.push_back(static_cast<char32_t>(*c));
      stream.origin_offsets.push_back(index);
    }
    ++index;
  }
  return stream;
}

std::string fold_word(std::string_view token) {
  std::string out;
  std::size_t byte = 0;
  while (byte < token.size()) {
    const char32_t cp = decode_utf8(token, byte);
    if (const auto c = fold_letter(cp)) out += *c;
  }
  return out;
}

LetterStream LetterStream::from_ascii(std::string_view letters) {
  LetterStream stream;
  stream.mode = NormMode::LettersOnly;
  stream.letters.reserve(letters.size());
  stream.origin_offsets.reserve(letters.size());
  for (std::size_t i = 0; i < letters.size(); ++i) {
    stream.letters.push_back(static_cast<char32_t>(letters[i]));
    stream.origin_offsets.push_back(i);
  }
  return stream;
}

}  // namespace elsmark
