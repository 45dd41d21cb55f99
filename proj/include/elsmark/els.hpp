#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "elsmark/textstream.hpp"

namespace elsmark {

// An equidistant-letter-sequence watermark pattern. Cyclic specs repeat the
// payload indefinitely over the constrained slots (the watermark mode);
// non-cyclic specs denote a single occurrence (the classic scan mode).
struct ElsSpec {
  std::string payload;     // lowercase a-z, length >= 1
  std::uint32_t period;    // skip d >= 1
  std::uint32_t offset;    // 0 <= offset < period
  bool cyclic = true;

  void validate() const;
  bool operator==(const ElsSpec&) const = default;
};

struct MatchCount {
  std::uint64_t matches = 0;
  std::uint64_t trials = 0;
  bool operator==(const MatchCount&) const = default;
};

// Counts slot hits of a cyclic spec: slot j sits at index offset + j*period
// and matches when the letter equals payload[j mod L]. Partial payload
// cycles at the end still count as trials.
MatchCount match_count(const LetterStream& stream, const ElsSpec& spec);

// Same counting over a raw symbol window (used by the windowed detector).
MatchCount match_count_view(std::u32string_view letters, const ElsSpec& spec);

struct ScanHit {
  std::uint32_t period;
  std::size_t start;
  bool operator==(const ScanHit&) const = default;
};

// All single occurrences of word (length >= 2) at periods in
// [d_min, d_max], ordered by (period, start).
std::vector<ScanHit> scan_word(const LetterStream& stream,
                               std::string_view word, std::uint32_t d_min,
                               std::uint32_t d_max);

// Keyless payload recovery: for each offset, takes the majority letter of
// every payload-cycle residue class and returns the candidate maximizing
// matches/trials. Ties break toward the smallest offset, then the
// alphabetically smallest payload. Throws std::invalid_argument
// ("insufficient data") when no offset has at least one slot per residue
// class.
std::pair<ElsSpec, MatchCount> estimate_payload(const LetterStream& stream,
                                                std::uint32_t period,
                                                std::uint32_t payload_len);

}  // namespace elsmark
