#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "elsmark/rewrite.hpp"

namespace elsmark {

// Keyed hash-derived bit-stream watermark, the comparison baseline. Unlike
// the ELS detector this one needs the key, which the reports label
// explicitly.
struct BitWatermarkConfig {
  std::string key;
  double target_bias = 0.9;  // probability of emitting a 1-bit at a choice

  void validate() const;
};

// Keyed 64-bit hash of the normalized word, reduced to one bit. Balanced
// to within a couple percent of 0.5 over a natural lexicon.
int word_bit(std::string_view word, std::string_view key);

struct BitEmbedResult {
  std::string text;
  std::uint64_t choice_points = 0;  // words with variants in both bit classes
  std::uint64_t total_words = 0;
};

// Biases word choices toward 1-bit variants at the configured rate; words
// with no cross-class variants pass through untouched.
BitEmbedResult embed_bits(std::string_view text, const RewriteLexicon& lexicon,
                          const BitWatermarkConfig& config,
                          std::uint64_t seed);

struct BitDetectReport {
  std::uint64_t ones = 0;
  std::uint64_t n = 0;
  double pvalue = 1.0;       // binomial upper tail against fair coin
  bool keyed = true;         // this detector requires the key
};

// Binomial test of the 1-bit fraction over all words that carry letters.
// Throws std::invalid_argument when the text has no scorable words.
BitDetectReport detect_bits(std::string_view text, std::string_view key);

}  // namespace elsmark
