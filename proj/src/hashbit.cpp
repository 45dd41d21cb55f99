#include "elsmark/hashbit.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

#include "elsmark/rng.hpp"
#include "elsmark/stats.hpp"
#include "elsmark/textstream.hpp"

namespace elsmark {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h) {
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace

void BitWatermarkConfig::validate() const {
  if (!(target_bias > 0.5 && target_bias <= 1.0)) {
    throw std::invalid_argument(
        "BitWatermarkConfig: target_bias must be in (0.5, 1]");
  }
}

int word_bit(std::string_view word, std::string_view key) {
  if (word.empty()) throw std::invalid_argument("word_bit: empty word");
  std::uint64_t h = fnv1a64(key, kFnvOffset);
  h ^= 0xFF;
  h *= kFnvPrime;
  h = fnv1a64(fold_word(word), h);
  return static_cast<int>(rng::mix64(h) >> 63);
}

BitEmbedResult embed_bits(std::string_view text, const RewriteLexicon& lexicon,
                          const BitWatermarkConfig& config,
                          std::uint64_t seed) {
  config.validate();
  rng::Rng gen(seed);
  BitEmbedResult result;
  std::istringstream in{std::string(text)};
  std::string token;
  std::string out;
  while (in >> token) {
    ++result.total_words;
    const std::vector<std::string> variants = lexicon.variants_of(token);
    std::vector<const std::string*> zeros;
    std::vector<const std::string*> ones;
    for (const auto& v : variants) {
      if (fold_word(v).empty()) continue;
      (word_bit(v, config.key) ? ones : zeros).push_back(&v);
    }
    const std::string* chosen = &token;
    if (!zeros.empty() && !ones.empty()) {
      ++result.choice_points;
      const auto& cls = gen.real() < config.target_bias ? ones : zeros;
      chosen = cls[gen.below(cls.size())];
    }
    if (!out.empty()) out += ' ';
    out += *chosen;
  }
  result.text = std::move(out);
  return result;
}

BitDetectReport detect_bits(std::string_view text, std::string_view key) {
  BitDetectReport report;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (fold_word(token).empty()) continue;  // punctuation-only token
    report.ones += word_bit(token, key);
    ++report.n;
  }
  if (report.n == 0) {
    throw std::invalid_argument("detect_bits: no scorable words");
  }
  report.pvalue = stats::binomial_sf(report.ones, report.n, 0.5);
  return report;
}

}  // namespace elsmark
