#include <doctest.h>

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "elsmark/attacks.hpp"
#include "elsmark/hashbit.hpp"
#include "elsmark/stats.hpp"
#include "helpers.hpp"

using namespace elsmark;

namespace {

std::vector<std::string> load_wordlist() {
  std::ifstream in(std::string(ELSMARK_DATA_DIR) + "/wordlist_10k.txt");
  REQUIRE(in.good());
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  REQUIRE(words.size() == 10000);
  return words;
}

// First `count` distinct lexicon words whose bit under the key matches.
std::vector<std::string> words_with_bit(const std::vector<std::string>& lex,
                                        std::string_view key, int bit,
                                        std::size_t count) {
  std::vector<std::string> out;
  for (const auto& w : lex) {
    if (word_bit(w, key) == bit) {
      out.push_back(w);
      if (out.size() == count) break;
    }
  }
  REQUIRE(out.size() == count);
  return out;
}

std::string join(const std::vector<std::string>& words) {
  std::string text;
  for (const auto& w : words) {
    if (!text.empty()) text += ' ';
    text += w;
  }
  return text;
}

}  // namespace

TEST_CASE("word_bit is deterministic and case/punctuation blind") {
  CHECK(word_bit("harbour", "key") == word_bit("harbour", "key"));
  CHECK(word_bit("Harbour,", "key") == word_bit("harbour", "key"));
  CHECK_THROWS_AS(word_bit("", "key"), std::invalid_argument);
}

TEST_CASE("word_bit is balanced over the bundled lexicon") {
  const auto words = load_wordlist();
  for (const std::string key : {"k1", "watermark", ""}) {
    std::size_t ones = 0;
    for (const auto& w : words) ones += word_bit(w, key);
    const double frac = static_cast<double>(ones) / words.size();
    CHECK(frac >= 0.48);
    CHECK(frac <= 0.52);
  }
}

TEST_CASE("different keys agree on roughly half the lexicon") {
  const auto words = load_wordlist();
  std::size_t agree = 0;
  for (const auto& w : words) {
    agree += word_bit(w, "k1") == word_bit(w, "k2") ? 1 : 0;
  }
  const double frac = static_cast<double>(agree) / words.size();
  CHECK(frac >= 0.48);
  CHECK(frac <= 0.52);
}

TEST_CASE("embed_bits with bias 1.0 and full coverage emits only 1-bits") {
  const auto words = load_wordlist();
  const std::string key = "full";
  const auto zeros = words_with_bit(words, key, 0, 30);
  const auto ones = words_with_bit(words, key, 1, 30);
  RewriteLexicon lex;
  for (std::size_t i = 0; i < 30; ++i) {
    lex.variants[zeros[i]] = {zeros[i], ones[i]};
  }
  const BitWatermarkConfig config{key, 1.0};
  const auto result = embed_bits(join(zeros), lex, config, 9);
  CHECK(result.choice_points == 30);
  CHECK(result.total_words == 30);
  const auto report = detect_bits(result.text, key);
  CHECK(report.ones == 30);
  CHECK(report.n == 30);
}

TEST_CASE("embed_bits with singleton variants is the identity") {
  RewriteLexicon lex;
  const BitWatermarkConfig config{"key", 0.9};
  const std::string text = "nothing here has any variants at all";
  const auto result = embed_bits(text, lex, config, 4);
  CHECK(result.text == text);
  CHECK(result.choice_points == 0);
}

TEST_CASE("round-trip at bias 0.9 over 500 choice points is significant") {
  const auto words = load_wordlist();
  const std::string key = "roundtrip";
  const auto zeros = words_with_bit(words, key, 0, 500);
  const auto ones = words_with_bit(words, key, 1, 500);
  RewriteLexicon lex;
  for (std::size_t i = 0; i < 500; ++i) {
    lex.variants[zeros[i]] = {zeros[i], ones[i]};
  }
  const BitWatermarkConfig config{key, 0.9};
  const auto result = embed_bits(join(zeros), lex, config, 11);
  CHECK(result.choice_points == 500);
  const auto report = detect_bits(result.text, key);
  CHECK(report.keyed);
  CHECK(report.pvalue < 1e-4);
  // Coverage bound: ones >= bias*coverage - 3*sqrt(n)
  CHECK(static_cast<double>(report.ones) >=
        0.9 * 500.0 - 3.0 * std::sqrt(500.0));
}

TEST_CASE("detect_bits reproduces exact binomial examples") {
  const auto words = load_wordlist();
  const std::string key = "exact";
  // 20 one-bits: p = 2^-20
  const auto all_ones = words_with_bit(words, key, 1, 20);
  const auto r1 = detect_bits(join(all_ones), key);
  CHECK(r1.ones == 20);
  CHECK(r1.n == 20);
  CHECK(r1.pvalue == doctest::Approx(9.5367431640625e-7).epsilon(1e-12));

  // 5 ones out of 10: p = 638/1024
  auto mixed = words_with_bit(words, key, 1, 5);
  const auto zs = words_with_bit(words, key, 0, 5);
  mixed.insert(mixed.end(), zs.begin(), zs.end());
  const auto r2 = detect_bits(join(mixed), key);
  CHECK(r2.ones == 5);
  CHECK(r2.n == 10);
  CHECK(r2.pvalue == doctest::Approx(638.0 / 1024.0).epsilon(1e-12));
}

TEST_CASE("detect_bits rejects empty input") {
  CHECK_THROWS_AS(detect_bits("", "key"), std::invalid_argument);
  CHECK_THROWS_AS(detect_bits("... !!! ---", "key"), std::invalid_argument);
}

TEST_CASE("wrong-key p-values look uniform") {
  const auto words = load_wordlist();
  const std::string key = "right-key";
  const auto zeros = words_with_bit(words, key, 0, 400);
  const auto ones = words_with_bit(words, key, 1, 400);
  RewriteLexicon lex;
  for (std::size_t i = 0; i < 400; ++i) {
    lex.variants[zeros[i]] = {zeros[i], ones[i]};
  }
  const BitWatermarkConfig config{key, 0.95};
  const auto result = embed_bits(join(zeros), lex, config, 13);
  REQUIRE(detect_bits(result.text, key).pvalue < 1e-6);

  std::vector<double> pvalues;
  for (int k = 0; k < 200; ++k) {
    const auto report =
        detect_bits(result.text, "wrong-key-" + std::to_string(k));
    pvalues.push_back(report.pvalue);
  }
  const double d = testutil::ks_statistic_uniform(pvalues);
  CHECK(d < testutil::ks_critical_1pct(pvalues.size()));
}

TEST_CASE("substitution sweep: hashbit and ELS curves side by side") {
  // Comparative robustness report; no winner asserted, only that both
  // curves exist over the same grid and are valid rates.
  const auto words = load_wordlist();
  const std::string key = "sweep";
  const auto zeros = words_with_bit(words, key, 0, 120);
  const auto ones = words_with_bit(words, key, 1, 120);
  RewriteLexicon lex;
  for (std::size_t i = 0; i < 120; ++i) {
    lex.variants[zeros[i]] = {zeros[i], ones[i]};
  }
  const MarkovModel model =
      train("the tide turns while the town sleeps and the boats wait", 3,
            0.05);
  const ElsSpec spec{"o", 32, 0, true};
  const BitWatermarkConfig bit_config{key, 0.95};
  const double alpha = 0.001;

  std::vector<std::string> els_texts, bit_texts;
  for (int i = 0; i < 4; ++i) {
    els_texts.push_back(generate_constrained(model, 4096, spec, 40 + i));
    bit_texts.push_back(embed_bits(join(zeros), lex, bit_config, 50 + i).text);
  }
  DetectionConfig det;
  det.periods = {32};
  det.payloads = {"o"};

  std::vector<double> els_curve, bit_curve;
  for (const double rate : {0.0, 0.02, 0.05}) {
    AttackConfig attack;
    attack.sub_rate = rate;
    attack.seed = 60;
    int els_hits = 0, bit_hits = 0;
    for (std::size_t i = 0; i < els_texts.size(); ++i) {
      AttackConfig unit = attack;
      unit.seed = rng::derive_seed(60, static_cast<std::uint64_t>(rate * 1000), i);
      const auto s = normalize(apply_edits(els_texts[i], unit),
                               NormMode::LettersOnly);
      els_hits += detect_periodic(s, det).detected ? 1 : 0;
      bit_hits +=
          detect_bits(apply_edits(bit_texts[i], unit), key).pvalue <= alpha
              ? 1
              : 0;
    }
    els_curve.push_back(els_hits / 4.0);
    bit_curve.push_back(bit_hits / 4.0);
  }
  REQUIRE(els_curve.size() == bit_curve.size());
  for (std::size_t i = 0; i < els_curve.size(); ++i) {
    CHECK(els_curve[i] >= 0.0);
    CHECK(els_curve[i] <= 1.0);
    CHECK(bit_curve[i] >= 0.0);
    CHECK(bit_curve[i] <= 1.0);
  }
  // The no-op point detects for both schemes.
  CHECK(els_curve[0] == 1.0);
  CHECK(bit_curve[0] == 1.0);
}

TEST_CASE("config validation") {
  const BitWatermarkConfig fair{"k", 0.5};
  const BitWatermarkConfig over{"k", 1.2};
  const BitWatermarkConfig ok{"k", 0.8};
  CHECK_THROWS_AS(fair.validate(), std::invalid_argument);
  CHECK_THROWS_AS(over.validate(), std::invalid_argument);
  CHECK_NOTHROW(ok.validate());
}
