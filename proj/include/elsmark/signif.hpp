#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "elsmark/els.hpp"
#include "elsmark/textstream.hpp"

namespace elsmark {

// Letter-frequency model of unwatermarked text, used to price chance ELS
// matches. Frequencies sum to 1; letters absent from the model are priced at
// the 1e-6 floor so p-values never hit zero.
struct NullModel {
  enum class Source { ReferenceCorpus, SelfEstimated };

  std::array<double, 26> freq{};
  Source source = Source::ReferenceCorpus;

  double freq_of(char letter) const;

  // Built-in English letter frequencies (reference-corpus default).
  static const NullModel& reference();
  // Estimated from the stream's own a-z letters; uniform when none exist.
  static NullModel from_stream(const LetterStream& stream);
};

enum class Correction { Bonferroni, None };

struct SignifConfig {
  double alpha = 0.001;
  Correction correction = Correction::Bonferroni;
  std::uint64_t mc_trials = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

// Per-slot hit probability of a cyclic spec under the null: the mean
// frequency of the payload letters over one cycle.
double slot_probability(const ElsSpec& spec, const NullModel& null);

// Binomial upper-tail p-value of the observed slot matches.
double els_match_pvalue(const MatchCount& count, const ElsSpec& spec,
                        const NullModel& null);

struct WordCountExpectation {
  double expectation = 0.0;
  double pvalue = 1.0;  // Poisson upper tail at the observed count
};

// Expected number of chance occurrences of a word over all periods in
// [d_min, d_max] in a stream of the given length, and the Poisson p-value
// of an observed count.
WordCountExpectation expected_word_count(std::uint64_t stream_len,
                                         std::string_view word,
                                         std::uint32_t d_min,
                                         std::uint32_t d_max,
                                         const NullModel& null,
                                         std::uint64_t observed_count);

// Permutation p-value: shuffles the stream's letters mc_trials times and
// ranks the observed match count; returns (1 + #{>= observed}) / (trials+1).
double mc_pvalue(const LetterStream& stream, const ElsSpec& spec,
                 std::uint64_t mc_trials, std::uint64_t seed);

}  // namespace elsmark
