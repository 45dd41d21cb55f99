#include "elsmark/signif.hpp"

#include <algorithm>
#include <stdexcept>

#include "elsmark/rng.hpp"
#include "elsmark/stats.hpp"

namespace elsmark {

namespace {

constexpr double kFreqFloor = 1e-6;

// Monogram frequencies of English text (percent), the usual reference table.
constexpr double kEnglishPercent[26] = {
    8.167, 1.492, 2.782, 4.253, 12.702, 2.228, 2.015, 6.094, 6.966,
    0.153, 0.772, 4.025, 2.406,  6.749,  7.507, 1.929, 0.095, 5.987,
    6.327, 9.056, 2.758, 0.978,  2.360,  0.150, 1.974, 0.074};

}  // namespace

double NullModel::freq_of(char letter) const {
  if (letter < 'a' || letter > 'z') {
    throw std::invalid_argument("NullModel: letter outside a-z");
  }
  const double f = freq[letter - 'a'];
  return f > 0.0 ? f : kFreqFloor;
}

const NullModel& NullModel::reference() {
  static const NullModel model = [] {
    NullModel m;
    m.source = Source::ReferenceCorpus;
    double total = 0.0;
    for (const double p : kEnglishPercent) total += p;
    for (int i = 0; i < 26; ++i) m.freq[i] = kEnglishPercent[i] / total;
    return m;
  }();
  return model;
}

NullModel NullModel::from_stream(const LetterStream& stream) {
  NullModel m;
  m.source = Source::SelfEstimated;
  std::array<std::uint64_t, 26> counts{};
  std::uint64_t total = 0;
  for (const char32_t c : stream.letters) {
    if (c >= 'a' && c <= 'z') {
      ++counts[c - 'a'];
      ++total;
    }
  }
  if (total == 0) {
    m.freq.fill(1.0 / 26.0);
    return m;
  }
  for (int i = 0; i < 26; ++i) {
    m.freq[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return m;
}

void SignifConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("SignifConfig: alpha must be in (0,1)");
  }
}

double slot_probability(const ElsSpec& spec, const NullModel& null) {
  spec.validate();
  double sum = 0.0;
  for (const char c : spec.payload) sum += null.freq_of(c);
  return sum / static_cast<double>(spec.payload.size());
}

double els_match_pvalue(const MatchCount& count, const ElsSpec& spec,
                        const NullModel& null) {
  if (count.trials < 1) {
    throw std::invalid_argument("els_match_pvalue: trials must be >= 1");
  }
  if (count.matches > count.trials) {
    throw std::invalid_argument("els_match_pvalue: matches > trials");
  }
  return stats::binomial_sf(count.matches, count.trials,
                            slot_probability(spec, null));
}

WordCountExpectation expected_word_count(std::uint64_t stream_len,
                                         std::string_view word,
                                         std::uint32_t d_min,
                                         std::uint32_t d_max,
                                         const NullModel& null,
                                         std::uint64_t observed_count) {
  if (word.empty()) throw std::invalid_argument("expected_word_count: word");
  if (d_min < 1 || d_max < d_min) {
    throw std::invalid_argument("expected_word_count: period range");
  }
  double prob = 1.0;
  for (const char c : word) prob *= null.freq_of(c);

  double starts = 0.0;
  const std::uint64_t len = word.size();
  for (std::uint64_t d = d_min; d <= d_max; ++d) {
    const std::uint64_t span = (len - 1) * d;
    if (span >= stream_len) break;
    starts += static_cast<double>(stream_len - span);
  }
  WordCountExpectation out;
  out.expectation = starts * prob;
  out.pvalue = stats::poisson_sf(observed_count, out.expectation);
  return out;
}

double mc_pvalue(const LetterStream& stream, const ElsSpec& spec,
                 std::uint64_t mc_trials, std::uint64_t seed) {
  if (mc_trials < 1) {
    throw std::invalid_argument("mc_pvalue: trials must be >= 1");
  }
  const std::uint64_t observed = match_count(stream, spec).matches;
  std::u32string letters(stream.letters);
  rng::Rng gen(seed);
  std::uint64_t at_least = 0;
  for (std::uint64_t t = 0; t < mc_trials; ++t) {
    gen.shuffle(std::span<char32_t>(letters));
    if (match_count_view(letters, spec).matches >= observed) ++at_least;
  }
  return static_cast<double>(1 + at_least) /
         static_cast<double>(mc_trials + 1);
}

}  // namespace elsmark
