#include "elsmark/els.hpp"

#include <array>
#include <stdexcept>

namespace elsmark {

void ElsSpec::validate() const {
  if (payload.empty()) throw std::invalid_argument("ElsSpec: empty payload");
  for (const char c : payload) {
    if (c < 'a' || c > 'z') {
      throw std::invalid_argument("ElsSpec: payload letter outside a-z");
    }
  }
  if (period < 1) throw std::invalid_argument("ElsSpec: period must be >= 1");
  if (offset >= period) {
    throw std::invalid_argument("ElsSpec: offset must be < period");
  }
}

MatchCount match_count_view(std::u32string_view letters, const ElsSpec& spec) {
  spec.validate();
  if (!spec.cyclic) {
    throw std::invalid_argument("match_count: spec must be cyclic");
  }
  MatchCount mc;
  const std::size_t n = letters.size();
  const std::size_t len = spec.payload.size();
  std::size_t j = 0;
  for (std::size_t i = spec.offset; i < n; i += spec.period, ++j) {
    ++mc.trials;
    if (letters[i] == static_cast<char32_t>(spec.payload[j % len])) {
      ++mc.matches;
    }
  }
  return mc;
}

MatchCount match_count(const LetterStream& stream, const ElsSpec& spec) {
  return match_count_view(stream.letters, spec);
}

std::vector<ScanHit> scan_word(const LetterStream& stream,
                               std::string_view word, std::uint32_t d_min,
                               std::uint32_t d_max) {
  if (word.size() < 2) {
    throw std::invalid_argument("scan_word: word must have length >= 2");
  }
  if (d_min < 1 || d_max < d_min) {
    throw std::invalid_argument("scan_word: bad period range");
  }
  for (const char c : word) {
    if (c < 'a' || c > 'z') {
      throw std::invalid_argument("scan_word: word letter outside a-z");
    }
  }
  const std::size_t n = stream.size();
  const std::size_t len = word.size();
  std::vector<ScanHit> hits;
  if (n == 0) return hits;

  // First-letter index makes the inner scan proportional to candidate
  // starts, not stream length.
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < n; ++i) {
    if (stream.letters[i] == static_cast<char32_t>(word[0])) {
      starts.push_back(i);
    }
  }
  for (std::uint32_t d = d_min; d <= d_max; ++d) {
    const std::uint64_t span = static_cast<std::uint64_t>(len - 1) * d;
    if (span >= n) break;  // longer periods reach even further
    for (const std::size_t s : starts) {
      if (s + span >= n) continue;
      bool ok = true;
      for (std::size_t i = 1; i < len; ++i) {
        if (stream.letters[s + i * d] != static_cast<char32_t>(word[i])) {
          ok = false;
          break;
        }
      }
      if (ok) hits.push_back({d, s});
    }
  }
  return hits;
}

std::pair<ElsSpec, MatchCount> estimate_payload(const LetterStream& stream,
                                                std::uint32_t period,
                                                std::uint32_t payload_len) {
  if (period < 1) throw std::invalid_argument("estimate_payload: period");
  if (payload_len < 1) {
    throw std::invalid_argument("estimate_payload: payload_len");
  }
  const std::size_t n = stream.size();
  bool have_best = false;
  ElsSpec best_spec;
  MatchCount best_count;

  for (std::uint32_t s = 0; s < period; ++s) {
    const std::uint64_t trials =
        n > s ? (n - s + period - 1) / period : 0;
    if (trials < payload_len) continue;  // some residue class would be empty

    // Majority letter per residue class; ties toward the smaller letter so
    // the recovered payload is the alphabetically smallest maximizer.
    std::string payload(payload_len, 'a');
    bool usable = true;
    for (std::uint32_t r = 0; r < payload_len && usable; ++r) {
      std::array<std::uint64_t, 26> hist{};
      std::uint64_t seen = 0;
      std::size_t j = r;
      for (std::size_t i = s + static_cast<std::size_t>(r) * period; i < n;
           i += static_cast<std::size_t>(period) * payload_len,
                       j += payload_len) {
        const char32_t c = stream.letters[i];
        if (c >= 'a' && c <= 'z') {
          ++hist[c - 'a'];
          ++seen;
        }
      }
      if (seen == 0) {
        usable = false;  // raw-mode class with no a-z symbols
        break;
      }
      int arg = 0;
      for (int c = 1; c < 26; ++c) {
        if (hist[c] > hist[arg]) arg = c;
      }
      payload[r] = static_cast<char>('a' + arg);
    }
    if (!usable) continue;

    const ElsSpec spec{payload, period, s, true};
    const MatchCount mc = match_count(stream, spec);
    if (!have_best) {
      have_best = true;
      best_spec = spec;
      best_count = mc;
      continue;
    }
    // Compare matches/trials as exact fractions.
    const auto lhs = static_cast<unsigned __int128>(mc.matches) *
                     best_count.trials;
    const auto rhs = static_cast<unsigned __int128>(best_count.matches) *
                     mc.trials;
    if (lhs > rhs) {
      best_spec = spec;
      best_count = mc;
    }
    // Equal ratios keep the earlier (smaller) offset; within one offset the
    // majority vote already picked the alphabetically smallest payload.
  }
  if (!have_best) {
    throw std::invalid_argument("estimate_payload: insufficient data");
  }
  return {best_spec, best_count};
}

}  // namespace elsmark
