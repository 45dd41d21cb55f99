#pragma once

// Test-side utilities and reference oracles. The oracles are deliberately
// written as plain loops over the formal definitions, independent of the
// library's optimized paths.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "elsmark/els.hpp"
#include "elsmark/markov.hpp"
#include "elsmark/rewrite.hpp"
#include "elsmark/rng.hpp"
#include "elsmark/signif.hpp"
#include "elsmark/textstream.hpp"

namespace testutil {

inline elsmark::LetterStream random_null_stream(elsmark::rng::Rng& gen,
                                                std::size_t n,
                                                const elsmark::NullModel& null) {
  std::string letters;
  letters.reserve(n);
  double cum[26];
  double acc = 0.0;
  for (int i = 0; i < 26; ++i) {
    acc += null.freq[i];
    cum[i] = acc;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double u = gen.real() * acc;
    int c = 25;
    for (int k = 0; k < 26; ++k) {
      if (u < cum[k]) {
        c = k;
        break;
      }
    }
    letters += static_cast<char>('a' + c);
  }
  return elsmark::LetterStream::from_ascii(letters);
}

inline std::string random_letters(elsmark::rng::Rng& gen, std::size_t n,
                                  int alphabet = 26) {
  std::string s;
  s.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    s += static_cast<char>('a' + gen.below(alphabet));
  }
  return s;
}

// Overwrites slots so the stream satisfies the spec perfectly.
inline void plant_spec(std::string& letters, const elsmark::ElsSpec& spec) {
  const std::size_t len = spec.payload.size();
  std::size_t j = 0;
  for (std::size_t i = spec.offset; i < letters.size();
       i += spec.period, ++j) {
    letters[i] = spec.payload[j % len];
  }
}

// Slot-by-slot counting straight off the definition.
inline elsmark::MatchCount naive_match_count(const std::string& letters,
                                             const elsmark::ElsSpec& spec) {
  elsmark::MatchCount mc;
  std::size_t j = 0;
  for (std::size_t i = spec.offset; i < letters.size();
       i += spec.period, ++j) {
    ++mc.trials;
    if (letters[i] == spec.payload[j % spec.payload.size()]) ++mc.matches;
  }
  return mc;
}

// Triple loop over (d, s, i).
inline std::vector<elsmark::ScanHit> naive_scan_word(
    const std::string& letters, const std::string& word, std::uint32_t d_min,
    std::uint32_t d_max) {
  std::vector<elsmark::ScanHit> hits;
  const std::size_t n = letters.size();
  const std::size_t len = word.size();
  for (std::uint32_t d = d_min; d <= d_max; ++d) {
    for (std::size_t s = 0; s < n; ++s) {
      if (s + (len - 1) * static_cast<std::size_t>(d) >= n) break;
      bool ok = true;
      for (std::size_t i = 0; i < len; ++i) {
        if (letters[s + i * d] != word[i]) {
          ok = false;
          break;
        }
      }
      if (ok) hits.push_back({d, s});
    }
  }
  return hits;
}

// Exhaustive majority-vote recovery: tries every payload in a-z^len at every
// offset and keeps the best matches/trials ratio under the spec's
// tie-breaking.
inline std::pair<elsmark::ElsSpec, elsmark::MatchCount>
exhaustive_estimate_payload(const std::string& letters, std::uint32_t period,
                            std::uint32_t payload_len) {
  bool have = false;
  elsmark::ElsSpec best_spec;
  elsmark::MatchCount best_mc;
  std::string payload(payload_len, 'a');
  const auto try_all = [&](auto&& self, std::uint32_t pos,
                           std::uint32_t offset) -> void {
    if (pos == payload_len) {
      const elsmark::ElsSpec spec{payload, period, offset, true};
      const auto mc = naive_match_count(letters, spec);
      if (mc.trials < payload_len) return;
      if (!have) {
        have = true;
        best_spec = spec;
        best_mc = mc;
        return;
      }
      const auto lhs = static_cast<long double>(mc.matches) * best_mc.trials;
      const auto rhs =
          static_cast<long double>(best_mc.matches) * mc.trials;
      if (lhs > rhs) {
        best_spec = spec;
        best_mc = mc;
      } else if (lhs == rhs) {
        if (offset < best_spec.offset ||
            (offset == best_spec.offset && payload < best_spec.payload)) {
          best_spec = spec;
          best_mc = mc;
        }
      }
      return;
    }
    for (char c = 'a'; c <= 'z'; ++c) {
      payload[pos] = c;
      self(self, pos + 1, offset);
    }
  };
  for (std::uint32_t s = 0; s < period; ++s) try_all(try_all, 0, s);
  if (!have) throw std::invalid_argument("insufficient data");
  return {best_spec, best_mc};
}

// Exhaustive lattice search mirroring the rewrite contract: the original
// comes back when it already satisfies the spec; otherwise the feasible
// combination with maximal log-likelihood wins, ties to fewer substitutions,
// then lexicographic word order. Scoring recomputes the likelihood from the
// full joined text, independent of the beam's incremental bookkeeping.
struct RewriteOracleResult {
  bool feasible = false;
  std::string text;
};

inline double full_text_log2(const elsmark::MarkovModel& model,
                             const std::string& text) {
  const std::string norm = elsmark::normalize_for_model(text);
  std::string ctx(model.order(), elsmark::MarkovModel::kSeparator);
  double logp = 0.0;
  for (const char c : norm) {
    logp += std::log2(model.prob(ctx, elsmark::MarkovModel::symbol_index(c)));
    ctx.erase(0, 1);
    ctx += c;
  }
  return logp;
}

inline bool spec_satisfied(const std::string& text,
                           const elsmark::ElsSpec& spec) {
  const auto mc = elsmark::match_count(
      elsmark::normalize(text, elsmark::NormMode::LettersOnly), spec);
  return mc.matches == mc.trials;
}

inline RewriteOracleResult oracle_rewrite(const std::string& text,
                                          const elsmark::RewriteLexicon& lex,
                                          const elsmark::ElsSpec& spec,
                                          const elsmark::MarkovModel& model) {
  if (spec_satisfied(text, spec)) return {true, text};

  std::vector<std::string> words;
  {
    std::istringstream in(text);
    std::string w;
    while (in >> w) words.push_back(w);
  }
  std::vector<std::vector<std::string>> options;
  for (const auto& w : words) options.push_back(lex.variants_of(w));

  RewriteOracleResult best;
  double best_logp = -std::numeric_limits<double>::infinity();
  int best_nsubs = 0;
  std::vector<std::string> best_words;
  std::vector<std::size_t> pick(words.size(), 0);

  const auto feasible_prefix = [&](const std::string& ls) {
    std::size_t j = 0;
    for (std::size_t i = spec.offset; i < ls.size(); i += spec.period, ++j) {
      if (ls[i] != spec.payload[j % spec.payload.size()]) return false;
    }
    return true;
  };
  const auto recurse = [&](auto&& self, std::size_t pos,
                           const std::string& prefix_letters) -> void {
    if (pos == words.size()) {
      std::vector<std::string> chosen;
      std::string joined;
      int nsubs = 0;
      for (std::size_t t = 0; t < words.size(); ++t) {
        if (t > 0) joined += ' ';
        joined += options[t][pick[t]];
        chosen.push_back(options[t][pick[t]]);
        if (pick[t] != 0) ++nsubs;
      }
      const double logp = full_text_log2(model, joined);
      bool take = false;
      if (!best.feasible) {
        take = true;
      } else if (logp != best_logp) {
        take = logp > best_logp;
      } else if (nsubs != best_nsubs) {
        take = nsubs < best_nsubs;
      } else {
        take = chosen < best_words;
      }
      if (take) {
        best = {true, joined};
        best_logp = logp;
        best_nsubs = nsubs;
        best_words = chosen;
      }
      return;
    }
    for (std::size_t v = 0; v < options[pos].size(); ++v) {
      pick[pos] = v;
      const std::string next = prefix_letters + elsmark::fold_word(options[pos][v]);
      if (!feasible_prefix(next)) continue;
      self(self, pos + 1, next);
    }
  };
  recurse(recurse, 0, "");
  return best;
}

// Random same-or-mixed-length rewrite lattice; when `plant` is set one
// variant per word is patched so a feasible path exists.
struct RewriteInstance {
  std::string text;
  elsmark::RewriteLexicon lexicon;
  elsmark::ElsSpec spec;
};

inline RewriteInstance random_rewrite_instance(elsmark::rng::Rng& gen,
                                               bool plant) {
  RewriteInstance inst;
  const std::size_t num_words = 5 + gen.below(4);
  const std::uint32_t d = 3 + static_cast<std::uint32_t>(gen.below(5));
  const std::uint32_t s = static_cast<std::uint32_t>(gen.below(d));
  inst.spec = elsmark::ElsSpec{
      std::string(1, static_cast<char>('a' + gen.below(4))), d, s, true};

  std::size_t letter_base = 0;
  for (std::size_t t = 0; t < num_words; ++t) {
    const std::size_t len = 2 + gen.below(4);
    const std::size_t variants = 1 + gen.below(3);
    std::vector<std::string> options;
    for (std::size_t v = 0; v < variants; ++v) {
      options.push_back(random_letters(gen, len, 4));
    }
    if (plant) {
      std::string& fix = options[gen.below(options.size())];
      for (std::size_t i = 0; i < fix.size(); ++i) {
        const std::size_t abs = letter_base + i;
        if (abs >= inst.spec.offset &&
            (abs - inst.spec.offset) % inst.spec.period == 0) {
          fix[i] = inst.spec.payload[((abs - inst.spec.offset) /
                                      inst.spec.period) %
                                     inst.spec.payload.size()];
        }
      }
      letter_base += len;
    }
    if (t > 0) inst.text += ' ';
    inst.text += options[0];
    inst.lexicon.variants[options[0]] = options;
  }
  return inst;
}

// One-sample Kolmogorov-Smirnov statistic against U(0, 1).
inline double ks_statistic_uniform(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double hi = (static_cast<double>(i) + 1.0) / n - xs[i];
    const double lo = xs[i] - static_cast<double>(i) / n;
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

// Asymptotic 1% critical value of the KS statistic.
inline double ks_critical_1pct(std::size_t n) {
  return 1.628 / std::sqrt(static_cast<double>(n));
}

}  // namespace testutil
