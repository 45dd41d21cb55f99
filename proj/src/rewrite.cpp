#include "elsmark/rewrite.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "elsmark/textstream.hpp"

namespace elsmark {

std::vector<std::string> RewriteLexicon::variants_of(
    const std::string& token) const {
  const auto it = variants.find(token);
  if (it == variants.end()) return {token};
  std::vector<std::string> rest;
  for (const auto& v : it->second) {
    if (v != token) rest.push_back(v);
  }
  std::sort(rest.begin(), rest.end());
  rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
  std::vector<std::string> out;
  out.reserve(rest.size() + 1);
  out.push_back(token);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

RewriteInfeasible::RewriteInfeasible(std::size_t word_index,
                                     const std::string& word)
    : std::runtime_error("rewrite infeasible: no variant of word " +
                         std::to_string(word_index) + " (\"" + word +
                         "\") satisfies the watermark within the beam"),
      word_index_(word_index) {}

namespace {

struct BeamState {
  std::string context;     // last `order` model symbols
  std::uint32_t lmod = 0;  // letters emitted so far, mod period*payload_len
  bool any_letters = false;
  double logp = 0.0;
  int nsubs = 0;
  std::size_t parent = 0;  // index into the previous position's beam
  std::uint32_t choice = 0;
};

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::istringstream in{std::string(text)};
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

// Required payload letter at absolute letter index i, where i == lmod
// (mod period*payload_len); -1 when the slot is unconstrained.
int required_letter(std::uint32_t lmod, const ElsSpec& spec,
                    std::uint32_t cycle) {
  const std::uint32_t r = (lmod + cycle - spec.offset) % cycle;
  if (r % spec.period != 0) return -1;
  return spec.payload[(r / spec.period) % spec.payload.size()];
}

}  // namespace

std::string rewrite_constrained(std::string_view text,
                                const RewriteLexicon& lexicon,
                                const ElsSpec& spec, std::size_t beam_width,
                                const MarkovModel& model) {
  spec.validate();
  if (!spec.cyclic) {
    throw std::invalid_argument("rewrite_constrained: spec must be cyclic");
  }
  if (beam_width < 1) {
    throw std::invalid_argument("rewrite_constrained: beam_width must be >= 1");
  }

  {
    const MatchCount mc = match_count(normalize(text, NormMode::LettersOnly),
                                      spec);
    if (mc.matches == mc.trials) return std::string(text);
  }

  const std::vector<std::string> words = split_words(text);
  const std::uint32_t cycle =
      spec.period * static_cast<std::uint32_t>(spec.payload.size());

  // Variant sets and their letter sequences, fixed per position.
  std::vector<std::vector<std::string>> options(words.size());
  std::vector<std::vector<std::string>> option_letters(words.size());
  for (std::size_t t = 0; t < words.size(); ++t) {
    options[t] = lexicon.variants_of(words[t]);
    option_letters[t].reserve(options[t].size());
    for (const auto& v : options[t]) {
      option_letters[t].push_back(fold_word(v));
    }
  }

  std::vector<std::vector<BeamState>> beams(words.size() + 1);
  beams[0].push_back(
      BeamState{std::string(model.order(), MarkovModel::kSeparator), 0, false,
                0.0, 0, 0, 0});

  // Lexicographic path reconstruction, used only to settle exact ties.
  const auto path_of = [&](std::size_t pos,
                           const BeamState& st) -> std::vector<std::uint32_t> {
    std::vector<std::uint32_t> choices;
    std::size_t p = pos;
    const BeamState* cur = &st;
    while (p > 0) {
      choices.push_back(cur->choice);
      cur = &beams[p - 1][cur->parent];
      --p;
    }
    std::reverse(choices.begin(), choices.end());
    return choices;
  };
  const auto path_less = [&](std::size_t pos, const BeamState& a,
                             const BeamState& b) {
    const auto pa = path_of(pos, a);
    const auto pb = path_of(pos, b);
    for (std::size_t t = 0; t < pa.size(); ++t) {
      if (pa[t] != pb[t]) return options[t][pa[t]] < options[t][pb[t]];
    }
    return false;
  };
  const auto better = [&](std::size_t pos, const BeamState& a,
                          const BeamState& b) {
    if (a.logp != b.logp) return a.logp > b.logp;
    if (a.nsubs != b.nsubs) return a.nsubs < b.nsubs;
    return path_less(pos, a, b);
  };

  for (std::size_t t = 0; t < words.size(); ++t) {
    std::vector<BeamState> next;
    for (std::size_t si = 0; si < beams[t].size(); ++si) {
      const BeamState& st = beams[t][si];
      for (std::uint32_t vi = 0; vi < options[t].size(); ++vi) {
        const std::string& letters = option_letters[t][vi];
        BeamState succ = st;
        succ.parent = si;
        succ.choice = vi;
        if (vi != 0) ++succ.nsubs;
        bool feasible = true;
        if (!letters.empty()) {
          if (succ.any_letters) {
            succ.logp += std::log2(
                model.prob(succ.context, MarkovModel::kSeparatorIndex));
            succ.context.erase(0, 1);
            succ.context += MarkovModel::kSeparator;
          }
          for (const char c : letters) {
            const int need = required_letter(succ.lmod, spec, cycle);
            if (need >= 0 && c != static_cast<char>(need)) {
              feasible = false;
              break;
            }
            succ.logp += std::log2(
                model.prob(succ.context, MarkovModel::symbol_index(c)));
            succ.context.erase(0, 1);
            succ.context += c;
            succ.lmod = (succ.lmod + 1) % cycle;
          }
          succ.any_letters = true;
        }
        if (feasible) next.push_back(std::move(succ));
      }
    }
    if (next.empty()) throw RewriteInfeasible(t, words[t]);

    // Deduplicate on (context, lmod, any_letters): the better prefix
    // dominates every completion.
    std::sort(next.begin(), next.end(),
              [&](const BeamState& a, const BeamState& b) {
                if (a.context != b.context) return a.context < b.context;
                if (a.lmod != b.lmod) return a.lmod < b.lmod;
                if (a.any_letters != b.any_letters) return a.any_letters;
                return better(t + 1, a, b);
              });
    std::vector<BeamState> dedup;
    for (auto& st : next) {
      if (!dedup.empty() && dedup.back().context == st.context &&
          dedup.back().lmod == st.lmod &&
          dedup.back().any_letters == st.any_letters) {
        continue;
      }
      dedup.push_back(std::move(st));
    }
    std::sort(dedup.begin(), dedup.end(),
              [&](const BeamState& a, const BeamState& b) {
                return better(t + 1, a, b);
              });
    if (dedup.size() > beam_width) dedup.resize(beam_width);
    beams[t + 1] = std::move(dedup);
  }

  const auto& finals = beams[words.size()];
  std::size_t best = 0;
  for (std::size_t i = 1; i < finals.size(); ++i) {
    if (better(words.size(), finals[i], finals[best])) best = i;
  }
  const auto choices = path_of(words.size(), finals[best]);
  std::string out;
  for (std::size_t t = 0; t < words.size(); ++t) {
    if (t > 0) out += ' ';
    out += options[t][choices[t]];
  }
  return out;
}

}  // namespace elsmark
