#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "elsmark/els.hpp"
#include "elsmark/markov.hpp"

namespace elsmark {

// Word-level substitution lattice. Every variant set contains the original
// word; unknown words are their own singleton set. filler_words is reserved
// for insertion-based rewriting, which v1 does not perform.
struct RewriteLexicon {
  std::map<std::string, std::vector<std::string>> variants;
  std::vector<std::string> filler_words;

  // Original first, remaining variants sorted and deduplicated.
  std::vector<std::string> variants_of(const std::string& token) const;
};

class RewriteInfeasible : public std::runtime_error {
 public:
  RewriteInfeasible(std::size_t word_index, const std::string& word);
  std::size_t word_index() const { return word_index_; }

 private:
  std::size_t word_index_;
};

// Beam search over the word lattice. State is (position, letter count mod
// period*payload_len) plus the model context, which together determine all
// constraint obligations ahead; a path is feasible only if every constrained
// letter slot inside each chosen word carries the required payload letter.
// Returns the feasible path with maximal model log-likelihood (ties: fewer
// substitutions, then lexicographic). The input comes back verbatim when it
// already satisfies the spec. Throws RewriteInfeasible naming the first
// blocked word position when no path survives within the beam.
std::string rewrite_constrained(std::string_view text,
                                const RewriteLexicon& lexicon,
                                const ElsSpec& spec, std::size_t beam_width,
                                const MarkovModel& model);

}  // namespace elsmark
