#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>

#include "elsmark/els.hpp"

namespace elsmark {

// Order-k character model over a-z plus a word separator, with add-lambda
// smoothing. Smoothing keeps every symbol's conditional probability strictly
// positive, which is what makes every constrained slot satisfiable.
class MarkovModel {
 public:
  static constexpr int kAlphabetSize = 27;
  static constexpr char kSeparator = '_';
  static constexpr int kSeparatorIndex = 26;

  MarkovModel() = default;
  MarkovModel(std::uint32_t order, double lambda)
      : order_(order), lambda_(lambda) {}

  std::uint32_t order() const { return order_; }
  double lambda() const { return lambda_; }

  static int symbol_index(char c);
  static char index_symbol(int i);

  void add(std::string_view context, char symbol, std::uint64_t n = 1);
  std::uint64_t count(std::string_view context, char symbol) const;
  std::uint64_t total_transitions() const;

  // Smoothed P(symbol | context); contexts never seen are uniform.
  double prob(std::string_view context, int symbol_idx) const;

  const std::unordered_map<std::string, std::array<std::uint64_t, 27>>&
  counts() const {
    return counts_;
  }

 private:
  std::uint32_t order_ = 3;
  double lambda_ = 0.05;
  std::unordered_map<std::string, std::array<std::uint64_t, 27>> counts_;
};

// Model alphabet view of a text: folded letters with runs of everything else
// collapsed to single separators, none leading or trailing.
std::string normalize_for_model(std::string_view text);

// Tabulates every (context, next symbol) transition of the normalized
// corpus. Throws std::invalid_argument when nothing survives normalization.
MarkovModel train(std::string_view corpus, std::uint32_t order, double lambda);

// Samples text whose letter stream satisfies the spec exactly: letters
// landing on constrained slots are forced to the required payload letter,
// separators may intervene but never double up. Deterministic per seed.
std::string generate_constrained(const MarkovModel& model,
                                 std::uint64_t target_letters,
                                 const ElsSpec& spec, std::uint64_t seed);

// Unconstrained sampling with the same separator discipline.
std::string generate_text(const MarkovModel& model,
                          std::uint64_t target_letters, std::uint64_t seed);

// Mean bits per symbol of the normalized text under the smoothed model.
double perplexity(const MarkovModel& model, std::string_view text);

}  // namespace elsmark
