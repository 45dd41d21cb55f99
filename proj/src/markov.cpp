#include "elsmark/markov.hpp"

#include <cmath>
#include <stdexcept>

#include "elsmark/rng.hpp"
#include "elsmark/textstream.hpp"

namespace elsmark {

int MarkovModel::symbol_index(char c) {
  if (c >= 'a' && c <= 'z') return c - 'a';
  if (c == kSeparator) return kSeparatorIndex;
  throw std::invalid_argument("MarkovModel: symbol outside alphabet");
}

char MarkovModel::index_symbol(int i) {
  if (i >= 0 && i < 26) return static_cast<char>('a' + i);
  if (i == kSeparatorIndex) return kSeparator;
  throw std::invalid_argument("MarkovModel: symbol index out of range");
}

void MarkovModel::add(std::string_view context, char symbol, std::uint64_t n) {
  if (context.size() != order_) {
    throw std::invalid_argument("MarkovModel: context length != order");
  }
  counts_[std::string(context)][symbol_index(symbol)] += n;
}

std::uint64_t MarkovModel::count(std::string_view context, char symbol) const {
  const auto it = counts_.find(std::string(context));
  if (it == counts_.end()) return 0;
  return it->second[symbol_index(symbol)];
}

std::uint64_t MarkovModel::total_transitions() const {
  std::uint64_t total = 0;
  for (const auto& [ctx, row] : counts_) {
    for (const auto c : row) total += c;
  }
  return total;
}

double MarkovModel::prob(std::string_view context, int symbol_idx) const {
  const auto it = counts_.find(std::string(context));
  if (it == counts_.end()) return 1.0 / kAlphabetSize;
  std::uint64_t total = 0;
  for (const auto c : it->second) total += c;
  return (static_cast<double>(it->second[symbol_idx]) + lambda_) /
         (static_cast<double>(total) + lambda_ * kAlphabetSize);
}

std::string normalize_for_model(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t byte = 0;
  bool pending_sep = false;
  while (byte < text.size()) {
    const char32_t cp = decode_utf8(text, byte);
    if (const auto c = fold_letter(cp)) {
      if (pending_sep && !out.empty()) out += MarkovModel::kSeparator;
      pending_sep = false;
      out += *c;
    } else {
      pending_sep = true;
    }
  }
  return out;
}

MarkovModel train(std::string_view corpus, std::uint32_t order,
                  double lambda) {
  if (order < 1) throw std::invalid_argument("train: order must be >= 1");
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("train: lambda must be positive");
  }
  const std::string norm = normalize_for_model(corpus);
  if (norm.empty()) {
    throw std::invalid_argument("train: corpus empty after normalization");
  }
  MarkovModel model(order, lambda);
  for (std::size_t i = order; i < norm.size(); ++i) {
    model.add(std::string_view(norm).substr(i - order, order), norm[i]);
  }
  return model;
}

namespace {

// Shared sampling loop. When `spec` is non-null, letters landing on
// constrained slots are restricted to the required payload letter.
std::string sample_text(const MarkovModel& model, std::uint64_t target_letters,
                        const ElsSpec* spec, std::uint64_t seed) {
  if (target_letters < 1) {
    throw std::invalid_argument("generate: target_letters must be >= 1");
  }
  rng::Rng gen(seed);
  std::string context(model.order(), MarkovModel::kSeparator);
  std::string symbols;
  symbols.reserve(target_letters + target_letters / 4);
  std::uint64_t letters_done = 0;
  bool last_was_sep = true;  // also suppresses a leading separator

  const std::size_t payload_len = spec ? spec->payload.size() : 0;
  while (letters_done < target_letters) {
    int forced = -1;
    if (spec && letters_done >= spec->offset &&
        (letters_done - spec->offset) % spec->period == 0) {
      const std::uint64_t ordinal = (letters_done - spec->offset) /
                                    spec->period;
      forced = MarkovModel::symbol_index(
          spec->payload[ordinal % payload_len]);
    }

    // Candidate set: the required letter alone when the slot is forced,
    // all letters otherwise; separator allowed unless it would double up.
    double weights[MarkovModel::kAlphabetSize];
    double total = 0.0;
    for (int sym = 0; sym < MarkovModel::kAlphabetSize; ++sym) {
      const bool is_sep = sym == MarkovModel::kSeparatorIndex;
      bool allowed;
      if (is_sep) {
        allowed = !last_was_sep;
      } else {
        allowed = forced < 0 || sym == forced;
      }
      weights[sym] = allowed ? model.prob(context, sym) : 0.0;
      total += weights[sym];
    }
    double u = gen.real() * total;
    int chosen = MarkovModel::kAlphabetSize - 1;
    for (int sym = 0; sym < MarkovModel::kAlphabetSize; ++sym) {
      u -= weights[sym];
      if (u < 0.0 && weights[sym] > 0.0) {
        chosen = sym;
        break;
      }
    }
    if (weights[chosen] == 0.0) {
      // Rounding pushed u past the last positive weight; take the largest
      // allowed symbol instead.
      for (int sym = MarkovModel::kAlphabetSize - 1; sym >= 0; --sym) {
        if (weights[sym] > 0.0) {
          chosen = sym;
          break;
        }
      }
    }

    const char c = MarkovModel::index_symbol(chosen);
    symbols += c;
    last_was_sep = chosen == MarkovModel::kSeparatorIndex;
    if (!last_was_sep) ++letters_done;
    context.erase(0, 1);
    context += c;
  }

  std::string text;
  text.reserve(symbols.size());
  for (const char c : symbols) {
    text += c == MarkovModel::kSeparator ? ' ' : c;
  }
  return text;
}

}  // namespace

std::string generate_constrained(const MarkovModel& model,
                                 std::uint64_t target_letters,
                                 const ElsSpec& spec, std::uint64_t seed) {
  spec.validate();
  if (!spec.cyclic) {
    throw std::invalid_argument("generate_constrained: spec must be cyclic");
  }
  return sample_text(model, target_letters, &spec, seed);
}

std::string generate_text(const MarkovModel& model,
                          std::uint64_t target_letters, std::uint64_t seed) {
  return sample_text(model, target_letters, nullptr, seed);
}

double perplexity(const MarkovModel& model, std::string_view text) {
  const std::string norm = normalize_for_model(text);
  if (norm.empty()) {
    throw std::invalid_argument("perplexity: text empty after normalization");
  }
  std::string context(model.order(), MarkovModel::kSeparator);
  double bits = 0.0;
  for (const char c : norm) {
    bits -= std::log2(model.prob(context, MarkovModel::symbol_index(c)));
    context.erase(0, 1);
    context += c;
  }
  return bits / static_cast<double>(norm.size());
}

}  // namespace elsmark
