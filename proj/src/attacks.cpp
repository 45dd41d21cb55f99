#include "elsmark/attacks.hpp"

#include <stdexcept>

#include "elsmark/parallel.hpp"
#include "elsmark/rng.hpp"
#include "elsmark/textstream.hpp"

namespace elsmark {

namespace {

constexpr std::string_view kPunctuation = ",.;:!?";

bool is_punct(char32_t cp) {
  for (const char c : kPunctuation) {
    if (cp == static_cast<char32_t>(c)) return true;
  }
  return cp == '\'' || cp == '"' || cp == '-';
}

char32_t toggle_case(char32_t cp) {
  if (cp >= 'a' && cp <= 'z') return cp - 'a' + 'A';
  if (cp >= 'A' && cp <= 'Z') return cp - 'A' + 'a';
  return cp;
}

}  // namespace

void AttackConfig::validate() const {
  for (const double r : {sub_rate, ins_rate, del_rate}) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw std::invalid_argument("AttackConfig: rate outside [0,1]");
    }
  }
}

std::string apply_edits(std::string_view text, const AttackConfig& config) {
  config.validate();
  rng::Rng gen(config.seed);
  std::string out;
  out.reserve(text.size() + text.size() / 8);

  std::size_t byte = 0;
  while (byte < text.size()) {
    const char32_t cp = decode_utf8(text, byte);
    if (fold_letter(cp)) {
      const double u_del = gen.real();
      const double u_sub = gen.real();
      const double u_ins = gen.real();
      if (u_del >= config.del_rate) {
        char32_t emit = cp;
        if (u_sub < config.sub_rate) {
          emit = static_cast<char32_t>(gen.letter());
        }
        if (config.copyedit_case && gen.real() < kCaseToggleRate) {
          emit = toggle_case(emit);
        }
        append_utf8(out, emit);
      }
      if (u_ins < config.ins_rate) {
        append_utf8(out, static_cast<char32_t>(gen.letter()));
      }
    } else {
      if (config.copyedit_punct && is_punct(cp) &&
          gen.real() < kPunctDropRate) {
        // dropped
      } else {
        append_utf8(out, cp);
      }
    }
    if (config.copyedit_punct && gen.real() < kPunctInsertRate) {
      out += kPunctuation[gen.below(kPunctuation.size())];
    }
  }
  return out;
}

std::vector<RobustnessRow> robustness_curve(
    const std::vector<std::string>& watermarked_texts,
    const std::vector<AttackConfig>& attack_grid,
    const DetectionConfig& detector_config) {
  if (watermarked_texts.empty()) {
    throw std::invalid_argument("robustness_curve: no texts");
  }
  if (attack_grid.empty()) {
    throw std::invalid_argument("robustness_curve: empty attack grid");
  }
  detector_config.validate();
  for (const auto& a : attack_grid) a.validate();

  const std::size_t num_texts = watermarked_texts.size();
  struct Unit {
    bool periodic = false;
    bool windowed = false;
    double corrected_p = 1.0;
  };
  std::vector<Unit> units(attack_grid.size() * num_texts);

  par::for_each_index(units.size(), [&](std::size_t idx) {
    const std::size_t gi = idx / num_texts;
    const std::size_t ti = idx % num_texts;
    AttackConfig local = attack_grid[gi];
    local.seed = rng::derive_seed(attack_grid[gi].seed, gi, ti);
    const std::string attacked =
        apply_edits(watermarked_texts[ti], local);
    const LetterStream stream = normalize(attacked, NormMode::LettersOnly);
    const DetectionReport periodic =
        detect_periodic(stream, detector_config);
    const DetectionReport windowed =
        detect_windowed(stream, detector_config);
    Unit& u = units[idx];
    u.periodic = periodic.detected;
    u.windowed = windowed.detected;
    u.corrected_p = windowed.findings.empty()
                        ? 1.0
                        : windowed.findings.front().p_corrected;
  });

  std::vector<RobustnessRow> rows;
  rows.reserve(attack_grid.size());
  for (std::size_t gi = 0; gi < attack_grid.size(); ++gi) {
    RobustnessRow row;
    row.attack = attack_grid[gi];
    double p_sum = 0.0;
    std::size_t hits_p = 0;
    std::size_t hits_w = 0;
    for (std::size_t ti = 0; ti < num_texts; ++ti) {
      const Unit& u = units[gi * num_texts + ti];
      hits_p += u.periodic ? 1 : 0;
      hits_w += u.windowed ? 1 : 0;
      p_sum += u.corrected_p;
    }
    row.detect_rate_periodic =
        static_cast<double>(hits_p) / static_cast<double>(num_texts);
    row.detect_rate_windowed =
        static_cast<double>(hits_w) / static_cast<double>(num_texts);
    row.mean_corrected_p = p_sum / static_cast<double>(num_texts);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace elsmark
