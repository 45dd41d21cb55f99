#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "elsmark/detector.hpp"

namespace elsmark {

// Adversarial and copyediting edits applied to the raw (pre-normalization)
// text, the way a human editor would see it. Insertions add letters, not
// punctuation, so they genuinely shift ELS alignment.
struct AttackConfig {
  double sub_rate = 0.0;  // per letter: replace with a uniform random letter
  double ins_rate = 0.0;  // per letter: insert a random letter after it
  double del_rate = 0.0;  // per letter: delete it
  bool copyedit_case = false;   // sporadic case toggling
  bool copyedit_punct = false;  // sporadic punctuation churn
  std::uint64_t seed = 0;

  void validate() const;
};

// Internal rates of the copyedit flags; letters-only normalization must
// neutralize all of them.
inline constexpr double kCaseToggleRate = 0.10;
inline constexpr double kPunctInsertRate = 0.03;
inline constexpr double kPunctDropRate = 0.50;

std::string apply_edits(std::string_view text, const AttackConfig& config);

struct RobustnessRow {
  AttackConfig attack;
  double detect_rate_periodic = 0.0;
  double detect_rate_windowed = 0.0;
  // Mean over texts of the windowed detector's best corrected p (1.0 when a
  // run yields no findings).
  double mean_corrected_p = 1.0;
};

// Attacks every text at every grid point and runs both detector modes.
// Unit seeds derive deterministically from each grid point's seed and the
// (grid, text) indices, so rows are reproducible under parallel evaluation.
std::vector<RobustnessRow> robustness_curve(
    const std::vector<std::string>& watermarked_texts,
    const std::vector<AttackConfig>& attack_grid,
    const DetectionConfig& detector_config);

}  // namespace elsmark
