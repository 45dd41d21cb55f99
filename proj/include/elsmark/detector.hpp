#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elsmark/els.hpp"
#include "elsmark/signif.hpp"
#include "elsmark/textstream.hpp"

namespace elsmark {

// Grid and window settings for keyless detection. The default period set
// comes straight from the watermark parameters the embedder targets; the
// default payload set is the single letters a-z (blind mode). Targeted
// verification replaces payloads with the expected mark.
struct DetectionConfig {
  // Slot prices come from `null` when Fixed; SelfEstimated re-estimates the
  // letter frequencies from the scanned stream itself. Self-estimation is
  // the keyless fallback for text from an unknown generator; it weakens the
  // test against the payload letter (the mark inflates its own frequency)
  // but removes any reference-corpus mismatch.
  enum class NullSource { Fixed, SelfEstimated };

  std::vector<std::uint32_t> periods{32, 64, 128, 256};
  std::vector<std::string> payloads;  // empty -> a..z singles
  SignifConfig signif;
  std::size_t window_len = 2048;
  std::size_t window_stride = 1024;
  std::size_t max_findings = 20;  // findings kept in the report, best first
  NullModel null = NullModel::reference();
  NullSource null_source = NullSource::Fixed;

  // Normalized copy: sorted unique periods, default payloads filled in.
  DetectionConfig resolved() const;
  void validate() const;

  std::uint64_t hypothesis_count() const;  // sum over periods of d*|payloads|
};

std::vector<std::string> default_payloads();

struct Finding {
  ElsSpec spec;
  MatchCount count;
  double p_raw = 1.0;
  double p_corrected = 1.0;
};

struct WindowSummary {
  std::size_t start = 0;
  std::size_t length = 0;
  Finding best;  // best offset-corrected candidate inside the window
};

enum class DetectMode { Periodic, Windowed, WindowedFallback };

struct DetectionReport {
  DetectMode mode = DetectMode::Periodic;
  double alpha = 0.001;
  std::uint64_t hypothesis_count = 0;
  bool detected = false;
  std::vector<Finding> findings;  // sorted by corrected p, capped
  std::optional<std::size_t> best;  // index of minimal corrected p
  std::uint64_t raw_significant_count = 0;  // grid cells with raw p <= alpha

  // Windowed mode only.
  std::vector<WindowSummary> windows;
  std::uint64_t family_count = 0;  // |periods| * |payloads|
  std::size_t window_len = 0;
  std::size_t window_stride = 0;
};

const char* to_string(DetectMode mode);

// Evaluates every (period, offset, payload) cell of the grid with a binomial
// test and Bonferroni correction over the whole grid.
DetectionReport detect_periodic(const LetterStream& stream,
                                const DetectionConfig& config);

// Resynchronizing mode: runs the grid inside sliding windows, takes each
// window's best offset per (period, payload) family, and combines windows
// with Fisher's method. Offsets are not tracked globally because every
// insertion or deletion shifts all downstream offsets. Falls back to
// detect_periodic when the stream is shorter than one window. Combined
// p-values are calibrated empirically, not exact, because overlapping
// windows are dependent.
DetectionReport detect_windowed(const LetterStream& stream,
                                const DetectionConfig& config);

// Expected number of raw-significant grid cells per stream of the given
// length under the null model (by linearity, independent of cell
// correlations). Large grids find "significant" patterns in any text by
// chance; this is the prediction the FP study checks against.
double expected_raw_hits(std::uint64_t stream_len,
                         const DetectionConfig& config);

}  // namespace elsmark
