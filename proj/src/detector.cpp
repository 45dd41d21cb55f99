#include "elsmark/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "elsmark/stats.hpp"

namespace elsmark {

namespace {

// Per-(period, payload) slot-match tallies for every offset in one pass.
// Equivalent to calling match_count once per offset; index i contributes to
// offset i % d and carries slot ordinal i / d.
void tally_offsets(std::u32string_view letters, std::uint32_t d,
                   const std::string& payload,
                   std::vector<std::uint64_t>& matches) {
  matches.assign(d, 0);
  const std::size_t len = payload.size();
  const std::size_t n = letters.size();
  std::size_t j = 0;       // slot ordinal i / d
  std::size_t cycle = 0;   // j % len
  for (std::size_t base = 0; base < n; base += d, ++j) {
    const char32_t want = static_cast<char32_t>(payload[cycle]);
    const std::size_t row = std::min<std::size_t>(d, n - base);
    for (std::size_t s = 0; s < row; ++s) {
      if (letters[base + s] == want) ++matches[s];
    }
    if (++cycle == len) cycle = 0;
  }
}

std::uint64_t trials_at(std::size_t n, std::uint32_t d, std::uint32_t s) {
  return n > s ? (n - s + d - 1) / d : 0;
}

// Memo for binomial_sf keyed by (matches, trials); one cache per
// (period, payload) since those fix the slot probability. Offsets mostly
// share the same trial count, so hit rates are high.
class PvalueCache {
 public:
  explicit PvalueCache(double p_slot) : p_slot_(p_slot) {}

  double get(std::uint64_t matches, std::uint64_t trials) {
    const std::uint64_t key = (trials << 32) | matches;
    auto [it, inserted] = memo_.try_emplace(key, 0.0);
    if (inserted) it->second = stats::binomial_sf(matches, trials, p_slot_);
    return it->second;
  }

 private:
  double p_slot_;
  std::unordered_map<std::uint64_t, double> memo_;
};

bool finding_less(const Finding& a, const Finding& b) {
  if (a.p_corrected != b.p_corrected) return a.p_corrected < b.p_corrected;
  if (a.p_raw != b.p_raw) return a.p_raw < b.p_raw;
  if (a.spec.period != b.spec.period) return a.spec.period < b.spec.period;
  if (a.spec.offset != b.spec.offset) return a.spec.offset < b.spec.offset;
  return a.spec.payload < b.spec.payload;
}

void finalize(DetectionReport& report, const DetectionConfig& config) {
  std::sort(report.findings.begin(), report.findings.end(), finding_less);
  report.detected = !report.findings.empty() &&
                    report.findings.front().p_corrected <= report.alpha;
  if (report.findings.size() > config.max_findings) {
    report.findings.resize(config.max_findings);
  }
  if (!report.findings.empty()) report.best = 0;
}

}  // namespace

const char* to_string(DetectMode mode) {
  switch (mode) {
    case DetectMode::Periodic: return "periodic";
    case DetectMode::Windowed: return "windowed";
    case DetectMode::WindowedFallback: return "windowed-fallback";
  }
  return "unknown";
}

std::vector<std::string> default_payloads() {
  std::vector<std::string> out;
  out.reserve(26);
  for (char c = 'a'; c <= 'z'; ++c) out.emplace_back(1, c);
  return out;
}

DetectionConfig DetectionConfig::resolved() const {
  DetectionConfig r = *this;
  if (r.payloads.empty()) r.payloads = default_payloads();
  std::sort(r.periods.begin(), r.periods.end());
  r.periods.erase(std::unique(r.periods.begin(), r.periods.end()),
                  r.periods.end());
  std::sort(r.payloads.begin(), r.payloads.end());
  r.payloads.erase(std::unique(r.payloads.begin(), r.payloads.end()),
                   r.payloads.end());
  return r;
}

void DetectionConfig::validate() const {
  if (periods.empty()) {
    throw std::invalid_argument("DetectionConfig: empty period set");
  }
  for (const auto d : periods) {
    if (d < 1) throw std::invalid_argument("DetectionConfig: period < 1");
  }
  for (const auto& p : payloads) {
    ElsSpec probe{p, 1, 0, true};
    probe.validate();
  }
  signif.validate();
  if (window_stride < 1 || window_stride > window_len) {
    throw std::invalid_argument(
        "DetectionConfig: window_stride must be in [1, window_len]");
  }
  if (max_findings < 1) {
    throw std::invalid_argument("DetectionConfig: max_findings < 1");
  }
}

std::uint64_t DetectionConfig::hypothesis_count() const {
  const DetectionConfig r = resolved();
  std::uint64_t m = 0;
  for (const auto d : r.periods) {
    m += static_cast<std::uint64_t>(d) * r.payloads.size();
  }
  return m;
}

DetectionReport detect_periodic(const LetterStream& stream,
                                const DetectionConfig& raw_config) {
  raw_config.validate();
  DetectionConfig config = raw_config.resolved();
  if (config.null_source == DetectionConfig::NullSource::SelfEstimated) {
    config.null = NullModel::from_stream(stream);
    config.null_source = DetectionConfig::NullSource::Fixed;
  }
  const std::uint64_t m = config.hypothesis_count();
  const double alpha = config.signif.alpha;
  const bool correct = config.signif.correction == Correction::Bonferroni;

  DetectionReport report;
  report.mode = DetectMode::Periodic;
  report.alpha = alpha;
  report.hypothesis_count = m;

  const std::size_t n = stream.size();
  std::vector<std::uint64_t> matches;
  for (const std::uint32_t d : config.periods) {
    for (const auto& payload : config.payloads) {
      const ElsSpec base{payload, d, 0, true};
      PvalueCache cache(slot_probability(base, config.null));
      tally_offsets(stream.letters, d, payload, matches);
      for (std::uint32_t s = 0; s < d; ++s) {
        const std::uint64_t trials = trials_at(n, d, s);
        if (trials == 0) continue;
        Finding f;
        f.spec = ElsSpec{payload, d, s, true};
        f.count = MatchCount{matches[s], trials};
        f.p_raw = cache.get(matches[s], trials);
        f.p_corrected = correct ? stats::bonferroni(f.p_raw, m) : f.p_raw;
        if (f.p_raw <= alpha) ++report.raw_significant_count;
        report.findings.push_back(std::move(f));
      }
    }
  }
  finalize(report, config);
  return report;
}

DetectionReport detect_windowed(const LetterStream& stream,
                                const DetectionConfig& raw_config) {
  raw_config.validate();
  DetectionConfig config = raw_config.resolved();
  if (config.window_len < 256) {
    throw std::invalid_argument("detect_windowed: window_len must be >= 256");
  }
  // Estimate once over the whole stream; windows then share one price list.
  if (config.null_source == DetectionConfig::NullSource::SelfEstimated) {
    config.null = NullModel::from_stream(stream);
    config.null_source = DetectionConfig::NullSource::Fixed;
  }
  const std::size_t n = stream.size();
  if (n < config.window_len) {
    DetectionReport report = detect_periodic(stream, config);
    report.mode = DetectMode::WindowedFallback;
    return report;
  }

  std::vector<std::size_t> starts;
  for (std::size_t s = 0; s + config.window_len <= n;
       s += config.window_stride) {
    starts.push_back(s);
  }
  if (starts.back() + config.window_len < n) {
    starts.push_back(n - config.window_len);  // cover the tail
  }
  const std::size_t num_windows = starts.size();
  const std::size_t num_families =
      config.periods.size() * config.payloads.size();

  DetectionReport report;
  report.mode = DetectMode::Windowed;
  report.alpha = config.signif.alpha;
  report.hypothesis_count = config.hypothesis_count();
  report.family_count = num_families;
  report.window_len = config.window_len;
  report.window_stride = config.window_stride;

  // Per family, per window: best offset-corrected p plus witness.
  struct WindowBest {
    double p_offset_corrected = 1.0;
    Finding witness;
  };
  std::vector<std::vector<WindowBest>> family_windows(
      num_families, std::vector<WindowBest>(num_windows));

  const std::u32string_view all(stream.letters);
  std::vector<std::uint64_t> matches;
  std::size_t family = 0;
  for (const std::uint32_t d : config.periods) {
    for (const auto& payload : config.payloads) {
      const ElsSpec base{payload, d, 0, true};
      PvalueCache cache(slot_probability(base, config.null));
      for (std::size_t w = 0; w < num_windows; ++w) {
        const std::u32string_view win =
            all.substr(starts[w], config.window_len);
        tally_offsets(win, d, payload, matches);
        WindowBest best;
        double best_raw = std::numeric_limits<double>::infinity();
        for (std::uint32_t s = 0; s < d; ++s) {
          const std::uint64_t trials = trials_at(win.size(), d, s);
          if (trials == 0) continue;
          const double p = cache.get(matches[s], trials);
          if (p < best_raw) {
            best_raw = p;
            best.witness.spec = ElsSpec{payload, d, s, true};
            best.witness.count = MatchCount{matches[s], trials};
            best.witness.p_raw = p;
          }
        }
        if (std::isfinite(best_raw)) {
          best.p_offset_corrected = stats::bonferroni(best_raw, d);
          best.witness.p_corrected = best.p_offset_corrected;
          family_windows[family][w] = std::move(best);
        }
      }
      ++family;
    }
  }

  // Fisher-combine each family's per-window evidence, then correct over
  // families.
  const bool correct = config.signif.correction == Correction::Bonferroni;
  std::vector<double> per_window(num_windows);
  family = 0;
  for (const std::uint32_t d : config.periods) {
    for (const auto& payload : config.payloads) {
      for (std::size_t w = 0; w < num_windows; ++w) {
        per_window[w] = family_windows[family][w].p_offset_corrected;
      }
      const double fisher = stats::fisher_combine(per_window);

      // Witness = the window with the strongest offset-corrected evidence.
      std::size_t best_w = 0;
      for (std::size_t w = 1; w < num_windows; ++w) {
        if (family_windows[family][w].p_offset_corrected <
            family_windows[family][best_w].p_offset_corrected) {
          best_w = w;
        }
      }
      Finding f;
      f.spec = family_windows[family][best_w].witness.spec;
      f.count = family_windows[family][best_w].witness.count;
      f.p_raw = fisher;
      f.p_corrected =
          correct ? stats::bonferroni(fisher, num_families) : fisher;
      report.findings.push_back(std::move(f));
      ++family;
    }
  }

  // Per-window summaries: each window's single best candidate.
  report.windows.reserve(num_windows);
  for (std::size_t w = 0; w < num_windows; ++w) {
    WindowSummary summary;
    summary.start = starts[w];
    summary.length = config.window_len;
    std::size_t best_f = 0;
    for (std::size_t f = 1; f < num_families; ++f) {
      if (family_windows[f][w].p_offset_corrected <
          family_windows[best_f][w].p_offset_corrected) {
        best_f = f;
      }
    }
    summary.best = family_windows[best_f][w].witness;
    report.windows.push_back(std::move(summary));
  }

  finalize(report, config);
  return report;
}

double expected_raw_hits(std::uint64_t stream_len,
                         const DetectionConfig& raw_config) {
  raw_config.validate();
  const DetectionConfig config = raw_config.resolved();
  const double alpha = config.signif.alpha;
  double expect = 0.0;
  for (const std::uint32_t d : config.periods) {
    for (const auto& payload : config.payloads) {
      const ElsSpec base{payload, d, 0, true};
      const double p_slot = slot_probability(base, config.null);
      for (std::uint32_t s = 0; s < d; ++s) {
        const std::uint64_t trials = trials_at(stream_len, d, s);
        if (trials == 0) continue;
        // Smallest k whose tail is raw-significant; the cell's hit
        // probability is then exactly that tail.
        std::uint64_t lo = 0, hi = trials + 1;
        while (lo < hi) {
          const std::uint64_t mid = lo + (hi - lo) / 2;
          if (stats::binomial_sf(mid, trials, p_slot) <= alpha) {
            hi = mid;
          } else {
            lo = mid + 1;
          }
        }
        if (lo <= trials) {
          expect += stats::binomial_sf(lo, trials, p_slot);
        }
      }
    }
  }
  return expect;
}

}  // namespace elsmark
