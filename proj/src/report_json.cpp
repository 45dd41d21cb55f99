#include "elsmark/report_json.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

#include "elsmark/version.hpp"

namespace elsmark {

using nlohmann::json;

json RunManifest::to_json() const {
  json j;
  j["command"] = command;
  j["config"] = config;
  j["seed"] = seed;
  j["version"] = version;
  j["inputs"] = json::object();
  for (const auto& [path, digest] : input_digests) {
    j["inputs"][path] = digest;
  }
  return j;
}

RunManifest make_manifest(std::string command, std::uint64_t seed) {
  RunManifest m;
  m.command = std::move(command);
  m.seed = seed;
  m.version = kToolVersion;
  return m;
}

json finding_to_json(const Finding& f) {
  json j;
  j["payload"] = f.spec.payload;
  j["period"] = f.spec.period;
  j["offset"] = f.spec.offset;
  j["cyclic"] = f.spec.cyclic;
  j["matches"] = f.count.matches;
  j["trials"] = f.count.trials;
  j["p_raw"] = f.p_raw;
  j["p_corrected"] = f.p_corrected;
  return j;
}

json report_to_json(const DetectionReport& report,
                    const RunManifest& manifest) {
  json j;
  j["manifest"] = manifest.to_json();
  j["mode"] = to_string(report.mode);
  j["alpha"] = report.alpha;
  j["hypothesis_count"] = report.hypothesis_count;
  j["verdict"] = report.detected ? "detected" : "not-detected";
  j["raw_significant_count"] = report.raw_significant_count;
  j["findings"] = json::array();
  for (const auto& f : report.findings) {
    j["findings"].push_back(finding_to_json(f));
  }
  if (report.best) j["best"] = *report.best;
  if (report.mode == DetectMode::Windowed) {
    json w;
    w["window_len"] = report.window_len;
    w["window_stride"] = report.window_stride;
    w["count"] = report.windows.size();
    w["family_count"] = report.family_count;
    // Overlapping windows are dependent, so the combined values are
    // calibrated empirically rather than exact.
    w["approximate"] = true;
    w["summaries"] = json::array();
    for (const auto& s : report.windows) {
      json sj = finding_to_json(s.best);
      sj["start"] = s.start;
      sj["length"] = s.length;
      w["summaries"].push_back(std::move(sj));
    }
    j["windows"] = std::move(w);
  }
  return j;
}

json model_to_json(const MarkovModel& model) {
  json j;
  j["format"] = "elsmark-model";
  j["version"] = 1;
  j["order"] = model.order();
  j["lambda"] = model.lambda();
  json counts = json::object();
  for (const auto& [ctx, row] : model.counts()) {
    json row_j = json::object();
    for (int sym = 0; sym < MarkovModel::kAlphabetSize; ++sym) {
      if (row[sym] > 0) {
        row_j[std::string(1, MarkovModel::index_symbol(sym))] = row[sym];
      }
    }
    if (!row_j.empty()) counts[ctx] = std::move(row_j);
  }
  j["counts"] = std::move(counts);
  return j;
}

MarkovModel model_from_json(const json& j) {
  if (!j.is_object() || j.value("format", "") != "elsmark-model") {
    throw std::invalid_argument("model file: unrecognized format");
  }
  if (j.value("version", 0) != 1) {
    throw std::invalid_argument("model file: unsupported version");
  }
  MarkovModel model(j.at("order").get<std::uint32_t>(),
                    j.at("lambda").get<double>());
  for (const auto& [ctx, row] : j.at("counts").items()) {
    if (ctx.size() != model.order()) {
      throw std::invalid_argument("model file: context length != order");
    }
    for (const auto& [sym, count] : row.items()) {
      if (sym.size() != 1) {
        throw std::invalid_argument("model file: bad symbol key");
      }
      model.add(ctx, sym[0], count.get<std::uint64_t>());
    }
  }
  return model;
}

RewriteLexicon lexicon_from_json(const json& j) {
  if (!j.is_object() || !j.contains("variants")) {
    throw std::invalid_argument("lexicon file: missing \"variants\"");
  }
  RewriteLexicon lex;
  for (const auto& [word, list] : j.at("variants").items()) {
    std::vector<std::string> vs = list.get<std::vector<std::string>>();
    if (std::find(vs.begin(), vs.end(), word) == vs.end()) {
      vs.push_back(word);  // variant sets always include the original
    }
    lex.variants[word] = std::move(vs);
  }
  if (j.contains("filler_words")) {
    lex.filler_words = j.at("filler_words").get<std::vector<std::string>>();
  }
  return lex;
}

json bit_report_to_json(const BitDetectReport& report,
                        const RunManifest& manifest) {
  json j;
  j["manifest"] = manifest.to_json();
  j["keyed"] = report.keyed;
  j["ones"] = report.ones;
  j["n"] = report.n;
  j["pvalue"] = report.pvalue;
  return j;
}

json robustness_rows_to_json(const std::vector<RobustnessRow>& rows,
                             const RunManifest& manifest) {
  json j;
  j["manifest"] = manifest.to_json();
  j["rows"] = json::array();
  for (const auto& r : rows) {
    json row;
    row["sub_rate"] = r.attack.sub_rate;
    row["ins_rate"] = r.attack.ins_rate;
    row["del_rate"] = r.attack.del_rate;
    row["copyedit_case"] = r.attack.copyedit_case;
    row["copyedit_punct"] = r.attack.copyedit_punct;
    row["detect_rate_periodic"] = r.detect_rate_periodic;
    row["detect_rate_windowed"] = r.detect_rate_windowed;
    row["mean_corrected_p"] = r.mean_corrected_p;
    j["rows"].push_back(std::move(row));
  }
  return j;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [end, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), end);
}

std::string robustness_rows_to_csv(const std::vector<RobustnessRow>& rows) {
  std::string csv =
      "sub_rate,ins_rate,del_rate,detect_rate_periodic,"
      "detect_rate_windowed,mean_corrected_p\n";
  for (const auto& r : rows) {
    csv += format_double(r.attack.sub_rate);
    csv += ',';
    csv += format_double(r.attack.ins_rate);
    csv += ',';
    csv += format_double(r.attack.del_rate);
    csv += ',';
    csv += format_double(r.detect_rate_periodic);
    csv += ',';
    csv += format_double(r.detect_rate_windowed);
    csv += ',';
    csv += format_double(r.mean_corrected_p);
    csv += '\n';
  }
  return csv;
}

std::string to_report_bytes(const json& j) { return j.dump(2) + "\n"; }

}  // namespace elsmark
