#include "elsmark/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "elsmark/attacks.hpp"
#include "elsmark/detector.hpp"
#include "elsmark/hashbit.hpp"
#include "elsmark/io.hpp"
#include "elsmark/markov.hpp"
#include "elsmark/parallel.hpp"
#include "elsmark/report_json.hpp"
#include "elsmark/rewrite.hpp"
#include "elsmark/rng.hpp"
#include "elsmark/signif.hpp"
#include "elsmark/textstream.hpp"
#include "elsmark/version.hpp"

namespace elsmark {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct GlobalOptions {
  std::uint64_t seed = 0;
  double alpha = 0.001;
  std::string mode = "letters";
  std::string json_out;
  bool fail_on_detect = false;
  bool recursive = false;

  NormMode norm_mode() const {
    if (mode == "letters") return NormMode::LettersOnly;
    if (mode == "raw") return NormMode::Raw;
    throw ConfigError("--mode must be letters or raw");
  }
};

std::vector<std::uint32_t> parse_period_list(const std::string& csv) {
  std::vector<std::uint32_t> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string item =
        csv.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (!item.empty()) {
      try {
        const unsigned long v = std::stoul(item);
        if (v < 1 || v > 1u << 20) throw std::out_of_range("period");
        out.push_back(static_cast<std::uint32_t>(v));
      } catch (const std::exception&) {
        throw ConfigError("bad period value: " + item);
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw ConfigError("empty period list");
  return out;
}

std::vector<double> parse_rate_list(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string item =
        csv.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (!item.empty()) {
      try {
        out.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw ConfigError("bad rate value: " + item);
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw ConfigError("empty rate list");
  return out;
}

std::string lowercase_payload(const std::string& p) {
  std::string out;
  out.reserve(p.size());
  for (const char c : p) {
    out += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
  }
  return out;
}

DetectionConfig build_detection_config(
    const GlobalOptions& global, const std::string& periods_csv,
    const std::vector<std::string>& targeted_payloads, std::size_t window_len,
    std::size_t window_stride, const std::string& correction,
    const std::string& null_source) {
  DetectionConfig config;
  if (!periods_csv.empty()) config.periods = parse_period_list(periods_csv);
  for (const auto& p : targeted_payloads) {
    config.payloads.push_back(lowercase_payload(p));
  }
  config.signif.alpha = global.alpha;
  if (correction == "none") {
    config.signif.correction = Correction::None;
  } else if (correction == "bonferroni") {
    config.signif.correction = Correction::Bonferroni;
  } else {
    throw ConfigError("--correction must be bonferroni or none");
  }
  if (null_source == "self") {
    config.null_source = DetectionConfig::NullSource::SelfEstimated;
  } else if (null_source != "reference") {
    throw ConfigError("--null must be reference or self");
  }
  config.signif.seed = global.seed;
  config.window_len = window_len;
  config.window_stride = window_stride;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return config;
}

json detection_config_json(const DetectionConfig& config, NormMode mode,
                           bool windowed) {
  const DetectionConfig r = config.resolved();
  json j;
  j["periods"] = r.periods;
  j["payloads"] = r.payloads;
  j["alpha"] = r.signif.alpha;
  j["correction"] =
      r.signif.correction == Correction::Bonferroni ? "bonferroni" : "none";
  j["mode"] = mode == NormMode::LettersOnly ? "letters" : "raw";
  j["windowed"] = windowed;
  j["window_len"] = r.window_len;
  j["window_stride"] = r.window_stride;
  j["null_model"] =
      r.null_source == DetectionConfig::NullSource::SelfEstimated
          ? "self"
          : "reference";
  return j;
}

void maybe_write_json(const std::string& path, const json& j) {
  if (!path.empty()) write_text_file(path, to_report_bytes(j));
}

// ---- train ----------------------------------------------------------------

struct TrainOptions {
  std::string corpus_dir;
  std::uint32_t order = 3;
  double lambda = 0.05;
  std::string out;
};

int cmd_train(const GlobalOptions& global, const TrainOptions& opt) {
  const auto files = list_corpus_files(opt.corpus_dir, global.recursive);
  RunManifest manifest = make_manifest("train", global.seed);
  std::string corpus;
  for (const auto& f : files) {
    const std::string content = read_text_file(f);
    manifest.input_digests[f.generic_string()] = fnv1a64_hex(content);
    if (!corpus.empty()) corpus += '\n';
    corpus += content;
  }
  manifest.config["corpus_dir"] = opt.corpus_dir;
  manifest.config["order"] = opt.order;
  manifest.config["lambda"] = opt.lambda;
  manifest.config["recursive"] = global.recursive;
  manifest.config["files"] = files.size();

  MarkovModel model;
  try {
    model = train(corpus, opt.order, opt.lambda);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  json j = model_to_json(model);
  j["manifest"] = manifest.to_json();
  write_text_file(opt.out, to_report_bytes(j));
  std::cout << "trained order-" << opt.order << " model on " << files.size()
            << " file(s), " << model.total_transitions()
            << " transitions -> " << opt.out << "\n";
  return kExitOk;
}

// ---- embed ----------------------------------------------------------------

struct EmbedOptions {
  std::string method = "gen";
  std::string model_path;
  std::string payload = "o";
  std::uint32_t period = 64;
  std::uint32_t offset = 0;
  std::uint64_t letters = 4096;
  std::string input;
  std::string lexicon_path;
  std::size_t beam = 64;
  std::string out;
};

MarkovModel load_model(const std::string& path, RunManifest& manifest) {
  const std::string bytes = read_text_file(path);
  manifest.input_digests[path] = fnv1a64_hex(bytes);
  try {
    return model_from_json(json::parse(bytes));
  } catch (const json::exception& e) {
    throw ConfigError("model file: " + std::string(e.what()));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

RewriteLexicon load_lexicon(const std::string& path, RunManifest& manifest) {
  const std::string bytes = read_text_file(path);
  manifest.input_digests[path] = fnv1a64_hex(bytes);
  try {
    return lexicon_from_json(json::parse(bytes));
  } catch (const json::exception& e) {
    throw ConfigError("lexicon file: " + std::string(e.what()));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

int cmd_embed(const GlobalOptions& global, const EmbedOptions& opt) {
  RunManifest manifest = make_manifest("embed", global.seed);
  ElsSpec spec{lowercase_payload(opt.payload), opt.period, opt.offset, true};
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  manifest.config["method"] = opt.method;
  manifest.config["payload"] = spec.payload;
  manifest.config["period"] = spec.period;
  manifest.config["offset"] = spec.offset;

  std::string text;
  if (opt.method == "gen") {
    if (opt.letters < 1) throw ConfigError("--letters must be >= 1");
    const MarkovModel model = load_model(opt.model_path, manifest);
    manifest.config["letters"] = opt.letters;
    text = generate_constrained(model, opt.letters, spec, global.seed);
  } else if (opt.method == "rewrite") {
    if (opt.input.empty()) throw ConfigError("rewrite needs --input");
    if (opt.lexicon_path.empty()) throw ConfigError("rewrite needs --lexicon");
    const MarkovModel model = load_model(opt.model_path, manifest);
    const RewriteLexicon lexicon = load_lexicon(opt.lexicon_path, manifest);
    const std::string original = read_text_file(opt.input);
    manifest.input_digests[opt.input] = fnv1a64_hex(original);
    manifest.config["beam"] = opt.beam;
    try {
      text = rewrite_constrained(original, lexicon, spec, opt.beam, model);
    } catch (const RewriteInfeasible& e) {
      throw ConfigError(e.what());
    }
  } else {
    throw ConfigError("--method must be gen or rewrite");
  }

  write_text_file(opt.out, text);
  write_text_file(opt.out + ".manifest.json",
                  to_report_bytes(manifest.to_json()));
  std::cout << "embedded payload \"" << spec.payload << "\" period "
            << spec.period << " offset " << spec.offset << " -> " << opt.out
            << "\n";
  return kExitOk;
}

// ---- detect ---------------------------------------------------------------

struct DetectOptions {
  std::string input;
  std::vector<std::string> payloads;  // targeted when nonempty
  std::string periods_csv;
  bool windowed = false;
  std::size_t window_len = 2048;
  std::size_t window_stride = 1024;
  std::string correction = "bonferroni";
  std::string null_source = "reference";
};

int cmd_detect(const GlobalOptions& global, const DetectOptions& opt) {
  const DetectionConfig config = build_detection_config(
      global, opt.periods_csv, opt.payloads, opt.window_len,
      opt.window_stride, opt.correction, opt.null_source);
  const std::string text = read_text_file(opt.input);
  const LetterStream stream = normalize(text, global.norm_mode());

  const DetectionReport report = opt.windowed
                                     ? detect_windowed(stream, config)
                                     : detect_periodic(stream, config);

  RunManifest manifest = make_manifest("detect", global.seed);
  manifest.input_digests[opt.input] = fnv1a64_hex(text);
  manifest.config = detection_config_json(config, global.norm_mode(),
                                          opt.windowed);
  manifest.config["input"] = opt.input;
  manifest.config["targeted"] = !opt.payloads.empty();

  maybe_write_json(global.json_out, report_to_json(report, manifest));

  if (report.detected) {
    const Finding& best = report.findings.front();
    std::cout << "verdict: detected (payload \"" << best.spec.payload
              << "\" period " << best.spec.period << " offset "
              << best.spec.offset << ", matches " << best.count.matches << "/"
              << best.count.trials
              << ", corrected p = " << format_double(best.p_corrected)
              << ")\n";
  } else {
    std::cout << "verdict: not-detected (" << report.hypothesis_count
              << " hypotheses at alpha " << format_double(report.alpha)
              << ")\n";
  }
  if (global.fail_on_detect && report.detected) return kExitDetected;
  return kExitOk;
}

// ---- fp-study ---------------------------------------------------------------

struct FpStudyOptions {
  std::string corpus_dir;
  std::string periods_csv;
  std::vector<std::string> payloads;
  std::string correction = "bonferroni";
  std::string null_source = "reference";
};

int cmd_fp_study(const GlobalOptions& global, const FpStudyOptions& opt) {
  const DetectionConfig config = build_detection_config(
      global, opt.periods_csv, opt.payloads, 2048, 1024, opt.correction,
      opt.null_source);
  const auto files = list_corpus_files(opt.corpus_dir, global.recursive);

  struct FileResult {
    std::string digest;
    bool detected = false;
    double best_p = 1.0;
    std::uint64_t raw_hits = 0;
    double predicted_raw_hits = 0.0;
  };
  std::vector<FileResult> results(files.size());
  par::for_each_index(files.size(), [&](std::size_t i) {
    const std::string text = read_text_file(files[i]);
    const LetterStream stream = normalize(text, global.norm_mode());
    const DetectionReport report = detect_periodic(stream, config);
    FileResult& r = results[i];
    r.digest = fnv1a64_hex(text);
    r.detected = report.detected;
    r.best_p = report.findings.empty() ? 1.0
                                       : report.findings.front().p_corrected;
    r.raw_hits = report.raw_significant_count;
    DetectionConfig pricing = config;  // mirror per-file self-estimation
    if (pricing.null_source == DetectionConfig::NullSource::SelfEstimated) {
      pricing.null = NullModel::from_stream(stream);
      pricing.null_source = DetectionConfig::NullSource::Fixed;
    }
    r.predicted_raw_hits = expected_raw_hits(stream.size(), pricing);
  });

  RunManifest manifest = make_manifest("fp-study", global.seed);
  manifest.config = detection_config_json(config, global.norm_mode(), false);
  manifest.config["corpus_dir"] = opt.corpus_dir;
  manifest.config["recursive"] = global.recursive;

  json j;
  std::size_t detected = 0;
  double raw_sum = 0.0;
  double predicted_sum = 0.0;
  json file_array = json::array();
  for (std::size_t i = 0; i < files.size(); ++i) {
    const FileResult& r = results[i];
    manifest.input_digests[files[i].generic_string()] = r.digest;
    detected += r.detected ? 1 : 0;
    raw_sum += static_cast<double>(r.raw_hits);
    predicted_sum += r.predicted_raw_hits;
    json fj;
    fj["path"] = files[i].generic_string();
    fj["verdict"] = r.detected ? "detected" : "not-detected";
    fj["best_p_corrected"] = r.best_p;
    fj["raw_significant_count"] = r.raw_hits;
    file_array.push_back(std::move(fj));
  }
  j["manifest"] = manifest.to_json();
  j["files"] = std::move(file_array);
  j["files_scanned"] = files.size();
  j["fp_rate"] = static_cast<double>(detected) /
                 static_cast<double>(files.size());
  j["raw_hits_mean"] = raw_sum / static_cast<double>(files.size());
  j["predicted_raw_hits_mean"] =
      predicted_sum / static_cast<double>(files.size());
  maybe_write_json(global.json_out, j);

  std::cout << "fp-study: " << files.size() << " file(s), corrected FP rate "
            << format_double(j["fp_rate"].get<double>())
            << ", raw significant hits/file "
            << format_double(j["raw_hits_mean"].get<double>())
            << " (predicted "
            << format_double(j["predicted_raw_hits_mean"].get<double>())
            << ")\n";
  return kExitOk;
}

// ---- attack-bench -----------------------------------------------------------

struct AttackBenchOptions {
  std::string watermarked_dir;
  std::string sub_rates = "0";
  std::string ins_rates = "0";
  std::string del_rates = "0";
  bool copyedit = false;
  std::string out_csv;
  std::string periods_csv;
  std::vector<std::string> payloads;
  std::string null_source = "reference";
};

int cmd_attack_bench(const GlobalOptions& global,
                     const AttackBenchOptions& opt) {
  const DetectionConfig config = build_detection_config(
      global, opt.periods_csv, opt.payloads, 2048, 1024, "bonferroni",
      opt.null_source);
  const auto files = list_corpus_files(opt.watermarked_dir, global.recursive);
  RunManifest manifest = make_manifest("attack-bench", global.seed);
  std::vector<std::string> texts;
  texts.reserve(files.size());
  for (const auto& f : files) {
    texts.push_back(read_text_file(f));
    manifest.input_digests[f.generic_string()] = fnv1a64_hex(texts.back());
  }

  std::vector<AttackConfig> grid;
  for (const double sub : parse_rate_list(opt.sub_rates)) {
    for (const double ins : parse_rate_list(opt.ins_rates)) {
      for (const double del : parse_rate_list(opt.del_rates)) {
        AttackConfig a;
        a.sub_rate = sub;
        a.ins_rate = ins;
        a.del_rate = del;
        a.copyedit_case = opt.copyedit;
        a.copyedit_punct = opt.copyedit;
        a.seed = global.seed;
        try {
          a.validate();
        } catch (const std::invalid_argument& e) {
          throw ConfigError(e.what());
        }
        grid.push_back(a);
      }
    }
  }

  manifest.config["watermarked_dir"] = opt.watermarked_dir;
  manifest.config["sub_rates"] = opt.sub_rates;
  manifest.config["ins_rates"] = opt.ins_rates;
  manifest.config["del_rates"] = opt.del_rates;
  manifest.config["copyedit"] = opt.copyedit;
  manifest.config["detector"] = detection_config_json(config, NormMode::LettersOnly, true);

  const std::vector<RobustnessRow> rows =
      robustness_curve(texts, grid, config);
  if (!opt.out_csv.empty()) {
    write_text_file(opt.out_csv, robustness_rows_to_csv(rows));
  }
  maybe_write_json(global.json_out, robustness_rows_to_json(rows, manifest));
  std::cout << "attack-bench: " << rows.size() << " grid point(s) x "
            << texts.size() << " text(s)\n";
  for (const auto& r : rows) {
    std::cout << "  sub=" << format_double(r.attack.sub_rate)
              << " ins=" << format_double(r.attack.ins_rate)
              << " del=" << format_double(r.attack.del_rate)
              << " periodic=" << format_double(r.detect_rate_periodic)
              << " windowed=" << format_double(r.detect_rate_windowed)
              << "\n";
  }
  return kExitOk;
}

// ---- hashbit ----------------------------------------------------------------

struct HashbitOptions {
  bool do_embed = false;
  std::string input;
  std::string lexicon_path;
  std::string key;
  double bias = 0.9;
  std::string out;
};

int cmd_hashbit(const GlobalOptions& global, const HashbitOptions& opt) {
  RunManifest manifest =
      make_manifest(opt.do_embed ? "hashbit-embed" : "hashbit-detect",
                    global.seed);
  const std::string text = read_text_file(opt.input);
  manifest.input_digests[opt.input] = fnv1a64_hex(text);
  if (normalize(text, NormMode::LettersOnly).empty()) {
    throw IoError("input has no letters: " + opt.input);
  }
  manifest.config["key"] = opt.key;

  if (opt.do_embed) {
    if (opt.lexicon_path.empty()) throw ConfigError("embed needs --lexicon");
    if (opt.out.empty()) throw ConfigError("embed needs --out");
    const RewriteLexicon lexicon = load_lexicon(opt.lexicon_path, manifest);
    BitWatermarkConfig config{opt.key, opt.bias};
    try {
      config.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    manifest.config["bias"] = opt.bias;
    const BitEmbedResult result =
        embed_bits(text, lexicon, config, global.seed);
    write_text_file(opt.out, result.text);
    write_text_file(opt.out + ".manifest.json",
                    to_report_bytes(manifest.to_json()));
    std::cout << "hashbit embed: " << result.choice_points << "/"
              << result.total_words << " choice points -> " << opt.out
              << "\n";
    return kExitOk;
  }

  const BitDetectReport report = detect_bits(text, opt.key);
  maybe_write_json(global.json_out, bit_report_to_json(report, manifest));
  std::cout << "hashbit detect (keyed): ones " << report.ones << "/"
            << report.n << ", p = " << format_double(report.pvalue) << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  GlobalOptions global;
  CLI::App app{"ELS text watermarking toolkit"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  app.add_option("--seed", global.seed,
                 "Master seed; all randomness derives from it");
  app.add_option("--alpha", global.alpha, "Family-wise significance level");
  app.add_option("--mode", global.mode, "Normalization: letters|raw");
  app.add_option("--json-out", global.json_out, "Write the JSON report here");
  app.add_flag("--fail-on-detect", global.fail_on_detect,
               "Exit 3 when the verdict is detected");
  app.add_flag("--recursive", global.recursive,
               "Recurse into corpus directories");

  TrainOptions train_opt;
  CLI::App* train_cmd =
      app.add_subcommand("train", "Train a character model from a corpus");
  train_cmd->add_option("--corpus", train_opt.corpus_dir, "Corpus directory")
      ->required();
  train_cmd->add_option("--order", train_opt.order, "Model order k");
  train_cmd->add_option("--lambda", train_opt.lambda, "Add-lambda smoothing");
  train_cmd->add_option("--out", train_opt.out, "Model file path")->required();

  EmbedOptions embed_opt;
  CLI::App* embed_cmd =
      app.add_subcommand("embed", "Produce watermarked text");
  embed_cmd->add_option("--method", embed_opt.method, "gen|rewrite");
  embed_cmd->add_option("--model", embed_opt.model_path, "Model file")
      ->required();
  embed_cmd->add_option("--payload", embed_opt.payload, "Payload letters");
  embed_cmd->add_option("--period", embed_opt.period, "Slot period d");
  embed_cmd->add_option("--offset", embed_opt.offset, "Slot offset");
  embed_cmd->add_option("--letters", embed_opt.letters,
                        "Letters to generate (gen)");
  embed_cmd->add_option("--input", embed_opt.input, "Text to rewrite");
  embed_cmd->add_option("--lexicon", embed_opt.lexicon_path,
                        "Variant lexicon JSON (rewrite)");
  embed_cmd->add_option("--beam", embed_opt.beam, "Beam width (rewrite)");
  embed_cmd->add_option("--out", embed_opt.out, "Output text path")
      ->required();

  DetectOptions detect_opt;
  CLI::App* detect_cmd =
      app.add_subcommand("detect", "Keyless watermark detection");
  detect_cmd->add_option("--input", detect_opt.input, "Text file to scan")
      ->required();
  detect_cmd->add_option("--payload", detect_opt.payloads,
                         "Targeted payload(s); omit for the blind a-z grid");
  detect_cmd->add_option("--periods", detect_opt.periods_csv,
                         "Comma-separated candidate periods");
  detect_cmd->add_flag("--windowed", detect_opt.windowed,
                       "Resynchronizing windowed mode");
  detect_cmd->add_option("--window-len", detect_opt.window_len,
                         "Window length in letters");
  detect_cmd->add_option("--window-stride", detect_opt.window_stride,
                         "Window stride in letters");
  detect_cmd->add_option("--correction", detect_opt.correction,
                         "bonferroni|none");
  detect_cmd->add_option("--null", detect_opt.null_source,
                         "Slot prices: reference|self");

  FpStudyOptions fp_opt;
  CLI::App* fp_cmd = app.add_subcommand(
      "fp-study", "Blind detection over a natural corpus (false positives)");
  fp_cmd->add_option("--corpus", fp_opt.corpus_dir, "Corpus directory")
      ->required();
  fp_cmd->add_option("--periods", fp_opt.periods_csv,
                     "Comma-separated candidate periods");
  fp_cmd->add_option("--payload", fp_opt.payloads, "Targeted payload(s)");
  fp_cmd->add_option("--correction", fp_opt.correction, "bonferroni|none");
  fp_cmd->add_option("--null", fp_opt.null_source,
                     "Slot prices: reference|self");

  AttackBenchOptions bench_opt;
  CLI::App* bench_cmd = app.add_subcommand(
      "attack-bench", "Robustness curves under simulated edits");
  bench_cmd
      ->add_option("--watermarked", bench_opt.watermarked_dir,
                   "Directory of watermarked texts")
      ->required();
  bench_cmd->add_option("--sub-rates", bench_opt.sub_rates,
                        "Comma-separated substitution rates");
  bench_cmd->add_option("--ins-rates", bench_opt.ins_rates,
                        "Comma-separated insertion rates");
  bench_cmd->add_option("--del-rates", bench_opt.del_rates,
                        "Comma-separated deletion rates");
  bench_cmd->add_flag("--copyedit", bench_opt.copyedit,
                      "Also toggle case and churn punctuation");
  bench_cmd->add_option("--out-csv", bench_opt.out_csv,
                        "Robustness table CSV path");
  bench_cmd->add_option("--periods", bench_opt.periods_csv,
                        "Comma-separated candidate periods");
  bench_cmd->add_option("--payload", bench_opt.payloads,
                        "Targeted payload(s)");
  bench_cmd->add_option("--null", bench_opt.null_source,
                        "Slot prices: reference|self");

  HashbitOptions hash_opt;
  CLI::App* hash_cmd = app.add_subcommand(
      "hashbit", "Keyed hash-bit baseline watermark");
  CLI::App* hash_embed = hash_cmd->add_subcommand("embed", "Bias word bits");
  hash_embed->add_option("--input", hash_opt.input, "Input text")->required();
  hash_embed->add_option("--lexicon", hash_opt.lexicon_path, "Variant lexicon")
      ->required();
  hash_embed->add_option("--key", hash_opt.key, "Watermark key")->required();
  hash_embed->add_option("--bias", hash_opt.bias, "1-bit bias in (0.5, 1]");
  hash_embed->add_option("--out", hash_opt.out, "Output text path")
      ->required();
  CLI::App* hash_detect =
      hash_cmd->add_subcommand("detect", "Keyed binomial bit test");
  hash_detect->add_option("--input", hash_opt.input, "Input text")->required();
  hash_detect->add_option("--key", hash_opt.key, "Watermark key")->required();
  hash_cmd->require_subcommand(1);

  // Global flags are accepted after the subcommand too.
  for (CLI::App* sub : {train_cmd, embed_cmd, detect_cmd, fp_cmd, bench_cmd,
                        hash_cmd, hash_embed, hash_detect}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (app.got_subcommand(train_cmd)) return cmd_train(global, train_opt);
    if (app.got_subcommand(embed_cmd)) return cmd_embed(global, embed_opt);
    if (app.got_subcommand(detect_cmd)) return cmd_detect(global, detect_opt);
    if (app.got_subcommand(fp_cmd)) return cmd_fp_study(global, fp_opt);
    if (app.got_subcommand(bench_cmd)) {
      return cmd_attack_bench(global, bench_opt);
    }
    if (app.got_subcommand(hash_cmd)) {
      hash_opt.do_embed = hash_cmd->got_subcommand(hash_embed);
      return cmd_hashbit(global, hash_opt);
    }
    throw ConfigError("no subcommand");
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace elsmark
