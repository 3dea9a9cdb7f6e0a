// reseg: cross-lingual re-segmentation of speech-translation sources and the
// meta-evaluation utilities used to compare synthetic sources.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "reseg/alignment.h"
#include "reseg/edit_distance.h"
#include "reseg/error.h"
#include "reseg/eval.h"
#include "reseg/io.h"
#include "reseg/mwer.h"
#include "reseg/pipeline.h"
#include "reseg/service.h"
#include "reseg/similarity.h"
#include "reseg/text.h"

namespace {

using namespace reseg;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kService = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Text preprocessing choice; "raw" keeps the original text and only splits
// on whitespace.
struct TextOptions {
  std::string mode = "np";
  bool char_level = false;

  SegmentedText read(const std::string& path) const {
    if (mode == "raw") return read_segmented_raw(path);
    return read_segmented(path, parse_mode(mode), char_level);
  }
};

struct RunConfig {
  std::vector<std::string> inputs;
  std::string output;
  std::string decisions;
  std::string manifest;
  TextOptions src_text;
  TextOptions tgt_text;
  std::string aligner = "lexical";
  std::string endpoint;
  double sim_threshold = kDefaultSimThreshold;
  std::uint64_t seed = 0;
  std::size_t min_len = 5;
  std::size_t max_len = 100;
  double wer_threshold = kDefaultWerThreshold;
  double r_upper = 1.0;
  std::string shuffled;
  double wer_value = 0;
  unsigned jobs = 1;
};

void validate_inputs(const std::vector<std::string>& paths) {
  for (const auto& p : paths) {
    if (p.empty()) continue;
    std::error_code ec;
    if (!std::filesystem::is_regular_file(p, ec)) throw UsageError(p + ": no such input file");
  }
}

void validate_output(const std::string& path) {
  if (path.empty() || path == "-") return;
  const auto parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty() && !std::filesystem::is_directory(parent, ec))
    throw UsageError(path + ": output directory does not exist");
}

void emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-")
    std::cout << contents << std::flush;
  else
    write_file_atomic(path, contents);
}

std::string resolve_endpoint(const RunConfig& cfg) {
  if (!cfg.endpoint.empty()) return cfg.endpoint;
  if (const char* env = std::getenv(kEndpointEnvVar); env && *env) return env;
  throw UsageError(std::string("no service endpoint: pass --endpoint or set ") + kEndpointEnvVar);
}

// Runs `count` independent tasks on up to `jobs` threads; rethrows the first
// failure after all workers have stopped.
template <typename Fn>
void run_parallel(std::size_t count, unsigned jobs, Fn&& task) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t k; (k = next++) < count;) {
      try {
        task(k);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

int cmd_wer(const RunConfig& cfg) {
  validate_inputs(cfg.inputs);
  validate_output(cfg.output);
  const SegmentedText ref = cfg.src_text.read(cfg.inputs[0]);
  const SegmentedText hyp = cfg.src_text.read(cfg.inputs[1]);
  if (ref.size() != hyp.size())
    throw DataError(cfg.inputs[0] + " has " + std::to_string(ref.size()) + " segments, " +
                    cfg.inputs[1] + " has " + std::to_string(hyp.size()));
  const EditSummary s = corpus_edit_summary(ref, hyp);
  if (s.ref_len == 0) throw DataError(cfg.inputs[0] + ": reference has no tokens");
  emit(cfg.output, "wer\tsubstitutions\tinsertions\tdeletions\tcorrect\tref_len\n" +
                       format_float(s.wer()) + '\t' + std::to_string(s.substitutions) + '\t' +
                       std::to_string(s.insertions) + '\t' + std::to_string(s.deletions) + '\t' +
                       std::to_string(s.correct) + '\t' + std::to_string(s.ref_len) + '\n');
  return kOk;
}

int cmd_segment(const RunConfig& cfg) {
  validate_inputs(cfg.inputs);
  validate_output(cfg.output);
  const TokenList hyp = cfg.src_text.read(cfg.inputs[0]).flatten();
  const SegmentedText ref = cfg.src_text.read(cfg.inputs[1]);
  if (ref.size() == 0) throw DataError(cfg.inputs[1] + ": reference has no segments");
  emit(cfg.output, format_segmented(mwer_segment(hyp, ref).resegmented));
  return kOk;
}

struct ManifestRow {
  std::string asr, bt, ref, out, decisions;
};

std::vector<ManifestRow> read_manifest(const std::string& path) {
  const std::string contents = read_file(path);
  std::vector<ManifestRow> rows;
  std::size_t pos = 0, line_no = 0;
  while (pos < contents.size()) {
    std::size_t nl = contents.find('\n', pos);
    if (nl == std::string::npos) nl = contents.size();
    std::string line = contents.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line_no == 1) continue;  // header row
    std::vector<std::string> f;
    std::size_t p = 0;
    for (std::size_t tab; (tab = line.find('\t', p)) != std::string::npos; p = tab + 1)
      f.push_back(line.substr(p, tab - p));
    f.push_back(line.substr(p));
    if (f.size() != 4 && f.size() != 5)
      throw DataError(path + ":" + std::to_string(line_no) +
                      ": expected asr, bt, ref, out[, decisions] columns");
    rows.push_back({f[0], f[1], f[2], f[3], f.size() == 5 ? f[4] : ""});
  }
  return rows;
}

int cmd_resegment(const RunConfig& cfg, bool refine) {
  std::vector<ManifestRow> rows;
  if (!cfg.manifest.empty()) {
    validate_inputs({cfg.manifest});
    rows = read_manifest(cfg.manifest);
  } else {
    if (cfg.inputs.size() != 3 || cfg.inputs[0].empty() || cfg.inputs[1].empty() ||
        cfg.inputs[2].empty())
      throw UsageError("--asr, --bt and --ref are required without --manifest");
    rows.push_back({cfg.inputs[0], cfg.inputs[1], cfg.inputs[2], cfg.output, cfg.decisions});
  }
  for (const auto& s : rows) {
    validate_inputs({s.asr, s.bt, s.ref});
    validate_output(s.out);
    validate_output(s.decisions);
  }
  std::string endpoint;
  if (refine && cfg.aligner == "service") endpoint = resolve_endpoint(cfg);

  struct Output {
    std::string text, decisions;
  };
  std::vector<Output> outputs(rows.size());
  run_parallel(rows.size(), cfg.jobs, [&](std::size_t k) {
    const ManifestRow& s = rows[k];
    ResegJob job;
    job.asr_stream = cfg.src_text.read(s.asr).flatten();
    job.bt = cfg.src_text.read(s.bt);
    job.ref_translation = cfg.tgt_text.read(s.ref);
    if (job.bt.size() != job.ref_translation.size())
      throw DataError(s.bt + " has " + std::to_string(job.bt.size()) + " segments, " + s.ref +
                      " has " + std::to_string(job.ref_translation.size()));
    if (!refine) {
      outputs[k].text = format_segmented(xl_resegment(job));
      return;
    }
    std::unique_ptr<WordAligner> aligner;
    if (cfg.aligner == "service")
      aligner = std::make_unique<ServiceAligner>(
          std::make_shared<ServiceClient>(open_endpoint(endpoint)));
    else
      aligner = std::make_unique<LexicalAligner>(cfg.sim_threshold);
    const XlrResult r = xlr_resegment(job, *aligner);
    outputs[k].text = format_segmented(r.resegmented);
    outputs[k].decisions = format_decisions(r.decisions);
  });

  // Nothing is written unless every job succeeded.
  for (std::size_t k = 0; k < rows.size(); ++k) {
    emit(rows[k].out, outputs[k].text);
    if (!rows[k].decisions.empty()) write_file_atomic(rows[k].decisions, outputs[k].decisions);
  }
  return kOk;
}

int cmd_correlate(const RunConfig& cfg) {
  validate_inputs(cfg.inputs);
  validate_inputs({cfg.shuffled});
  validate_output(cfg.output);
  const ScoreSeries manual = read_scores(cfg.inputs[0]);
  const ScoreSeries synthetic = read_scores(cfg.inputs[1]);
  std::string out = "metric\tvalue\n";
  if (cfg.shuffled.empty()) {
    out += "r_synth\t" + format_float(pearson(manual, synthetic)) + '\n';
  } else {
    const CorrelationReport rep =
        correlation_report(manual, synthetic, read_scores(cfg.shuffled), cfg.r_upper);
    out += "r_synth\t" + format_float(rep.r_synth) + '\n';
    out += "r_shuff\t" + format_float(rep.r_shuff) + '\n';
    out += "r_upper\t" + format_float(rep.r_upper) + '\n';
    out += "gap_recovery_pct\t" + format_float(rep.gap_recovery_pct) + '\n';
  }
  emit(cfg.output, out);
  return kOk;
}

int cmd_shuffle(const RunConfig& cfg) {
  validate_inputs(cfg.inputs);
  validate_output(cfg.output);
  emit(cfg.output, format_segmented(shuffle_segments(cfg.src_text.read(cfg.inputs[0]), cfg.seed)));
  return kOk;
}

int cmd_random_split(const RunConfig& cfg) {
  validate_inputs(cfg.inputs);
  validate_output(cfg.output);
  if (cfg.min_len < 1 || cfg.min_len > cfg.max_len)
    throw UsageError("need 1 <= --min-len <= --max-len");
  const TokenList stream = cfg.src_text.read(cfg.inputs[0]).flatten();
  emit(cfg.output, format_segmented(random_split(stream, cfg.seed, cfg.min_len, cfg.max_len)));
  return kOk;
}

int cmd_recommend(const RunConfig& cfg) {
  std::cout << source_choice_name(recommend_source(cfg.wer_value, cfg.wer_threshold)) << '\n';
  return kOk;
}

int cmd_count_wins(const RunConfig& cfg) {
  validate_inputs(cfg.inputs);
  validate_output(cfg.output);
  emit(cfg.output,
       format_win_table(count_wins(read_win_records(cfg.inputs[0]), cfg.wer_threshold)));
  return kOk;
}

int cmd_cosine_doc(const RunConfig& cfg) {
  validate_inputs(cfg.inputs);
  validate_output(cfg.output);
  const SegmentedText src = cfg.src_text.read(cfg.inputs[0]);
  const SegmentedText tgt = cfg.tgt_text.read(cfg.inputs[1]);
  if (src.size() != tgt.size())
    throw DataError(cfg.inputs[0] + " has " + std::to_string(src.size()) + " segments, " +
                    cfg.inputs[1] + " has " + std::to_string(tgt.size()));
  ServiceEmbedder embedder(std::make_shared<ServiceClient>(open_endpoint(resolve_endpoint(cfg))));
  emit(cfg.output, "metric\tvalue\nsimilarity\t" + format_float(doc_similarity(src, tgt, embedder)) +
                       '\n');
  return kOk;
}

void add_text_options(CLI::App* cmd, TextOptions& opts, const std::string& prefix,
                      const std::string& what) {
  cmd->add_option("--" + prefix + "mode", opts.mode, "Normalization of " + what + ": np, wp or raw")
      ->check(CLI::IsMember({"np", "wp", "raw"}))
      ->capture_default_str();
  cmd->add_flag("--" + prefix + "char-level", opts.char_level,
                "Tokenize " + what + " into characters (e.g. Chinese)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-lingual re-segmentation and synthetic-source meta-evaluation"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("-j,--jobs", cfg.jobs, "Documents processed in parallel")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  cfg.inputs.resize(3);
  std::function<int()> action;

  TextOptions wer_text{"np"}, seg_text{"wp"}, reseg_src{"wp"}, reseg_tgt{"wp"};
  TextOptions shuf_text{"raw"}, split_text{"raw"}, cos_text{"raw"};

  auto* wer = app.add_subcommand("wer", "Corpus WER of HYP against REF (segment-aligned files)");
  wer->add_option("ref", cfg.inputs[0], "Reference segment file")->required();
  wer->add_option("hyp", cfg.inputs[1], "Hypothesis segment file")->required();
  wer->add_option("-o,--output", cfg.output, "Output table (default stdout)");
  add_text_options(wer, wer_text, "", "both files");
  wer->callback([&] {
    cfg.src_text = wer_text;
    cfg.inputs.resize(2);
    action = [&] { return cmd_wer(cfg); };
  });

  auto* seg = app.add_subcommand("segment", "Minimum-WER re-segmentation of HYP against REF");
  seg->add_option("hyp", cfg.inputs[0], "Hypothesis text (segmentation ignored)")->required();
  seg->add_option("ref", cfg.inputs[1], "Segmented reference")->required();
  seg->add_option("-o,--output", cfg.output, "Segmented hypothesis (default stdout)");
  add_text_options(seg, seg_text, "", "both files");
  seg->callback([&] {
    cfg.src_text = seg_text;
    cfg.inputs.resize(2);
    action = [&] { return cmd_segment(cfg); };
  });

  auto add_reseg = [&](const std::string& name, const std::string& help, bool refine) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--asr", cfg.inputs[0], "ASR transcript (source language)");
    cmd->add_option("--bt", cfg.inputs[1], "Back-translated reference, one segment per line");
    cmd->add_option("--ref", cfg.inputs[2], "Reference translation, one segment per line");
    cmd->add_option("-o,--output", cfg.output, "Re-segmented transcript (default stdout)");
    cmd->add_option("--manifest", cfg.manifest,
                    "TSV with header; columns asr, bt, ref, out[, decisions]; one job per row");
    add_text_options(cmd, reseg_src, "", "ASR and back-translation");
    add_text_options(cmd, reseg_tgt, "ref-", "the reference translation");
    if (refine) {
      cmd->add_option("--aligner", cfg.aligner, "Word aligner: lexical or service")
          ->check(CLI::IsMember({"lexical", "service"}))
          ->capture_default_str();
      cmd->add_option("--endpoint", cfg.endpoint,
                      std::string("Aligner service (exec:CMD or tcp:HOST:PORT); default $") +
                          kEndpointEnvVar);
      cmd->add_option("--sim-threshold", cfg.sim_threshold, "Lexical aligner similarity threshold")
          ->check(CLI::Range(0.0, 1.0))
          ->capture_default_str();
      cmd->add_option("--decisions", cfg.decisions, "Write per-boundary decisions (TSV)");
    }
    cmd->callback([&, refine] {
      cfg.src_text = reseg_src;
      cfg.tgt_text = reseg_tgt;
      action = [&, refine] { return cmd_resegment(cfg, refine); };
    });
  };
  add_reseg("resegment-xl", "Segment an ASR transcript like the reference via its back-translation",
            false);
  add_reseg("resegment-xlr", "resegment-xl followed by alignment-based boundary refinement", true);

  auto* cor = app.add_subcommand("correlate", "Pearson correlation of two score files");
  cor->add_option("manual", cfg.inputs[0], "Scores computed with the manual source")->required();
  cor->add_option("synthetic", cfg.inputs[1], "Scores computed with the synthetic source")
      ->required();
  cor->add_option("--shuffled", cfg.shuffled, "Scores computed with a shuffled source");
  cor->add_option("--upper", cfg.r_upper, "Upper-bound correlation")->capture_default_str();
  cor->add_option("-o,--output", cfg.output, "Output table (default stdout)");
  cor->callback([&] {
    cfg.inputs.resize(2);
    action = [&] { return cmd_correlate(cfg); };
  });

  auto* shuf = app.add_subcommand("shuffle", "Randomly permute the segments of a file");
  shuf->add_option("input", cfg.inputs[0], "Segment file")->required();
  shuf->add_option("-o,--output", cfg.output, "Shuffled file (default stdout)");
  shuf->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  add_text_options(shuf, shuf_text, "", "the file (raw keeps the text as is)");
  shuf->callback([&] {
    cfg.src_text = shuf_text;
    cfg.inputs.resize(1);
    action = [&] { return cmd_shuffle(cfg); };
  });

  auto* split = app.add_subcommand("random-split", "Cut a text into random-length segments");
  split->add_option("input", cfg.inputs[0], "Text (existing line breaks are ignored)")->required();
  split->add_option("-o,--output", cfg.output, "Segment file (default stdout)");
  split->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  split->add_option("--min-len", cfg.min_len, "Minimum segment length")->capture_default_str();
  split->add_option("--max-len", cfg.max_len, "Maximum segment length")->capture_default_str();
  add_text_options(split, split_text, "", "the text (raw keeps it as is)");
  split->callback([&] {
    cfg.src_text = split_text;
    cfg.inputs.resize(1);
    action = [&] { return cmd_random_split(cfg); };
  });

  auto* rec = app.add_subcommand("recommend", "Pick ASR or BT as synthetic source from the ASR WER");
  rec->add_option("wer", cfg.wer_value, "ASR word error rate (fraction, e.g. 0.15)")->required();
  rec->add_option("--threshold", cfg.wer_threshold, "WER threshold")->capture_default_str();
  rec->callback([&] {
    cfg.inputs.clear();
    action = [&] { return cmd_recommend(cfg); };
  });

  auto* wins = app.add_subcommand("count-wins", "Tabulate ASR-vs-BT wins by WER bucket");
  wins->add_option("records", cfg.inputs[0], "TSV records")->required();
  wins->add_option("--threshold", cfg.wer_threshold, "WER threshold")->capture_default_str();
  wins->add_option("-o,--output", cfg.output, "Output table (default stdout)");
  wins->callback([&] {
    cfg.inputs.resize(1);
    action = [&] { return cmd_count_wins(cfg); };
  });

  auto* cos = app.add_subcommand("cosine-doc", "Mean segment embedding similarity of two files");
  cos->add_option("src", cfg.inputs[0], "First segment file")->required();
  cos->add_option("tgt", cfg.inputs[1], "Second segment file")->required();
  cos->add_option("--endpoint", cfg.endpoint,
                  std::string("Embedding service (exec:CMD or tcp:HOST:PORT); default $") +
                      kEndpointEnvVar);
  cos->add_option("-o,--output", cfg.output, "Output table (default stdout)");
  add_text_options(cos, cos_text, "", "both files");
  cos->callback([&] {
    cfg.src_text = cfg.tgt_text = cos_text;
    cfg.inputs.resize(2);
    action = [&] { return cmd_cosine_doc(cfg); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "reseg: " << e.what() << '\n';
    return kUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "reseg: " << e.what() << '\n';
    return kUsage;
  } catch (const ServiceError& e) {
    std::cerr << "reseg: service error: " << e.what() << '\n';
    return kService;
  } catch (const Error& e) {
    std::cerr << "reseg: " << e.what() << '\n';
    return kData;
  }
}
