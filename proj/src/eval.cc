#include "reseg/eval.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "reseg/error.h"
#include "reseg/io.h"

namespace reseg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view contents) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    lines.push_back(contents.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', pos);
    fields.push_back(trim(line.substr(pos, tab == std::string_view::npos ? tab : tab - pos)));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  return fields;
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

std::string where(const std::string& origin, std::size_t line_index) {
  return origin + ":" + std::to_string(line_index + 1);
}

}  // namespace

std::string format_float(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

ScoreSeries parse_scores(std::string_view contents, const std::string& label) {
  ScoreSeries series;
  series.label = label;
  const auto lines = split_lines(contents);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    double v = 0;
    if (!parse_double(lines[k], v))
      throw DataError(where(label, k) + ": not a number: '" + std::string(lines[k]) + "'");
    series.values.push_back(v);
  }
  return series;
}

ScoreSeries read_scores(const std::string& path) { return parse_scores(read_file(path), path); }

double pearson(const ScoreSeries& x, const ScoreSeries& y) {
  if (x.values.size() != y.values.size())
    throw LengthMismatchError("pearson: " + x.label + " and " + y.label + " differ in length",
                              x.values.size(), y.values.size());
  const std::size_t n = x.values.size();
  if (n < 2) throw DataError("pearson: need at least two points");

  double mx = 0, my = 0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += x.values[k];
    my += y.values[k];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = x.values[k] - mx;
    const double dy = y.values[k] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0) throw ZeroVarianceError("pearson: " + x.label + " has zero variance");
  if (syy == 0) throw ZeroVarianceError("pearson: " + y.label + " has zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double gap_recovery(double r_synth, double r_shuff, double r_upper) {
  if (!(r_upper > r_shuff))
    throw DataError("gap_recovery: upper bound " + format_float(r_upper) +
                    " must exceed shuffled baseline " + format_float(r_shuff));
  return 100.0 * (r_synth - r_shuff) / (r_upper - r_shuff);
}

CorrelationReport correlation_report(const ScoreSeries& manual, const ScoreSeries& synthetic,
                                     const ScoreSeries& shuffled, double r_upper) {
  CorrelationReport report;
  report.r_synth = pearson(manual, synthetic);
  report.r_shuff = pearson(manual, shuffled);
  report.r_upper = r_upper;
  report.gap_recovery_pct = gap_recovery(report.r_synth, report.r_shuff, r_upper);
  return report;
}

std::uint64_t SeededRng::below(std::uint64_t bound) {
  if (bound == 0) throw DataError("SeededRng::below: empty range");
  constexpr std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % bound + 1) % bound;
  for (;;) {
    const std::uint64_t x = engine_();
    if (x <= limit) return x % bound;
  }
}

SegmentedText shuffle_segments(const SegmentedText& doc, std::uint64_t seed) {
  SegmentedText out = doc;
  SeededRng rng(seed);
  auto& segs = out.segments;
  for (std::size_t i = segs.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(segs[i - 1], segs[j]);
  }
  return out;
}

SegmentedText random_split(const TokenList& stream, std::uint64_t seed, std::size_t min_len,
                           std::size_t max_len) {
  if (min_len < 1 || min_len > max_len)
    throw DataError("random_split: need 1 <= min_len <= max_len");
  SeededRng rng(seed);
  SegmentedText out;
  std::size_t pos = 0;
  while (pos < stream.size()) {
    const std::size_t len = std::min<std::size_t>(rng.between(min_len, max_len), stream.size() - pos);
    out.segments.emplace_back(stream.begin() + static_cast<std::ptrdiff_t>(pos),
                              stream.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  return out;
}

std::string_view source_choice_name(SourceChoice choice) {
  return choice == SourceChoice::ASR ? "ASR" : "BT";
}

SourceChoice recommend_source(double asr_wer, double threshold) {
  if (std::isnan(asr_wer) || asr_wer < 0) throw DataError("recommend_source: WER must be >= 0");
  return asr_wer <= threshold ? SourceChoice::ASR : SourceChoice::BT;
}

WinTable count_wins(const std::vector<WinRecord>& records, double threshold) {
  WinTable table;
  table.threshold = threshold;
  for (const WinRecord& r : records) {
    if (r.biased) continue;
    WinBucket& bucket = r.asr_wer <= threshold ? table.low : table.high;
    if (r.asr_corr > r.bt_corr)
      ++bucket.asr_wins;
    else if (r.bt_corr > r.asr_corr)
      ++bucket.bt_wins;
    else
      ++bucket.ties;
  }
  table.total.asr_wins = table.low.asr_wins + table.high.asr_wins;
  table.total.bt_wins = table.low.bt_wins + table.high.bt_wins;
  table.total.ties = table.low.ties + table.high.ties;
  return table;
}

std::vector<WinRecord> parse_win_records(std::string_view contents, const std::string& origin) {
  const auto lines = split_lines(contents);
  if (lines.empty()) throw DataError(origin + ": missing header row");

  static const char* const kColumns[] = {"system",   "lang_pair", "asr_wer",
                                         "asr_corr", "bt_corr",   "biased"};
  std::map<std::string, std::size_t, std::less<>> index;
  const auto header = split_tabs(lines[0]);
  for (std::size_t c = 0; c < header.size(); ++c) index.emplace(std::string(header[c]), c);
  for (const char* name : kColumns)
    if (!index.contains(name)) throw DataError(origin + ":1: header lacks column '" + name + "'");

  std::vector<WinRecord> records;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (trim(lines[k]).empty()) continue;
    const auto fields = split_tabs(lines[k]);
    if (fields.size() != header.size())
      throw DataError(where(origin, k) + ": expected " + std::to_string(header.size()) +
                      " fields, got " + std::to_string(fields.size()));
    auto field = [&](const char* name) { return fields[index.find(name)->second]; };
    auto number = [&](const char* name) {
      double v = 0;
      if (!parse_double(field(name), v))
        throw DataError(where(origin, k) + ": column " + name + " is not a number");
      return v;
    };
    WinRecord r;
    r.system = std::string(field("system"));
    r.lang_pair = std::string(field("lang_pair"));
    r.asr_wer = number("asr_wer");
    r.asr_corr = number("asr_corr");
    r.bt_corr = number("bt_corr");
    std::string biased(field("biased"));
    std::transform(biased.begin(), biased.end(), biased.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (biased == "true" || biased == "1" || biased == "yes")
      r.biased = true;
    else if (biased == "false" || biased == "0" || biased == "no")
      r.biased = false;
    else
      throw DataError(where(origin, k) + ": column biased must be true/false");
    if (r.asr_wer < 0) throw DataError(where(origin, k) + ": negative asr_wer");
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<WinRecord> read_win_records(const std::string& path) {
  return parse_win_records(read_file(path), path);
}

std::string format_win_table(const WinTable& table) {
  auto pct = [](std::size_t part, std::size_t whole) {
    return whole == 0 ? std::string("NA") : format_float(100.0 * part / whole);
  };
  auto row = [&](const std::string& name, const WinBucket& b) {
    return name + '\t' + std::to_string(b.asr_wins) + '\t' + pct(b.asr_wins, b.decided()) + '\t' +
           std::to_string(b.bt_wins) + '\t' + pct(b.bt_wins, b.decided()) + '\t' +
           std::to_string(b.ties) + '\n';
  };
  std::string out = "bucket\tasr_wins\tasr_pct\tbt_wins\tbt_pct\tties\n";
  out += row("wer<=" + format_float(table.threshold), table.low);
  out += row("wer>" + format_float(table.threshold), table.high);
  out += row("total", table.total);
  return out;
}

}  // namespace reseg
