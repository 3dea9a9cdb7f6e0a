#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "reseg/text.h"

namespace reseg {

struct ScoreSeries {
  std::vector<double> values;
  std::string label;
};

// One decimal float per line; line i scores segment i.
ScoreSeries read_scores(const std::string& path);
ScoreSeries parse_scores(std::string_view contents, const std::string& label);

// Sample Pearson correlation. Throws LengthMismatchError for unequal lengths,
// DataError for fewer than two points, ZeroVarianceError for a constant series.
double pearson(const ScoreSeries& x, const ScoreSeries& y);

// 100 * (r_synth - r_shuff) / (r_upper - r_shuff). May leave [0, 100].
// Throws DataError unless r_upper > r_shuff.
double gap_recovery(double r_synth, double r_shuff, double r_upper = 1.0);

struct CorrelationReport {
  double r_synth = 0;
  double r_shuff = 0;
  double r_upper = 1.0;
  double gap_recovery_pct = 0;
};

// Correlates synthetic-source and shuffled-source scores with the
// manual-source scores and derives the recovered share of the gap.
CorrelationReport correlation_report(const ScoreSeries& manual, const ScoreSeries& synthetic,
                                     const ScoreSeries& shuffled, double r_upper = 1.0);

// Randomness for the controlled protocols: std::mt19937_64 seeded with the
// given value, with bounded integers drawn by rejection sampling so that
// results are identical on every platform.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  // Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

 private:
  std::mt19937_64 engine_;
};

// Fisher-Yates permutation of the segments, deterministic under `seed`.
SegmentedText shuffle_segments(const SegmentedText& doc, std::uint64_t seed);

// Cuts `stream` into segments whose lengths are drawn uniformly from
// [min_len, max_len]; the final segment takes whatever remains.
SegmentedText random_split(const TokenList& stream, std::uint64_t seed, std::size_t min_len = 5,
                           std::size_t max_len = 100);

enum class SourceChoice { ASR, BT };

std::string_view source_choice_name(SourceChoice choice);

inline constexpr double kDefaultWerThreshold = 0.20;

// ASR when its WER does not exceed the threshold, BT otherwise.
SourceChoice recommend_source(double asr_wer, double threshold = kDefaultWerThreshold);

struct WinRecord {
  std::string system;
  std::string lang_pair;
  double asr_wer = 0;
  double asr_corr = 0;
  double bt_corr = 0;
  bool biased = false;
};

struct WinBucket {
  std::size_t asr_wins = 0;
  std::size_t bt_wins = 0;
  std::size_t ties = 0;

  std::size_t decided() const { return asr_wins + bt_wins; }
  friend bool operator==(const WinBucket&, const WinBucket&) = default;
};

// ASR-vs-BT outcomes split at the WER threshold. Biased records are excluded.
struct WinTable {
  double threshold = kDefaultWerThreshold;
  WinBucket low;   // asr_wer <= threshold
  WinBucket high;  // asr_wer > threshold
  WinBucket total;
};

WinTable count_wins(const std::vector<WinRecord>& records, double threshold = kDefaultWerThreshold);

// Tab-separated records with a header naming the columns
// system, lang_pair, asr_wer, asr_corr, bt_corr, biased (any order).
std::vector<WinRecord> parse_win_records(std::string_view contents, const std::string& origin);
std::vector<WinRecord> read_win_records(const std::string& path);

std::string format_win_table(const WinTable& table);

// Fixed six-decimal rendering used by every table the tools print.
std::string format_float(double value);

}  // namespace reseg
