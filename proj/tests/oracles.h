// Independent reference implementations and fixtures shared by the unit and
// acceptance suites. Nothing here calls into the code paths it checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "reseg/alignment.h"
#include "reseg/text.h"

namespace reseg::testing {

// Top-down recursive edit distance over suffixes, memoised per call.
inline std::size_t oracle_edit_distance(const TokenList& a, const TokenList& b) {
  std::vector<std::vector<std::size_t>> memo(
      a.size() + 1, std::vector<std::size_t>(b.size() + 1, std::numeric_limits<std::size_t>::max()));
  std::function<std::size_t(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    std::size_t& m = memo[i][j];
    if (m != std::numeric_limits<std::size_t>::max()) return m;
    m = std::min({go(i + 1, j) + 1, go(i, j + 1) + 1, go(i + 1, j + 1) + (a[i] == b[j] ? 0 : 1)});
    return m;
  };
  return go(0, 0);
}

// Every way to cut `n` tokens into `parts` contiguous (possibly empty)
// pieces, as lists of parts-1 cut offsets.
inline void enumerate_cuts(std::size_t n, std::size_t parts,
                           const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> cuts;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (cuts.size() + 1 == parts) {
      visit(cuts);
      return;
    }
    for (std::size_t c = from; c <= n; ++c) {
      cuts.push_back(c);
      rec(c);
      cuts.pop_back();
    }
  };
  rec(0);
}

inline std::vector<TokenList> cut(const TokenList& stream, const std::vector<std::size_t>& cuts) {
  std::vector<TokenList> out;
  std::size_t begin = 0;
  for (std::size_t c : cuts) {
    out.emplace_back(stream.begin() + begin, stream.begin() + c);
    begin = c;
  }
  out.emplace_back(stream.begin() + begin, stream.end());
  return out;
}

// Minimum over all segmentations of `hyp` of the summed per-segment distance.
inline std::size_t oracle_min_segmented_cost(const TokenList& hyp, const SegmentedText& ref) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  enumerate_cuts(hyp.size(), ref.size(), [&](const std::vector<std::size_t>& cuts) {
    const auto parts = cut(hyp, cuts);
    std::size_t cost = 0;
    for (std::size_t k = 0; k < parts.size(); ++k)
      cost += oracle_edit_distance(ref.segments[k], parts[k]);
    best = std::min(best, cost);
  });
  return best;
}

// Cross-alignment count straight from the definition.
inline std::size_t oracle_cross_count(const std::vector<std::pair<std::size_t, std::size_t>>& links,
                                      std::size_t src_split, std::size_t tgt_split) {
  std::size_t n = 0;
  for (auto [i, j] : links)
    if ((i < src_split && j >= tgt_split) || (i >= src_split && j < tgt_split)) ++n;
  return n;
}

// Closed-form Pearson from raw sums in long double.
inline double oracle_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  long double n = static_cast<long double>(x.size()), sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const long double a = x[k], b = y[k];
    sx += a;
    sy += b;
    sxx += a * a;
    syy += b * b;
    sxy += a * b;
  }
  return static_cast<double>((n * sxy - sx * sy) /
                             std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy)));
}

inline TokenList random_tokens(std::mt19937_64& rng, std::size_t max_len,
                               const std::vector<std::string>& alphabet) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> sym(0, alphabet.size() - 1);
  TokenList out(len(rng));
  for (auto& t : out) t = alphabet[sym(rng)];
  return out;
}

inline SegmentedText random_segmented(std::mt19937_64& rng, std::size_t max_segments,
                                      std::size_t max_seg_len,
                                      const std::vector<std::string>& alphabet) {
  std::uniform_int_distribution<std::size_t> count(1, max_segments);
  SegmentedText doc;
  doc.segments.resize(count(rng));
  for (auto& seg : doc.segments) seg = random_tokens(rng, max_seg_len, alphabet);
  return doc;
}

inline const std::vector<std::string>& abc() {
  static const std::vector<std::string> a{"a", "b", "c"};
  return a;
}

// Links every (i, j) whose token pair appears in a bilingual dictionary.
class DictionaryAligner : public WordAligner {
 public:
  explicit DictionaryAligner(std::vector<std::pair<std::string, std::string>> pairs)
      : pairs_(pairs.begin(), pairs.end()) {}

  AlignmentLinkSet align(std::span<const Token> src, std::span<const Token> tgt) override {
    ++calls;
    std::vector<Link> links;
    for (std::size_t i = 0; i < src.size(); ++i) {
      auto [lo, hi] = pairs_.equal_range(src[i]);
      for (auto p = lo; p != hi; ++p)
        for (std::size_t j = 0; j < tgt.size(); ++j)
          if (p->second == tgt[j]) links.push_back({i, j});
    }
    return AlignmentLinkSet(std::move(links));
  }

  int calls = 0;

 private:
  std::multimap<std::string, std::string> pairs_;
};

// Links identical tokens.
class IdentityAligner : public WordAligner {
 public:
  AlignmentLinkSet align(std::span<const Token> src, std::span<const Token> tgt) override {
    std::vector<Link> links;
    for (std::size_t i = 0; i < src.size(); ++i)
      for (std::size_t j = 0; j < tgt.size(); ++j)
        if (src[i] == tgt[j]) links.push_back({i, j});
    return AlignmentLinkSet(std::move(links));
  }
};

// Returns a pre-computed link set regardless of input.
class FixedAligner : public WordAligner {
 public:
  explicit FixedAligner(AlignmentLinkSet links) : links_(std::move(links)) {}
  AlignmentLinkSet align(std::span<const Token>, std::span<const Token>) override { return links_; }

 private:
  AlignmentLinkSet links_;
};

// Worked example: an English transcript whose gold boundary falls between
// "... speak for Europe." and "Are not the crises ...", a German reference
// translation, and an English back-translation that reorders the question so
// that "Are not" has no counterpart at the boundary.
struct BoundaryExample {
  std::string transcript_gold[2] = {
      "I believe this Parliament must speak for Europe.",
      "Are not the crises of recent years a clear sign?",
  };
  std::string reference_translation[2] = {
      "Ich glaube, dieses Parlament muss für Europa sprechen.",
      "Sind die Krisen der letzten Jahre nicht ein deutliches Zeichen?",
  };
  std::string back_translation[2] = {
      "I think this Parliament must speak for Europe.",
      "The crises of recent years are not a clear sign?",
  };
  // Word links between the English source and the German reference.
  std::vector<std::pair<std::string, std::string>> links = {
      {"i", "ich"},         {"believe", "glaube"}, {"this", "dieses"},  {"parliament", "parlament"},
      {"must", "muss"},     {"speak", "sprechen"}, {"for", "für"},      {"europe", "europa"},
      {".", "."},           {"are", "sind"},       {"not", "nicht"},    {"the", "die"},
      {"crises", "krisen"}, {"of", "der"},         {"recent", "letzten"}, {"years", "jahre"},
      {"a", "ein"},         {"clear", "deutliches"}, {"sign", "zeichen"}, {"?", "?"},
  };

  static SegmentedText tokenized(const std::string (&lines)[2]) {
    SegmentedText doc;
    for (const auto& l : lines) doc.segments.push_back(tokenize(l, NormalizationMode::WP));
    return doc;
  }
};

}  // namespace reseg::testing
