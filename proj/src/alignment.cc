#include "reseg/alignment.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "reseg/error.h"

namespace reseg {

AlignmentLinkSet::AlignmentLinkSet(std::initializer_list<Link> links)
    : AlignmentLinkSet(std::vector<Link>(links)) {}

AlignmentLinkSet::AlignmentLinkSet(std::vector<Link> links) : links_(std::move(links)) {
  std::sort(links_.begin(), links_.end());
  links_.erase(std::unique(links_.begin(), links_.end()), links_.end());
}

void AlignmentLinkSet::validate(std::size_t src_len, std::size_t tgt_len) const {
  for (const Link& l : links_) {
    if (l.src >= src_len || l.tgt >= tgt_len)
      throw LinkBoundsError("link (" + std::to_string(l.src) + "," + std::to_string(l.tgt) +
                            ") outside token bounds " + std::to_string(src_len) + "x" +
                            std::to_string(tgt_len));
  }
}

void AlignmentLinkSet::insert(Link link) {
  auto it = std::lower_bound(links_.begin(), links_.end(), link);
  if (it == links_.end() || *it != link) links_.insert(it, link);
}

bool AlignmentLinkSet::contains(Link link) const {
  return std::binary_search(links_.begin(), links_.end(), link);
}

namespace {

std::u32string folded_code_points(const Token& token) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(token);
  s.foldCase(U_FOLD_CASE_DEFAULT);
  std::u32string out;
  for (int32_t i = 0; i < s.length(); i = s.moveIndex32(i, 1)) out.push_back(s.char32At(i));
  return out;
}

double similarity(const std::u32string& a, const std::u32string& b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1), prev[j] + 1, cur[j - 1] + 1});
    std::swap(prev, cur);
  }
  return 1.0 - static_cast<double>(prev[b.size()]) / static_cast<double>(longest);
}

}  // namespace

double char_similarity(const Token& a, const Token& b) {
  return similarity(folded_code_points(a), folded_code_points(b));
}

AlignmentLinkSet lexical_align(std::span<const Token> src, std::span<const Token> tgt,
                               double sim_threshold) {
  if (!(sim_threshold > 0.0 && sim_threshold <= 1.0))
    throw DataError("similarity threshold must lie in (0, 1]");
  if (src.empty() || tgt.empty()) return {};

  std::vector<std::u32string> s, t;
  for (const auto& tok : src) s.push_back(folded_code_points(tok));
  for (const auto& tok : tgt) t.push_back(folded_code_points(tok));

  struct Candidate {
    double score;
    double off_diagonal;
    std::size_t i;
    std::size_t j;
  };
  const double ratio = static_cast<double>(src.size()) / static_cast<double>(tgt.size());
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      const double score = similarity(s[i], t[j]);
      if (score >= sim_threshold)
        candidates.push_back({score, std::abs(static_cast<double>(i) - static_cast<double>(j) * ratio),
                              i, j});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(b.score, a.off_diagonal, a.i, a.j) < std::tie(a.score, b.off_diagonal, b.i, b.j);
  });

  std::vector<bool> src_used(src.size()), tgt_used(tgt.size());
  std::vector<Link> links;
  for (const Candidate& c : candidates) {
    if (src_used[c.i] || tgt_used[c.j]) continue;
    src_used[c.i] = tgt_used[c.j] = true;
    links.push_back({c.i, c.j});
  }
  return AlignmentLinkSet(std::move(links));
}

LexicalAligner::LexicalAligner(double sim_threshold) : threshold_(sim_threshold) {
  if (!(sim_threshold > 0.0 && sim_threshold <= 1.0))
    throw DataError("similarity threshold must lie in (0, 1]");
}

AlignmentLinkSet LexicalAligner::align(std::span<const Token> src, std::span<const Token> tgt) {
  return lexical_align(src, tgt, threshold_);
}

}  // namespace reseg
