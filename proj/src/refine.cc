#include "reseg/refine.h"

#include <string>

#include "reseg/error.h"

namespace reseg {

namespace {

std::size_t distance(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

}  // namespace

std::size_t count_cross_alignments(const AlignmentLinkSet& links, std::size_t src_split,
                                   std::size_t tgt_split, std::size_t src_len,
                                   std::size_t tgt_len) {
  if (src_split > src_len || tgt_split > tgt_len)
    throw DataError("split (" + std::to_string(src_split) + "," + std::to_string(tgt_split) +
                    ") outside " + std::to_string(src_len) + "x" + std::to_string(tgt_len));
  links.validate(src_len, tgt_len);
  std::size_t crossing = 0;
  for (const Link& l : links) {
    const bool src_left = l.src < src_split;
    const bool tgt_left = l.tgt < tgt_split;
    if (src_left != tgt_left) ++crossing;
  }
  return crossing;
}

std::vector<std::size_t> cross_counts_by_split(const AlignmentLinkSet& links, std::size_t src_len,
                                               std::size_t tgt_split) {
  // to_left_target[i]: links from source token i into the left target part.
  std::vector<std::size_t> to_left_target(src_len, 0), to_right_target(src_len, 0);
  for (const Link& l : links) {
    if (l.src >= src_len) throw LinkBoundsError("link source index outside the source tokens");
    (l.tgt < tgt_split ? to_left_target : to_right_target)[l.src]++;
  }
  std::size_t left_target_total = 0;
  for (std::size_t c : to_left_target) left_target_total += c;

  std::vector<std::size_t> counts(src_len + 1);
  // At split j: right-target links from sources < j plus left-target links
  // from sources >= j.
  std::size_t right_before = 0, left_before = 0;
  for (std::size_t j = 0; j <= src_len; ++j) {
    counts[j] = right_before + (left_target_total - left_before);
    if (j < src_len) {
      right_before += to_right_target[j];
      left_before += to_left_target[j];
    }
  }
  return counts;
}

RefinedPair refine_boundary(const TokenList& s_i, const TokenList& s_next, const TokenList& t_i,
                            const TokenList& t_next, WordAligner& aligner) {
  if (s_i.empty() && s_next.empty() && t_i.empty() && t_next.empty())
    throw DataError("refine_boundary: all four segments are empty");

  TokenList src = s_i;
  src.insert(src.end(), s_next.begin(), s_next.end());
  TokenList tgt = t_i;
  tgt.insert(tgt.end(), t_next.begin(), t_next.end());

  const AlignmentLinkSet links = aligner.align(src, tgt);
  links.validate(src.size(), tgt.size());
  const std::vector<std::size_t> counts = cross_counts_by_split(links, src.size(), t_i.size());

  const std::size_t old_split = s_i.size();
  std::size_t best = old_split;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] < counts[best] ||
        (counts[j] == counts[best] && distance(j, old_split) < distance(best, old_split)) ||
        (counts[j] == counts[best] && distance(j, old_split) == distance(best, old_split) &&
         j < best))
      best = j;
  }

  RefinedPair out;
  out.left.assign(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(best));
  out.right.assign(src.begin() + static_cast<std::ptrdiff_t>(best), src.end());
  out.decision.old_split = old_split;
  out.decision.new_split = best;
  out.decision.cross_count_before = counts[old_split];
  out.decision.cross_count_after = counts[best];
  return out;
}

RefinementResult refine_all(const SegmentedText& src, const SegmentedText& tgt,
                            WordAligner& aligner) {
  if (src.size() != tgt.size())
    throw LengthMismatchError("refine_all: source and target segment counts differ", src.size(),
                              tgt.size());
  if (src.size() == 0) throw DataError("refine_all: empty document");

  RefinementResult result;
  result.refined = src;
  auto& segs = result.refined.segments;
  for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
    if (segs[i].empty() && segs[i + 1].empty() && tgt.segments[i].empty() &&
        tgt.segments[i + 1].empty()) {
      result.decisions.push_back({i, 0, 0, 0, 0});
      continue;
    }
    RefinedPair pair =
        refine_boundary(segs[i], segs[i + 1], tgt.segments[i], tgt.segments[i + 1], aligner);
    segs[i] = std::move(pair.left);
    segs[i + 1] = std::move(pair.right);
    pair.decision.boundary_index = i;
    result.decisions.push_back(pair.decision);
  }
  return result;
}

}  // namespace reseg
