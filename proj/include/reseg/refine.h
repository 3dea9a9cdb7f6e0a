#pragma once

#include <cstddef>
#include <vector>

#include "reseg/alignment.h"
#include "reseg/text.h"

namespace reseg {

struct BoundaryDecision {
  std::size_t boundary_index = 0;
  // Split offsets within the concatenation s_i + s_{i+1}.
  std::size_t old_split = 0;
  std::size_t new_split = 0;
  std::size_t cross_count_before = 0;
  std::size_t cross_count_after = 0;

  friend bool operator==(const BoundaryDecision&, const BoundaryDecision&) = default;
};

// Links whose endpoints fall in opposite partitions when the source is cut
// at src_split and the target at tgt_split. src_len and tgt_len are the
// concatenation lengths. A split beyond them throws DataError, a link outside
// them LinkBoundsError.
std::size_t count_cross_alignments(const AlignmentLinkSet& links, std::size_t src_split,
                                   std::size_t tgt_split, std::size_t src_len,
                                   std::size_t tgt_len);

// Cross-alignment count for every source split 0..src_len with the target
// split fixed, in O(|links| + src_len).
std::vector<std::size_t> cross_counts_by_split(const AlignmentLinkSet& links, std::size_t src_len,
                                               std::size_t tgt_split);

struct RefinedPair {
  TokenList left;
  TokenList right;
  BoundaryDecision decision;
};

// Re-cuts s_i + s_next so that, with the target cut fixed at |t_i|, the
// number of cross-alignments is minimal. Ties keep the split closest to the
// current one, then the leftmost.
RefinedPair refine_boundary(const TokenList& s_i, const TokenList& s_next, const TokenList& t_i,
                            const TokenList& t_next, WordAligner& aligner);

struct RefinementResult {
  SegmentedText refined;
  std::vector<BoundaryDecision> decisions;
};

// One left-to-right pass over every interior boundary. Each step sees the
// right segment as updated by the previous step.
RefinementResult refine_all(const SegmentedText& src, const SegmentedText& tgt,
                            WordAligner& aligner);

}  // namespace reseg
