#pragma once

#include <cstddef>
#include <vector>

#include "reseg/text.h"

namespace reseg {

struct SegmentationResult {
  SegmentedText resegmented;
  // Sum of per-segment edit distances; equals the Levenshtein distance
  // between the hypothesis stream and the flattened reference.
  std::size_t total_cost = 0;
  // End offsets (into the hypothesis stream) of segments 0..N-2.
  std::vector<std::size_t> boundary_positions;
};

// Minimum-WER re-segmentation: splits `hyp_stream` into ref.size() segments
// so that the summed per-segment edit distance against `ref` is minimal.
//
// A single DP runs over (flattened reference x hypothesis); hypothesis
// boundaries are read off the backtrace where the reference segments end.
// Hypothesis words inserted at a segment border stay in the left segment.
// Throws DataError if `ref` has no segments.
SegmentationResult mwer_segment(const TokenList& hyp_stream, const SegmentedText& ref);

}  // namespace reseg
