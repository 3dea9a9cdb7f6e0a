#include "reseg/mwer.h"

#include "reseg/edit_distance.h"
#include "reseg/error.h"

namespace reseg {

SegmentationResult mwer_segment(const TokenList& hyp_stream, const SegmentedText& ref) {
  if (ref.size() == 0) throw DataError("mwer_segment: reference has no segments");

  const TokenList ref_flat = ref.flatten();
  std::vector<std::uint32_t> r, h;
  detail::intern(ref_flat, hyp_stream, r, h);
  const detail::BacktraceTable table = detail::levenshtein_table(r, h);

  // last_col[i]: largest hypothesis position the optimal path reaches in
  // reference row i. Walking the path backwards, the first visit of a row is
  // its rightmost cell, so insertions in that row fall to the left segment.
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> last_col(r.size() + 1, unset);
  std::size_t i = r.size(), j = h.size();
  last_col[i] = j;
  while (i > 0 || j > 0) {
    switch (table.at(i, j)) {
      case detail::Step::Diagonal:
        --i;
        --j;
        break;
      case detail::Step::Delete:
        --i;
        break;
      case detail::Step::Insert:
        --j;
        break;
    }
    if (last_col[i] == unset) last_col[i] = j;
  }

  SegmentationResult result;
  result.total_cost = table.cost;
  std::size_t ref_end = 0;
  for (std::size_t k = 0; k + 1 < ref.size(); ++k) {
    ref_end += ref.segments[k].size();
    result.boundary_positions.push_back(last_col[ref_end]);
  }
  result.resegmented = split_at(hyp_stream, result.boundary_positions);
  result.resegmented.lang = ref.lang;
  return result;
}

}  // namespace reseg
