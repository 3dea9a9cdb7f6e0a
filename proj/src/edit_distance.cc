#include "reseg/edit_distance.h"

#include <algorithm>
#include <string_view>
#include <unordered_map>

#include "reseg/error.h"

namespace reseg {

double EditSummary::wer() const {
  if (ref_len == 0) throw DataError("WER undefined for an empty reference");
  return static_cast<double>(cost()) / static_cast<double>(ref_len);
}

EditSummary& EditSummary::operator+=(const EditSummary& other) {
  substitutions += other.substitutions;
  insertions += other.insertions;
  deletions += other.deletions;
  correct += other.correct;
  ref_len += other.ref_len;
  return *this;
}

namespace detail {

void intern(std::span<const Token> a, std::span<const Token> b, std::vector<std::uint32_t>& a_ids,
            std::vector<std::uint32_t>& b_ids) {
  std::unordered_map<std::string_view, std::uint32_t> ids;
  auto id_of = [&](const Token& t) {
    auto [it, inserted] = ids.try_emplace(t, static_cast<std::uint32_t>(ids.size()));
    return it->second;
  };
  a_ids.clear();
  b_ids.clear();
  a_ids.reserve(a.size());
  b_ids.reserve(b.size());
  for (const auto& t : a) a_ids.push_back(id_of(t));
  for (const auto& t : b) b_ids.push_back(id_of(t));
}

BacktraceTable levenshtein_table(std::span<const std::uint32_t> ref,
                                 std::span<const std::uint32_t> hyp) {
  BacktraceTable table;
  table.rows = ref.size() + 1;
  table.cols = hyp.size() + 1;
  table.steps.resize(table.rows * table.cols);

  std::vector<std::size_t> prev(table.cols), cur(table.cols);
  for (std::size_t j = 0; j < table.cols; ++j) {
    prev[j] = j;
    table.steps[j] = Step::Insert;
  }
  table.steps[0] = Step::Diagonal;

  for (std::size_t i = 1; i < table.rows; ++i) {
    Step* row = &table.steps[i * table.cols];
    cur[0] = i;
    row[0] = Step::Delete;
    for (std::size_t j = 1; j < table.cols; ++j) {
      const std::size_t diag = prev[j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      const std::size_t del = prev[j] + 1;
      const std::size_t ins = cur[j - 1] + 1;
      if (diag <= del && diag <= ins) {
        cur[j] = diag;
        row[j] = Step::Diagonal;
      } else if (del <= ins) {
        cur[j] = del;
        row[j] = Step::Delete;
      } else {
        cur[j] = ins;
        row[j] = Step::Insert;
      }
    }
    std::swap(prev, cur);
  }
  table.cost = prev[table.cols - 1];
  return table;
}

}  // namespace detail

EditAlignment edit_align(std::span<const Token> ref, std::span<const Token> hyp) {
  std::vector<std::uint32_t> r, h;
  detail::intern(ref, hyp, r, h);
  const detail::BacktraceTable table = detail::levenshtein_table(r, h);

  EditAlignment out;
  out.summary.ref_len = ref.size();
  std::size_t i = ref.size(), j = hyp.size();
  while (i > 0 || j > 0) {
    switch (table.at(i, j)) {
      case detail::Step::Diagonal:
        --i;
        --j;
        if (r[i] == h[j]) {
          ++out.summary.correct;
          out.script.push_back({EditOpKind::Match, i, j});
        } else {
          ++out.summary.substitutions;
          out.script.push_back({EditOpKind::Substitute, i, j});
        }
        break;
      case detail::Step::Delete:
        --i;
        ++out.summary.deletions;
        out.script.push_back({EditOpKind::Delete, i, j});
        break;
      case detail::Step::Insert:
        --j;
        ++out.summary.insertions;
        out.script.push_back({EditOpKind::Insert, i, j});
        break;
    }
  }
  std::reverse(out.script.begin(), out.script.end());
  return out;
}

std::size_t edit_distance(std::span<const Token> ref, std::span<const Token> hyp) {
  std::vector<std::uint32_t> r, h;
  detail::intern(ref, hyp, r, h);
  std::vector<std::size_t> prev(h.size() + 1), cur(h.size() + 1);
  for (std::size_t j = 0; j <= h.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= r.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= h.size(); ++j)
      cur[j] = std::min({prev[j - 1] + (r[i - 1] == h[j - 1] ? 0 : 1), prev[j] + 1, cur[j - 1] + 1});
    std::swap(prev, cur);
  }
  return prev[h.size()];
}

EditSummary corpus_edit_summary(const SegmentedText& ref, const SegmentedText& hyp) {
  if (ref.size() != hyp.size())
    throw LengthMismatchError("reference and hypothesis segment counts differ", ref.size(),
                              hyp.size());
  EditSummary total;
  for (std::size_t k = 0; k < ref.size(); ++k)
    total += edit_align(ref.segments[k], hyp.segments[k]).summary;
  return total;
}

double corpus_wer(const SegmentedText& ref, const SegmentedText& hyp) {
  const EditSummary total = corpus_edit_summary(ref, hyp);
  if (total.ref_len == 0) throw DataError("corpus WER undefined: reference has no tokens");
  return total.wer();
}

}  // namespace reseg
