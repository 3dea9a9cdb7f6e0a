#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "reseg/text.h"

namespace reseg {

// Counts of one word-level alignment. ref_len = substitutions + deletions + correct.
struct EditSummary {
  std::size_t substitutions = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t correct = 0;
  std::size_t ref_len = 0;

  std::size_t cost() const { return substitutions + insertions + deletions; }
  // (S + I + D) / ref_len. Throws DataError when ref_len == 0.
  double wer() const;

  EditSummary& operator+=(const EditSummary& other);
  friend bool operator==(const EditSummary&, const EditSummary&) = default;
};

enum class EditOpKind : std::uint8_t { Match, Substitute, Insert, Delete };

// One step of an edit script. For Insert, `ref_pos` is the reference index the
// inserted hypothesis token precedes; for Delete, `hyp_pos` is the hypothesis
// index the deleted reference token precedes.
struct EditOp {
  EditOpKind kind;
  std::size_t ref_pos;
  std::size_t hyp_pos;

  friend bool operator==(const EditOp&, const EditOp&) = default;
};

using EditScript = std::vector<EditOp>;

struct EditAlignment {
  EditSummary summary;
  EditScript script;
};

// Minimal unit-cost alignment turning `ref` into `hyp`. Among equal-cost
// alignments the backtrace prefers Match/Substitute, then Delete, then Insert.
EditAlignment edit_align(std::span<const Token> ref, std::span<const Token> hyp);

// Unit-cost Levenshtein distance only (no backtrace, linear memory).
std::size_t edit_distance(std::span<const Token> ref, std::span<const Token> hyp);

// Per-segment alignments summed over the document (micro average).
// Throws LengthMismatchError if segment counts differ.
EditSummary corpus_edit_summary(const SegmentedText& ref, const SegmentedText& hyp);

// Total edit cost over total reference length. Throws DataError if the
// reference is empty.
double corpus_wer(const SegmentedText& ref, const SegmentedText& hyp);

namespace detail {

enum class Step : std::uint8_t { Diagonal, Delete, Insert };

// Full backpointer table of the unit-cost DP between two id sequences,
// row-major over (ref_len + 1) x (hyp_len + 1).
struct BacktraceTable {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t cost = 0;
  std::vector<Step> steps;

  Step at(std::size_t i, std::size_t j) const { return steps[i * cols + j]; }
};

BacktraceTable levenshtein_table(std::span<const std::uint32_t> ref,
                                 std::span<const std::uint32_t> hyp);

// Maps both token sequences onto shared integer ids.
void intern(std::span<const Token> a, std::span<const Token> b, std::vector<std::uint32_t>& a_ids,
            std::vector<std::uint32_t>& b_ids);

}  // namespace detail

}  // namespace reseg
