#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "reseg/text.h"

namespace reseg {

struct Link {
  std::size_t src;
  std::size_t tgt;

  friend auto operator<=>(const Link&, const Link&) = default;
};

// Word alignment links over one source/target token pair. Kept sorted and
// free of duplicates.
class AlignmentLinkSet {
 public:
  AlignmentLinkSet() = default;
  AlignmentLinkSet(std::initializer_list<Link> links);
  explicit AlignmentLinkSet(std::vector<Link> links);

  // Throws LinkBoundsError if any link falls outside the token bounds.
  void validate(std::size_t src_len, std::size_t tgt_len) const;

  void insert(Link link);
  bool contains(Link link) const;
  std::size_t size() const { return links_.size(); }
  bool empty() const { return links_.empty(); }
  auto begin() const { return links_.begin(); }
  auto end() const { return links_.end(); }
  const std::vector<Link>& links() const { return links_; }

  friend bool operator==(const AlignmentLinkSet&, const AlignmentLinkSet&) = default;

 private:
  std::vector<Link> links_;
};

// Produces word alignments between two token sequences. Implementations must
// be deterministic for fixed inputs and respect the token bounds.
class WordAligner {
 public:
  virtual ~WordAligner() = default;
  virtual AlignmentLinkSet align(std::span<const Token> src, std::span<const Token> tgt) = 0;
};

// 1 - (code point edit distance / longer length), on case-folded tokens.
double char_similarity(const Token& a, const Token& b);

inline constexpr double kDefaultSimThreshold = 0.75;

// Greedy one-to-one surface-similarity alignment. Candidate pairs scoring at
// least `sim_threshold` are accepted best-first; ties prefer pairs close to
// the length-scaled diagonal, then smaller indices. Each token is used once.
AlignmentLinkSet lexical_align(std::span<const Token> src, std::span<const Token> tgt,
                               double sim_threshold = kDefaultSimThreshold);

class LexicalAligner : public WordAligner {
 public:
  explicit LexicalAligner(double sim_threshold = kDefaultSimThreshold);
  AlignmentLinkSet align(std::span<const Token> src, std::span<const Token> tgt) override;

 private:
  double threshold_;
};

}  // namespace reseg
