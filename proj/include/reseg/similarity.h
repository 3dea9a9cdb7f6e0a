#pragma once

#include <span>

#include "reseg/embedding.h"
#include "reseg/text.h"

namespace reseg {

// dot(u, v) / (|u| |v|). Throws DataError on a dimension mismatch or a
// zero-norm argument.
double cosine(std::span<const double> u, std::span<const double> v);

struct DocSimilarityOptions {
  // Similarity assigned to a pair of empty segments.
  double both_empty = 1.0;
  // Similarity assigned when exactly one side of the pair is empty.
  double one_empty = 0.0;
};

// Mean per-segment cosine similarity between src and tgt embeddings.
// Provider failures surface as ProviderError naming the segment.
double doc_similarity(const SegmentedText& src, const SegmentedText& tgt,
                      EmbeddingProvider& embedder, const DocSimilarityOptions& options = {});

}  // namespace reseg
