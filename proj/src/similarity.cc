#include "reseg/similarity.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "reseg/error.h"

namespace reseg {

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw LengthMismatchError("cosine: dimension mismatch", u.size(), v.size());
  double dot = 0, uu = 0, vv = 0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    dot += u[k] * v[k];
    uu += u[k] * u[k];
    vv += v[k] * v[k];
  }
  if (uu == 0 || vv == 0) throw DataError("cosine: zero-norm vector");
  const double c = dot / (std::sqrt(uu) * std::sqrt(vv));
  return std::clamp(c, -1.0, 1.0);
}

double doc_similarity(const SegmentedText& src, const SegmentedText& tgt,
                      EmbeddingProvider& embedder, const DocSimilarityOptions& options) {
  if (src.size() != tgt.size())
    throw LengthMismatchError("doc_similarity: segment counts differ", src.size(), tgt.size());
  if (src.size() == 0) throw DataError("doc_similarity: empty document");

  auto embed = [&](const TokenList& sentence, std::size_t k) {
    std::vector<double> vec;
    try {
      vec = embedder.embed(sentence);
    } catch (const ProviderError&) {
      throw;
    } catch (const Error& e) {
      throw ProviderError(e.what(), k);
    }
    if (vec.size() != embedder.dimension())
      throw ProviderError("embedding has dimension " + std::to_string(vec.size()) + ", expected " +
                              std::to_string(embedder.dimension()),
                          k);
    return vec;
  };

  double sum = 0;
  for (std::size_t k = 0; k < src.size(); ++k) {
    const bool src_empty = src.segments[k].empty();
    const bool tgt_empty = tgt.segments[k].empty();
    if (src_empty && tgt_empty) {
      sum += options.both_empty;
    } else if (src_empty || tgt_empty) {
      sum += options.one_empty;
    } else {
      const auto a = embed(src.segments[k], k);
      const auto b = embed(tgt.segments[k], k);
      try {
        sum += cosine(a, b);
      } catch (const DataError& e) {
        throw DataError("segment " + std::to_string(k) + ": " + e.what());
      }
    }
  }
  return sum / static_cast<double>(src.size());
}

}  // namespace reseg
