#pragma once

#include <cstddef>
#include <vector>

#include "reseg/text.h"

namespace reseg {

// Sentence embedder. Implementations must return vectors of dimension()
// entries and be deterministic for a fixed input.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  virtual std::size_t dimension() const = 0;
  virtual std::vector<double> embed(const TokenList& sentence) = 0;
};

}  // namespace reseg
