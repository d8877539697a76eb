#pragma once

#include <cstdint>
#include <optional>

#include "pstqec/codes.hpp"

namespace pstqec {

struct SearchParams {
  std::size_t m = 7;
  std::size_t d1 = 3;  // lower bounds
  std::size_t d2 = 3;
  CodeCase code_case = CodeCase::i;
  std::size_t k = 1;
  std::uint64_t budget = 200000;  // candidate codes examined, summed over workers
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool require_restricted = false;
  bool require_lemma1 = false;
};

struct SearchResult {
  std::optional<CssCode> code;
  std::uint64_t candidates = 0;
  int worker = -1;
};

// Randomized search over CSS pairs honouring the parity constraints of the requested
// case. A miss says nothing about existence.
SearchResult bounded_search(const SearchParams& p);

}  // namespace pstqec
