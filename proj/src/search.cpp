#include "pstqec/search.hpp"

#include <atomic>
#include <climits>
#include <random>
#include <thread>

#include "pstqec/error.hpp"

namespace pstqec {

namespace {

BitVec random_row(std::mt19937_64& rng, std::size_t m) {
  BitVec v(m);
  for (std::size_t j = 0; j < m; ++j) v.set(j, rng() & 1);
  return v;
}

BitVec random_combination(std::mt19937_64& rng, const BinMatrix& basis) {
  BitVec v(basis.cols());
  for (std::size_t r = 0; r < basis.rows(); ++r)
    if (rng() & 1) v ^= basis.row(r);
  return v;
}

std::optional<CssCode> try_candidate(std::mt19937_64& rng, const SearchParams& p) {
  const std::size_t m = p.m;
  const std::size_t stabs = m - p.k;
  const bool even_x = p.code_case != CodeCase::i;
  std::uniform_int_distribution<std::size_t> pick_r2(1, stabs - 1);
  const std::size_t r2 = pick_r2(rng);
  const std::size_t r1 = stabs - r2;

  BinMatrix g2(0, m);
  for (std::size_t r = 0; r < r2; ++r) {
    BitVec row = random_row(rng, m);
    if (even_x && row.weight() % 2 == 1) row.flip(rng() % m);
    g2.append_row(row);
  }
  if (rank(g2) != r2) return std::nullopt;
  if (!cols_independent_up_to(g2, std::min(p.d2 - 1, m))) return std::nullopt;

  BinMatrix dual = nullspace(g2);
  BinMatrix h1(0, m);
  if (p.code_case == CodeCase::iii) {
    BitVec ones(m);
    for (std::size_t j = 0; j < m; ++j) ones.set(j, true);
    h1.append_row(ones);
  }
  while (h1.rows() < r1) h1.append_row(random_combination(rng, dual));
  if (rank(h1) != r1) return std::nullopt;
  if (!cols_independent_up_to(h1, std::min(p.d1 - 1, m))) return std::nullopt;

  CssCode css{h1, g2, std::nullopt, std::nullopt};
  StabilizerCode code = css.assemble();
  if (classify_case(code) != p.code_case) return std::nullopt;
  if (p.require_restricted &&
      !restricted_parity_check(code, build_error_map(m, ErrorMapKind::E, parity_permutation(m))))
    return std::nullopt;
  if (p.require_lemma1 && !lemma1_pair_check_detail(code, build_error_map(m, ErrorMapKind::Eprime)).ok)
    return std::nullopt;
  css.d1 = code_distance(nullspace(h1));
  css.d2 = code_distance(dual);
  return css;
}

}  // namespace

SearchResult bounded_search(const SearchParams& p) {
  if (p.m < 2 || p.m > 16) throw PreconditionError("bounded_search supports 2 <= M <= 16");
  if (p.k < 1 || p.k + 2 > p.m) throw PreconditionError("bounded_search needs 1 <= k <= M-2");
  if (p.d1 < 1 || p.d2 < 1) throw PreconditionError("distances must be positive");
  const unsigned workers = std::max(1u, p.threads);
  std::vector<SearchResult> results(workers);
  std::atomic<int> best{INT_MAX};

  auto run = [&](unsigned w) {
    std::uint64_t share = p.budget / workers + (w < p.budget % workers ? 1 : 0);
    std::mt19937_64 rng(p.seed * 0x9E3779B97F4A7C15ULL + w);
    for (std::uint64_t i = 0; i < share; ++i) {
      if (best.load() < static_cast<int>(w)) return;
      auto found = try_candidate(rng, p);
      results[w].candidates = i + 1;
      if (found) {
        results[w].code = std::move(found);
        results[w].worker = static_cast<int>(w);
        int cur = best.load();
        while (static_cast<int>(w) < cur && !best.compare_exchange_weak(cur, static_cast<int>(w))) {
        }
        return;
      }
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (auto& r : results)
    if (r.code) return r;
  SearchResult none;
  none.candidates = p.budget;
  return none;
}

}  // namespace pstqec
