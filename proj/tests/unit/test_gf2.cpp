#include <random>

#include "doctest.h"
#include "pstqec/error.hpp"
#include "pstqec/gf2.hpp"

using namespace pstqec;

namespace {

BinMatrix hamming7() { return BinMatrix::from_rows({"0001111", "0110011", "1010101"}); }

BinMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  BinMatrix a(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a.set(i, j, rng() & 1);
  return a;
}

}  // namespace

TEST_SUITE("gf2") {
  TEST_CASE("bit vectors") {
    BitVec v = BitVec::from_string("1011001");
    CHECK(v.size() == 7);
    CHECK(v.weight() == 4);
    CHECK(v.to_string() == "1011001");
    CHECK(v.get(0));
    CHECK_FALSE(v.get(1));
    CHECK(v.dot(BitVec::from_string("1000001")) == false);
    CHECK(v.dot(BitVec::from_string("1100000")) == true);
    CHECK(BitVec::from_mask(0b101, 3).to_string() == "101");
    CHECK_THROWS_AS(BitVec::from_string("10x"), MalformedInput);
    BitVec big(130);
    big.set(129, true);
    big.set(64, true);
    CHECK(big.weight() == 2);
    CHECK(big.any());
  }

  TEST_CASE("hamming check matrix") {
    BinMatrix h = hamming7();
    CHECK(rank(h) == 3);
    BinMatrix g = nullspace(h);
    CHECK(g.rows() == 4);
    CHECK((h * g.transpose()).is_zero());
    CHECK(min_weight(g) == 3);
    CHECK(code_distance(g) == 3);
    CHECK(smallest_dependent_columns(h, 5) == 3);
    CHECK(cols_independent_up_to(h, 2));
    CHECK_FALSE(cols_independent_up_to(h, 3));
    auto r = rref(h);
    CHECK(r.rank == 3);
    CHECK(r.pivots.size() == 3);
  }

  TEST_CASE("inverse and singular matrices") {
    std::mt19937_64 rng(7);
    int found = 0;
    for (int trial = 0; trial < 50 && found < 10; ++trial) {
      BinMatrix a = random_matrix(9, 9, rng);
      if (!is_invertible(a)) {
        CHECK_THROWS_AS(inverse(a), NumericalError);
        continue;
      }
      ++found;
      CHECK(a * inverse(a) == BinMatrix::identity(9));
      CHECK(inverse(a) * a == BinMatrix::identity(9));
    }
    CHECK(found == 10);
  }

  TEST_CASE("rank-nullity on random matrices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t r = 1 + rng() % 12, c = 1 + rng() % 70;
      BinMatrix a = random_matrix(r, c, rng);
      BinMatrix nsp = nullspace(a);
      CHECK(rank(a) + nsp.rows() == c);
      if (nsp.rows()) CHECK((a * nsp.transpose()).is_zero());
      RowSpace rs(a);
      CHECK(rs.dimension() == rank(a));
      for (std::size_t i = 0; i < a.rows(); ++i) CHECK(rs.contains(a.row(i)));
      CHECK(a.transpose().transpose() == a);
    }
  }

  TEST_CASE("distance routes agree") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      BinMatrix g = random_matrix(4 + rng() % 5, 14, rng);
      if (rank(g) == 0) continue;
      BinMatrix b = row_basis(g);
      // minimum weight of the code equals the smallest dependent column set of its dual's generator
      CHECK(min_weight(b) == smallest_dependent_columns(nullspace(b), 14));
      CHECK(code_distance(b) == min_weight(b));
    }
  }

  TEST_CASE("golay distance") {
    // cyclic [23,12,7] generated by g(x) = x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1
    const std::string gpoly = "101011100011";
    BinMatrix g(12, 23);
    for (std::size_t r = 0; r < 12; ++r)
      for (std::size_t j = 0; j < gpoly.size(); ++j) g.set(r, r + j, gpoly[j] == '1');
    CHECK(rank(g) == 12);
    CHECK(code_distance(g) == 7);
    CHECK(code_distance(nullspace(g)) == 8);
  }

  TEST_CASE("matrix text") {
    std::size_t rule = 99;
    BinMatrix a = parse_matrix("# comment\n1 0 1\n011  # trailing\n---\n1 1 1\n", &rule);
    CHECK(a.rows() == 3);
    CHECK(a.cols() == 3);
    CHECK(rule == 2);
    CHECK(a.row(1).to_string() == "011");
    CHECK_THROWS_AS(parse_matrix("101\n11\n"), MalformedInput);
    CHECK_THROWS_AS(parse_matrix("1 2 0\n"), MalformedInput);
    CHECK(parse_matrix(a.to_text()) == a);
  }

  TEST_CASE("capacity limit") {
    BinMatrix g(31, 40);
    for (std::size_t i = 0; i < 31; ++i) g.set(i, i, true);
    CHECK_THROWS_AS(min_weight(g), CapacityError);
  }
}
