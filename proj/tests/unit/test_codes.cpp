#include "doctest.h"
#include "pstqec/codes.hpp"
#include "pstqec/error.hpp"

using namespace pstqec;

namespace {

CssCode steane() {
  BinMatrix h = BinMatrix::from_rows({"0001111", "0110011", "1010101"});
  return {h, h, {}, {}};
}

}  // namespace

TEST_SUITE("codes") {
  TEST_CASE("steane assembly") {
    StabilizerCode c = steane().assemble();
    CHECK(c.m == 7);
    CHECK(c.k() == 1);
    CHECK(is_valid_stabilizer(c.generators));
    CHECK(classify_case(c) == CodeCase::ii);
    // Z on every qubit is the preferred logical Z
    CHECK(c.logical_z().z == 0x7f);
    CHECK(c.logical_z().x == 0);
    CHECK(c.logical_x().x == 0x7f);
    CHECK_FALSE(commutes(c.logical_z(), c.logical_x()));
    for (std::size_t i = 0; i < c.generators.rows(); ++i) {
      CHECK(commutes(c.generator(i), c.logical_z()));
      CHECK(commutes(c.generator(i), c.logical_x()));
    }
  }

  TEST_CASE("anticommuting generators are rejected") {
    BinMatrix g = BinMatrix::from_rows({"1000", "0010"});  // Z1 and X1 on two qubits
    CHECK_FALSE(is_valid_stabilizer(g));
    CHECK_THROWS_AS(is_valid_stabilizer(BinMatrix::from_rows({"101"})), MalformedInput);
  }

  TEST_CASE("error maps") {
    for (std::size_t m : {1u, 2u, 5u, 7u}) {
      ErrorMap e = build_error_map(m, ErrorMapKind::E);
      ErrorMap ep = build_error_map(m, ErrorMapKind::Eprime);
      CHECK(is_invertible(e.matrix));
      CHECK(is_invertible(ep.matrix));
      // E columns are the Majoranas: column j < M is X-type at site j+1, column M+j is Y-type,
      // so column M+j carries j+2 symplectic bits and the parities alternate
      for (std::size_t j = 0; j < m; ++j) {
        CHECK(e.matrix.column(j).weight() == j + 1);
        CHECK(e.matrix.column(m + j).weight() == j + 2);
        CHECK(ep.matrix.column(j).weight() == 1);
      }
    }
    std::vector<std::size_t> perm = parity_permutation(7);
    ErrorMap e = build_error_map(7, ErrorMapKind::E, perm);
    for (std::size_t j = 0; j < 14; ++j) CHECK(is_odd_parity_majorana(7, perm[j]) == (j < 7));
    CHECK_THROWS_AS(restricted_errors(build_error_map(7, ErrorMapKind::E)), PreconditionError);
    CHECK(restricted_errors(e).size() == 1 + 14 + 49);
  }

  TEST_CASE("perfect code identity") {
    CHECK(perfect_check(7, 1, 1));
    CHECK(perfect_check(15, 7, 1));
    CHECK(perfect_check(31, 21, 1));
    CHECK(perfect_check(23, 1, 3));
    CHECK_FALSE(perfect_check(5, 1, 1));
    CHECK_FALSE(perfect_check(9, 1, 1));
  }

  TEST_CASE("correctable sets") {
    const std::size_t m = 7;
    CHECK(correctable_errors(m, CorrectableSet::TwoMajorana).size() == 1 + 2 * m + m * (2 * m - 1));
    CHECK(correctable_errors(m, CorrectableSet::OneOfEachParity).size() == 1 + 2 * m + m * m);
  }

  TEST_CASE("steane parity checks") {
    CssCode s = steane();
    StabilizerCode c = s.assemble();
    ErrorMap e = build_error_map(7, ErrorMapKind::E, parity_permutation(7));
    CHECK(restricted_parity_check(c, e));
    auto d = lemma1_pair_check_detail(c, build_error_map(7, ErrorMapKind::Eprime));
    CHECK_FALSE(d.ok);
    CHECK(d.conflicts == 42);
    CHECK(d.witness.has_value());
    CHECK(majorana_distance(c, build_error_map(7, ErrorMapKind::Eprime)) == 3);
  }

  TEST_CASE("bare repetition code misses odd-parity errors") {
    CssCode rep{BinMatrix::from_rows({"11000", "01100", "00110", "00011"}), BinMatrix(0, 5), {}, {}};
    StabilizerCode c = rep.assemble();
    CHECK(c.k() == 1);
    ErrorMap e = build_error_map(5, ErrorMapKind::E, parity_permutation(5));
    CHECK_FALSE(restricted_parity_check(c, e));
  }

  TEST_CASE("syndromes") {
    StabilizerCode c = steane().assemble();
    CHECK_FALSE(syndrome_of(c, BitVec(14)).any());
    BitVec x1(14);
    x1.set(7, true);  // X on qubit 1
    CHECK(syndrome_of(c, x1).any());
    CHECK(syndrome_matrix(c, build_error_map(7, ErrorMapKind::E)).rows() == 6);
  }

  TEST_CASE("case names") {
    CHECK(parse_case("iii") == CodeCase::iii);
    CHECK(to_string(CodeCase::i) == "i");
    CHECK_THROWS_AS(parse_case("iv"), MalformedInput);
  }
}
