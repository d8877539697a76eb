#include <random>

#include "doctest.h"
#include "oracles/lindblad.hpp"
#include "pstqec/pauli.hpp"

using namespace pstqec;

TEST_SUITE("pauli") {
  TEST_CASE("products and commutation against dense matrices") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
      Pauli a = oracle::random_pauli(3, rng), b = oracle::random_pauli(3, rng);
      oracle::Mat ma = oracle::pauli_matrix(3, a), mb = oracle::pauli_matrix(3, b);
      CHECK((oracle::pauli_matrix(3, a * b) - ma * mb).norm() < 1e-12);
      CHECK(commutes(a, b) == ((ma * mb - mb * ma).norm() < 1e-12));
      const bool herm = (ma - ma.adjoint()).norm() < 1e-12;
      CHECK(a.is_hermitian() == herm);
      for (std::uint64_t x = 0; x < 8; ++x) {
        auto [y, amp] = a.act(x);
        CHECK(std::abs(ma(Eigen::Index(y), Eigen::Index(x)) - amp) < 1e-12);
      }
    }
  }

  TEST_CASE("hermitian constructor and sign") {
    Pauli y = Pauli::hermitian(1, 1);
    CHECK(y.is_hermitian());
    CHECK(y.sign() == 1);
    CHECK((oracle::pauli_matrix(1, y) - oracle::pauli_y()).norm() < 1e-12);
    CHECK(Pauli::hermitian(3, 1, true).sign() == -1);
    CHECK(y.to_string(1) == "+Y");
    CHECK(Pauli::hermitian(0b101, 0b110).weight() == 3);
  }

  TEST_CASE("majoranas match Jordan-Wigner") {
    for (std::size_t n = 1; n <= 4; ++n)
      for (std::size_t i = 0; i < 2 * n; ++i) {
        CHECK((oracle::pauli_matrix(n, majorana(n, i)) - oracle::majorana(n, i)).norm() < 1e-12);
        for (std::size_t j = 0; j < 2 * n; ++j) CHECK(commutes(majorana(n, i), majorana(n, j)) == (i == j));
      }
  }

  TEST_CASE("majorana decomposition round trip") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = 1 + rng() % 6;
      Pauli p = oracle::random_pauli(n, rng);
      MajoranaForm f = to_majoranas(n, p);
      Pauli q = majorana_product(n, f.support);
      q.phase = (q.phase + f.phase) & 3;
      CHECK(q == p);
    }
  }

  TEST_CASE("shifts") {
    Pauli p = Pauli::hermitian(0b11, 0b10);
    CHECK(p.shifted(3).x == 0b11000);
    CHECK(p.shifted(3).shifted(-3) == p);
  }
}
