#include <random>

#include "doctest.h"
#include "oracles/hilbert.hpp"
#include "pstqec/chain.hpp"
#include "pstqec/error.hpp"

using namespace pstqec;

TEST_SUITE("chain") {
  TEST_CASE("standard chain parameters") {
    ChainSpec s = standard_chain(6, 2.0);
    CHECK(s.couplings.size() == 5);
    CHECK(s.couplings[0] == doctest::Approx(2.0 * std::sqrt(5.0)));
    CHECK(s.t0 == doctest::Approx(std::acos(-1.0) / 4));
    CHECK_THROWS_AS(standard_chain(1), PreconditionError);
    CHECK(check_spectral_symmetry(s));
  }

  TEST_CASE("perfect transfer") {
    for (std::size_t n = 2; n <= 24; ++n) CHECK(pst_deviation(standard_chain(n)) < 1e-10);
    ChainSpec s = standard_chain(8);
    s.t0 *= 0.9;
    CHECK(pst_fidelity(s) < 0.99);
  }

  TEST_CASE("single-excitation propagator against the full space") {
    ChainSpec s = standard_chain(4);
    oracle::Mat u = oracle::unitary(oracle::hamiltonian(s), 0.37);
    Eigen::MatrixXcd u1 = propagator(s, 0.37);
    // |n> is the state with only qubit n excited; the vacuum energy is subtracted
    const std::complex<double> vac = u(0, 0);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) CHECK(std::abs(u(1 << a, 1 << b) / vac - u1(a, b)) < 1e-12);
  }

  TEST_CASE("majorana propagators against the full space") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ud(0.0, 3.0);
    for (std::size_t n : {2u, 3u, 4u, 5u}) {
      ChainSpec s = standard_chain(n);
      s.fields.assign(n, 0.0);
      s.fields[0] = 0.4;
      const double t = ud(rng);
      oracle::Mat u = oracle::unitary(oracle::hamiltonian(s), t);
      MajoranaPropagator heis = majorana_propagator(s, t), fwd = transfer_map(s, t);
      for (std::size_t a = 0; a < 2 * n; ++a) {
        oracle::Mat ca = oracle::majorana(n, a);
        oracle::Mat h = u.adjoint() * ca * u, f = u * ca * u.adjoint();
        oracle::Mat hs = oracle::Mat::Zero(h.rows(), h.cols()), fs = hs;
        for (std::size_t b = 0; b < 2 * n; ++b) {
          hs += heis.o(Eigen::Index(b), Eigen::Index(a)) * oracle::majorana(n, b);
          fs += fwd.o(Eigen::Index(b), Eigen::Index(a)) * oracle::majorana(n, b);
        }
        CHECK((h - hs).norm() < 1e-10);
        CHECK((f - fs).norm() < 1e-10);
      }
    }
  }

  TEST_CASE("parity blocks") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> ud(0.0, 5.0);
    for (std::size_t n = 4; n <= 20; n += 2)
      CHECK(parity_block_check(majorana_propagator(standard_chain(n), ud(rng))) < 1e-12);
    ChainSpec s = standard_chain(8);
    s.fields[0] = s.lambda;
    CHECK(parity_block_check(majorana_propagator(s, s.t0)) > 0.1);
    CHECK(is_odd_parity_index(4, 0));
    CHECK_FALSE(is_odd_parity_index(4, 4));
    CHECK(is_odd_parity_index(4, 5));
  }

  TEST_CASE("chain files") {
    ChainSpec s = parse_chain_text("# a chain\nN 4\nlambda 1\nJ 1 1.5 1\nB 0 0 0 0\n");
    CHECK(s.n == 4);
    CHECK(s.couplings[1] == 1.5);
    CHECK_THROWS_AS(parse_chain_text("N 4\nJ 1 1\n"), MalformedInput);
    CHECK_THROWS_AS(parse_chain_text("lambda 1\n"), MalformedInput);
  }
}
