#include "doctest.h"
#include "pstqec/error.hpp"
#include "pstqec/impossibility.hpp"

using namespace pstqec;

TEST_SUITE("impossibility") {
  TEST_CASE("reflection operator") {
    auto r2 = compute_R(standard_chain(2));
    CHECK(r2.max_diagonal < 1e-12);
    auto r = compute_R(standard_chain(12));
    CHECK(r.max_diagonal < 1e-10);
    CHECK(r.min_antidiagonal > 1e-8);
    CHECK(r.checkerboard < 1e-10);
    CHECK(r.involution_residual < 1e-10);
    CHECK(r.min_antidiagonal == doctest::Approx(0.02734375).epsilon(1e-9));
    CHECK_THROWS_AS(compute_R(standard_chain(7)), PreconditionError);
    ChainSpec off = standard_chain(6);
    off.t0 *= 0.8;
    CHECK_THROWS_AS(compute_R(off), PreconditionError);
  }

  TEST_CASE("return modes") {
    auto r = compute_R(standard_chain(12));
    auto full = compute_W(r, 12);
    for (Eigen::Index i = 0; i < 12; ++i) CHECK(full.singular(i) == doctest::Approx(1.0).epsilon(1e-10));
    double prev = 0;
    for (std::size_t m = 1; m <= 12; ++m) {
      auto w = compute_W(r, m);
      CHECK(w.max_sigma >= prev - 1e-12);
      CHECK(w.singular.maxCoeff() <= 1 + 1e-10);
      prev = w.max_sigma;
      if (m <= 6) {
        CHECK(w.max_sigma < 1.0);
        CHECK(w.gap > 0);
      }
    }
    auto w6 = compute_W(r, 6);
    CHECK(w6.gap == doctest::Approx(4.80879199930763e-7).epsilon(1e-6));
    CHECK(w6.unit_count() == 0);
    CHECK(compute_W(r, 7).unit_count() >= 2);
    CHECK_THROWS_AS(compute_W(r, 13), PreconditionError);
  }

  TEST_CASE("disc rows") {
    auto r = compute_R(standard_chain(12));
    for (auto& row : disc_bound_report(r, 6)) {
      CHECK(row.ok);
      CHECK(std::abs(row.diagonal) < 1e-10);
      CHECK(row.row_sum + row.excluded == doctest::Approx(1.0).epsilon(1e-10));
    }
    auto small = disc_bound_report(compute_R(standard_chain(2)), 1);
    REQUIRE(small.size() == 1);
    CHECK(small[0].row_sum < 1);
    CHECK_THROWS_AS(disc_bound_report(r, 7), PreconditionError);
  }

  TEST_CASE("antidiagonal identity") {
    auto a4 = verify_antidiag_formula(standard_chain(4));
    CHECK(a4.max_relative_deviation < 1e-10);
    auto a12 = verify_antidiag_formula(standard_chain(12));
    CHECK(a12.max_relative_deviation < 1e-9);
    CHECK(a12.symmetry_residual < 1e-10);
    CHECK(a12.recurrence_residual < 1e-10);
    CHECK(a12.sign_mismatches == 6);
  }

  TEST_CASE("repetition code") {
    ChainSpec s = standard_chain(21);
    SectorEvolver ev(s);
    CHECK(repetition_experiment(21, 1, 0, 0.0, &ev).error_probability < 1e-8);
    auto r1 = repetition_experiment(21, 1, 11, s.t0 / 2, &ev);
    CHECK(r1.error_probability == doctest::Approx(0.85).epsilon(0.05 / 0.85));
    CHECK(r1.error_probability == doctest::Approx(0.854848).epsilon(1e-5));
    auto r3 = repetition_experiment(21, 3, 11, s.t0 / 2, &ev);
    CHECK(r3.error_probability == doctest::Approx(0.0710097).epsilon(1e-5));
    CHECK(r3.error_probability < r1.error_probability);
    CHECK(r1.six_state_infidelity == doctest::Approx(0.5052).epsilon(1e-3));
    CHECK_THROWS_AS(repetition_experiment(21, 2, 11, 0.1), PreconditionError);
  }

  TEST_CASE("distinguishability above the threshold") {
    CHECK(trivial_distinguishability_check(standard_chain(12), 7).passed);
    CHECK_THROWS_AS(trivial_distinguishability_check(standard_chain(12), 6), PreconditionError);
  }
}

// reference values this model does not reproduce
TEST_SUITE("published_values") {
  TEST_CASE("five-qubit repetition code") {
    auto r5 = repetition_experiment(21, 5, 11, standard_chain(21).t0 / 2);
    CHECK(r5.error_probability <= 1e-4);
  }

  TEST_CASE("distinguishability at N=8") {
    auto d = trivial_distinguishability_check(standard_chain(8), 5);
    CHECK(d.passed);
  }
}
