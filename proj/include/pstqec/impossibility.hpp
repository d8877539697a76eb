#pragma once

#include <array>
#include <vector>

#include "pstqec/chain.hpp"
#include "pstqec/sector.hpp"

namespace pstqec {

// R = e^{i h1 t0/2} D e^{-i h1 t0/2}, D = diag(-1 x N/2, +1 x N/2)
struct ReflectionOperator {
  std::size_t n = 0;
  Eigen::MatrixXcd r;
  double hermitian_residual = 0.0;
  double involution_residual = 0.0;
  double max_diagonal = 0.0;       // max |R_nn|
  double min_antidiagonal = 0.0;   // min |R_{n,N+1-n}|
  double checkerboard = 0.0;       // max |R_nm| over n = m mod 2
};

ReflectionOperator compute_R(const ChainSpec& spec, double tol = 1e-10);

struct ReturnModes {
  std::size_t m = 0;
  Eigen::MatrixXcd w;
  Eigen::VectorXd singular;  // descending
  Eigen::MatrixXcd modes;    // column i belongs to singular[i]
  Eigen::VectorXd defect;    // 1 - singular[i], evaluated without cancellation
  double max_sigma = 0.0;
  double gap = 0.0;          // min defect
  std::size_t unit_count(double tol = 1e-8) const;
};

ReturnModes compute_W(const ReflectionOperator& r, std::size_t m);

struct DiscRow {
  std::size_t row = 0;  // 1-based
  std::complex<double> diagonal;
  double row_sum = 0.0;       // sum_{j <= M} |w_ij|^2
  double excluded = 0.0;      // sum_{j > M} |R_ij|^2
  double antidiagonal = 0.0;  // |R_{i,N+1-i}|^2
  bool ok = false;
};

std::vector<DiscRow> disc_bound_report(const ReflectionOperator& r, std::size_t m, double tol = 1e-10);

struct AntidiagReport {
  double max_relative_deviation = 0.0;  // on magnitudes
  std::size_t sign_mismatches = 0;
  double recurrence_residual = 0.0;
  double symmetry_residual = 0.0;
  std::vector<double> lhs, rhs;
};

AntidiagReport verify_antidiag_formula(const ChainSpec& spec);

struct RepetitionResult {
  std::size_t rep = 0;
  double error_probability = 0.0;  // worst logical bit-flip probability after majority vote
  std::array<double, 2> flip_probability{};
  double six_state_infidelity = 0.0;
};

// err_site is 1-based; err_site = 0 inserts no error.
RepetitionResult repetition_experiment(std::size_t n, std::size_t rep, std::size_t err_site, double t_err,
                                       const SectorEvolver* ev = nullptr);

struct DistinguishabilityReport {
  bool passed = false;
  std::size_t max_count_first = 0;   // over outcomes with non-zero probability
  std::size_t min_count_second = 0;
  std::vector<double> first, second;  // excitation-count distributions on the decoding region
};

DistinguishabilityReport trivial_distinguishability_check(const ChainSpec& spec, std::size_t m);

}  // namespace pstqec
