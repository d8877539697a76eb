#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace pstqec {

struct Tolerances {
  double physics = 1e-10;
  double algebra = 1e-12;
};

struct ChainSpec {
  std::size_t n = 0;
  std::vector<double> couplings;  // n-1 entries
  std::vector<double> fields;     // n entries
  double lambda = 1.0;
  double t0 = 0.0;
};

ChainSpec standard_chain(std::size_t n, double lambda = 1.0);
ChainSpec custom_chain(std::vector<double> couplings, std::vector<double> fields, double t0, double lambda = 1.0);
void validate(const ChainSpec& spec);

// "N 12", "lambda 1", optional "J ...", "B ..." and "t0 ..." lines; '#' comments.
ChainSpec parse_chain_text(std::string_view text);
ChainSpec load_chain_file(const std::string& path);

Eigen::MatrixXd h1_matrix(const ChainSpec& spec);

struct Spectrum {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
};
Spectrum spectrum(const ChainSpec& spec);

Eigen::MatrixXcd propagator(const ChainSpec& spec, double t);
Eigen::MatrixXcd propagator(const Spectrum& s, double t);

struct MajoranaPropagator {
  std::size_t n = 0;
  double t = 0.0;
  Eigen::MatrixXd o;  // 2n x 2n, column n holds the coefficients of c_n(t)
};

// Heisenberg picture: e^{iHt} c_n e^{-iHt} = sum_m O_mn c_m, O = exp(-t (iY) (x) h1).
MajoranaPropagator majorana_propagator(const ChainSpec& spec, double t);
// Conjugation the other way round, e^{-iHt} c_n e^{iHt}; this moves operators along
// with the state and is what the arrival frame uses.
MajoranaPropagator transfer_map(const ChainSpec& spec, double t);

double spectral_symmetry_residual(const ChainSpec& spec);
bool check_spectral_symmetry(const ChainSpec& spec, double tol = 1e-12);
bool is_odd_parity_index(std::size_t n, std::size_t index);
double parity_block_check(const MajoranaPropagator& o);

// min over n of |<N+1-n|U(t0)|n>|
double pst_fidelity(const ChainSpec& spec);
// max over n of ||<N+1-n|U(t0)|n>| - 1|
double pst_deviation(const ChainSpec& spec);

}  // namespace pstqec
