#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "pstqec/chain.hpp"

namespace pstqec {

using cplx = std::complex<double>;

std::uint64_t binomial(std::size_t n, std::size_t k);

// Weight-w bit strings of length n in increasing numeric order; the index of a
// string is its combinadic (colex) rank.
class SectorBasis {
 public:
  SectorBasis(std::size_t n, std::size_t w);

  std::size_t n() const { return n_; }
  std::size_t weight() const { return w_; }
  std::size_t size() const { return states_.size(); }
  std::uint64_t state(std::size_t i) const { return states_[i]; }
  const std::vector<std::uint64_t>& states() const { return states_; }
  std::size_t index_of(std::uint64_t x) const;

 private:
  std::size_t n_, w_;
  std::vector<std::uint64_t> states_;
};

// Process-wide cache of bases, safe to call from several threads.
const SectorBasis& shared_basis(std::size_t n, std::size_t w);

// H = -1/2 sum B_n Z_n + 1/2 sum J_n (X_n X_{n+1} + Y_n Y_{n+1}) restricted to a sector.
Eigen::SparseMatrix<double, Eigen::RowMajor> sector_hamiltonian(const ChainSpec& spec, const SectorBasis& basis);

// Propagators per excitation sector. Sectors up to `dense_limit` states are diagonalised
// once; larger ones are propagated with a Chebyshev expansion of the sparse Hamiltonian.
// Thread-safe: lazily built data is guarded.
class SectorEvolver {
 public:
  explicit SectorEvolver(ChainSpec spec, std::size_t dense_limit = 1800);

  const ChainSpec& spec() const { return spec_; }
  std::size_t n() const { return spec_.n; }
  const SectorBasis& basis(std::size_t w) const;
  bool is_dense(std::size_t w) const;

  // v <- exp(-iHt) v within sector w
  void apply(std::size_t w, double t, Eigen::VectorXcd& v) const;
  // exp(-iHt) on sector w as a dense matrix (dense sectors only)
  Eigen::MatrixXcd propagator(std::size_t w, double t) const;

 private:
  struct Sector {
    std::unique_ptr<SectorBasis> basis;
    bool dense = false;
    Eigen::VectorXd energies;
    Eigen::MatrixXd vectors;
    Eigen::SparseMatrix<double, Eigen::RowMajor> h;
    double emin = 0, emax = 0;
  };
  const Sector& sector(std::size_t w) const;
  void chebyshev(const Sector& s, double t, Eigen::VectorXcd& v) const;

  ChainSpec spec_;
  std::size_t dense_limit_;
  Eigen::VectorXd single_particle_;
  mutable std::mutex mutex_;
  mutable std::map<std::size_t, std::unique_ptr<Sector>> sectors_;
};

}  // namespace pstqec
