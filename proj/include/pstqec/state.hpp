#pragma once

#include <functional>
#include <map>
#include <set>
#include <utility>

#include "pstqec/pauli.hpp"
#include "pstqec/sector.hpp"

namespace pstqec {

// Pure state as one amplitude vector per occupied excitation sector.
class PureState {
 public:
  PureState() = default;
  explicit PureState(std::size_t n) : n_(n) {}

  static PureState from_dense(std::size_t n, const Eigen::VectorXcd& psi, double drop = 0.0);
  Eigen::VectorXcd to_dense() const;

  std::size_t n() const { return n_; }
  const std::map<std::size_t, Eigen::VectorXcd>& sectors() const { return sectors_; }
  std::map<std::size_t, Eigen::VectorXcd>& sectors() { return sectors_; }
  std::set<std::size_t> support() const;

  cplx amplitude(std::uint64_t x) const;
  void add(std::uint64_t x, cplx a);
  double norm() const;
  void scale(cplx s);
  PureState& operator+=(const PureState& o);

  PureState evolved(const SectorEvolver& ev, double t) const;
  PureState apply(const Pauli& p) const;
  void for_each(const std::function<void(std::uint64_t, cplx)>& fn) const;

 private:
  std::size_t n_ = 0;
  std::map<std::size_t, Eigen::VectorXcd> sectors_;
};

// Reduced matrix Tr_rest |a><b| on qubits [offset, offset+m).
Eigen::MatrixXcd reduce_cross(const PureState& a, const PureState& b, std::size_t offset, std::size_t m);

// Density operator stored as blocks between excitation sectors (a <= b only; the
// (b, a) block is the adjoint, so Hermiticity holds by construction).
class SectorState {
 public:
  SectorState() = default;
  explicit SectorState(std::size_t n) : n_(n) {}

  static SectorState from_pure(const PureState& psi);

  std::size_t n() const { return n_; }
  const std::map<std::pair<std::size_t, std::size_t>, Eigen::MatrixXcd>& blocks() const { return blocks_; }
  std::set<std::size_t> support() const;
  // Block (a, b) for any order; zero-sized if absent.
  Eigen::MatrixXcd block(std::size_t a, std::size_t b) const;
  bool has_block(std::size_t a, std::size_t b) const;

  double trace() const;
  double purity() const;
  Eigen::MatrixXcd to_dense() const;

  SectorState apply(const Pauli& p) const;  // P rho P^dagger
  // Exact noiseless conjugation by exp(-iHt).
  SectorState evolved(const SectorEvolver& ev, double t) const;
  // Dephasing over time t with the Hamiltonian switched off.
  SectorState dephased(double gamma, double t) const;

  // Reduced matrix on qubits [offset, offset+m) from the ordered block pairs accepted by
  // `keep` (all pairs when empty).
  Eigen::MatrixXcd reduce(std::size_t offset, std::size_t m,
                          const std::function<bool(std::size_t, std::size_t)>& keep = {}) const;

  std::map<std::pair<std::size_t, std::size_t>, Eigen::MatrixXcd>& mutable_blocks() { return blocks_; }

 private:
  std::size_t n_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, Eigen::MatrixXcd> blocks_;
};

// Strang-split Lindblad evolution: dephasing damping and Hamiltonian conjugation are each
// exact, composed as H(dt/2) D(dt) H(dt/2) per step.
SectorState evolve_dephasing(const SectorState& rho, const SectorEvolver& ev, double gamma, double t,
                             std::size_t steps);

}  // namespace pstqec
