#pragma once

// Brute-force references on the full 2^N space, written independently of the library's
// sector and Majorana machinery. Only the ChainSpec type is shared.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pstqec/chain.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat kron_site(std::size_t n, std::size_t site, const Mat& op) {
  // qubit `site` is bit `site` of the basis index
  const std::size_t dim = std::size_t{1} << n;
  Mat out = Mat::Zero(Eigen::Index(dim), Eigen::Index(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    const int bit = int((b >> site) & 1);
    for (int nb = 0; nb < 2; ++nb) {
      const cplx v = op(nb, bit);
      if (v == cplx(0.0)) continue;
      const std::size_t b2 = (b & ~(std::size_t{1} << site)) | (std::size_t(nb) << site);
      out(Eigen::Index(b2), Eigen::Index(b)) += v;
    }
  }
  return out;
}

inline Mat pauli_x() { Mat m(2, 2); m << 0, 1, 1, 0; return m; }
inline Mat pauli_y() { Mat m(2, 2); m << 0, cplx(0, -1), cplx(0, 1), 0; return m; }
inline Mat pauli_z() { Mat m(2, 2); m << 1, 0, 0, -1; return m; }

inline Mat site_op(std::size_t n, std::size_t site, char p) {
  return kron_site(n, site, p == 'X' ? pauli_x() : p == 'Y' ? pauli_y() : pauli_z());
}

// H = -1/2 sum B_k Z_k + 1/2 sum J_k (X_k X_{k+1} + Y_k Y_{k+1})
inline Mat hamiltonian(const pstqec::ChainSpec& s) {
  const Eigen::Index dim = Eigen::Index(1) << s.n;
  Mat h = Mat::Zero(dim, dim);
  for (std::size_t k = 0; k < s.n; ++k) h -= 0.5 * s.fields[k] * site_op(s.n, k, 'Z');
  for (std::size_t k = 0; k + 1 < s.n; ++k)
    h += 0.5 * s.couplings[k] *
         (site_op(s.n, k, 'X') * site_op(s.n, k + 1, 'X') + site_op(s.n, k, 'Y') * site_op(s.n, k + 1, 'Y'));
  return h;
}

inline Mat unitary(const Mat& h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Eigen::VectorXcd ph(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) ph(i) = std::polar(1.0, -es.eigenvalues()(i) * t);
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

// Jordan-Wigner Majoranas: c_j = Z_0..Z_{j-1} X_j, c_{n+j} = Z_0..Z_{j-1} Y_j
inline Mat majorana(std::size_t n, std::size_t idx) {
  const std::size_t j = idx % n;
  Mat m = site_op(n, j, idx < n ? 'X' : 'Y');
  for (std::size_t i = 0; i < j; ++i) m = site_op(n, i, 'Z') * m;
  return m;
}

// Dense Lindblad right-hand side with L_k = sqrt(gamma) Z_k.
inline Mat lindblad_rhs(const Mat& h, const std::vector<Mat>& zs, double gamma, const Mat& rho) {
  const cplx i(0, 1);
  Mat d = -i * (h * rho - rho * h);
  for (const auto& z : zs) d += gamma * (z * rho * z - rho);
  return d;
}

inline Mat lindblad_rk4(const pstqec::ChainSpec& s, double gamma, double t, std::size_t steps, Mat rho) {
  const Mat h = hamiltonian(s);
  std::vector<Mat> zs;
  for (std::size_t k = 0; k < s.n; ++k) zs.push_back(site_op(s.n, k, 'Z'));
  const double dt = t / double(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    Mat k1 = lindblad_rhs(h, zs, gamma, rho);
    Mat k2 = lindblad_rhs(h, zs, gamma, rho + 0.5 * dt * k1);
    Mat k3 = lindblad_rhs(h, zs, gamma, rho + 0.5 * dt * k2);
    Mat k4 = lindblad_rhs(h, zs, gamma, rho + dt * k3);
    rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

// Partial trace keeping qubits [offset, offset + m).
inline Mat reduce(const Mat& rho, std::size_t n, std::size_t offset, std::size_t m) {
  const std::size_t dim = std::size_t{1} << n, sub = std::size_t{1} << m;
  const std::size_t mask = (sub - 1) << offset;
  Mat out = Mat::Zero(Eigen::Index(sub), Eigen::Index(sub));
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      if ((a & ~mask) == (b & ~mask)) out(Eigen::Index((a & mask) >> offset), Eigen::Index((b & mask) >> offset)) += rho(Eigen::Index(a), Eigen::Index(b));
  return out;
}

}  // namespace oracle
