#pragma once

#include <random>

#include "hilbert.hpp"
#include "pstqec/pauli.hpp"

namespace oracle {

inline Mat pauli_matrix(std::size_t n, const pstqec::Pauli& p) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  Mat m = Mat::Identity(dim, dim);
  for (std::size_t k = 0; k < n; ++k)
    if ((p.z >> k) & 1) m = site_op(n, k, 'Z') * m;
  for (std::size_t k = 0; k < n; ++k)
    if ((p.x >> k) & 1) m = site_op(n, k, 'X') * m;
  static const cplx ph[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  return ph[p.phase & 3] * m;
}

inline Eigen::VectorXcd random_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(Eigen::Index(1) << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(g(rng), g(rng));
  return v.normalized();
}

inline pstqec::Pauli random_pauli(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> d(0, (std::uint64_t{1} << n) - 1);
  std::uniform_int_distribution<int> ph(0, 3);
  return {d(rng), d(rng), ph(rng)};
}

}  // namespace oracle
