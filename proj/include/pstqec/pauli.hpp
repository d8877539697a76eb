#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>

#include "pstqec/gf2.hpp"

namespace pstqec {

// i^phase * X^x * Z^z on at most 64 qubits; qubit j is bit j.
struct Pauli {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  int phase = 0;

  static Pauli identity() { return {}; }
  // Hermitian operator with the given support and overall sign.
  static Pauli hermitian(std::uint64_t x, std::uint64_t z, bool negative = false);
  static Pauli from_symplectic(const BitVec& zx, bool negative = false);

  bool is_hermitian() const;
  // -1 or +1 for Hermitian operators (relative to the canonical i^{x.z} X^x Z^z form).
  int sign() const;
  BitVec symplectic(std::size_t n) const;
  std::size_t weight() const;

  Pauli operator*(const Pauli& o) const;
  Pauli& operator*=(const Pauli& o) { return *this = *this * o; }
  Pauli negated() const { return {x, z, (phase + 2) & 3}; }
  bool operator==(const Pauli& o) const { return x == o.x && z == o.z && ((phase - o.phase) & 3) == 0; }

  // Image of the computational basis state b: returns (b', amplitude).
  std::pair<std::uint64_t, std::complex<double>> act(std::uint64_t b) const;

  Pauli shifted(int offset) const;
  std::string to_string(std::size_t n) const;
};

bool commutes(const Pauli& a, const Pauli& b);
std::complex<double> phase_value(int phase);

// Majorana operator on n qubits with the Jordan-Wigner string to the left:
// index j < n is X-type at qubit j, index n + j is Y-type at qubit j.
Pauli majorana(std::size_t n, std::size_t index);
// Ordered product of the Majoranas marked in v (ascending index).
Pauli majorana_product(std::size_t n, const BitVec& v);

// Writes a Pauli on n qubits as i^phase times an ascending Majorana product.
struct MajoranaForm {
  BitVec support;
  int phase = 0;
};
MajoranaForm to_majoranas(std::size_t n, const Pauli& p);

}  // namespace pstqec
