#include "pstqec/pauli.hpp"

#include <bit>

#include "pstqec/error.hpp"

namespace pstqec {

namespace {

int parity(std::uint64_t v) { return std::popcount(v) & 1; }

std::uint64_t low_mask(std::size_t n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

}  // namespace

Pauli Pauli::hermitian(std::uint64_t x, std::uint64_t z, bool negative) {
  return {x, z, (std::popcount(x & z) + (negative ? 2 : 0)) & 3};
}

Pauli Pauli::from_symplectic(const BitVec& zx, bool negative) {
  if (zx.size() % 2 != 0) throw MalformedInput("symplectic vector has odd length");
  const std::size_t n = zx.size() / 2;
  if (n > 64) throw CapacityError("Pauli strings are limited to 64 qubits");
  std::uint64_t x = 0, z = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (zx.get(j)) z |= std::uint64_t{1} << j;
    if (zx.get(n + j)) x |= std::uint64_t{1} << j;
  }
  return hermitian(x, z, negative);
}

bool Pauli::is_hermitian() const { return ((phase - std::popcount(x & z)) & 1) == 0; }

int Pauli::sign() const {
  if (!is_hermitian()) throw MalformedInput("sign() of a non-Hermitian Pauli");
  return ((phase - std::popcount(x & z)) & 3) == 0 ? 1 : -1;
}

BitVec Pauli::symplectic(std::size_t n) const {
  BitVec v(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    if ((z >> j) & 1) v.set(j, true);
    if ((x >> j) & 1) v.set(n + j, true);
  }
  return v;
}

std::size_t Pauli::weight() const { return std::popcount(x | z); }

Pauli Pauli::operator*(const Pauli& o) const {
  // (X^a Z^b)(X^c Z^d) = (-1)^{b.c} X^{a+c} Z^{b+d}
  return {x ^ o.x, z ^ o.z, (phase + o.phase + 2 * std::popcount(z & o.x)) & 3};
}

std::pair<std::uint64_t, std::complex<double>> Pauli::act(std::uint64_t b) const {
  int ph = phase + 2 * parity(z & b);
  return {b ^ x, phase_value(ph)};
}

Pauli Pauli::shifted(int offset) const {
  if (offset >= 0) return {x << offset, z << offset, phase};
  return {x >> -offset, z >> -offset, phase};
}

std::string Pauli::to_string(std::size_t n) const {
  std::string s;
  Pauli h = *this;
  if (is_hermitian()) {
    s += sign() > 0 ? '+' : '-';
  } else {
    s += "i";
    h.phase = (h.phase + 3) & 3;
    s += h.sign() > 0 ? '+' : '-';
  }
  for (std::size_t j = 0; j < n; ++j) {
    bool bx = (x >> j) & 1, bz = (z >> j) & 1;
    s += bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
  }
  return s;
}

bool commutes(const Pauli& a, const Pauli& b) {
  return parity((a.x & b.z) ^ (a.z & b.x)) == 0;
}

std::complex<double> phase_value(int phase) {
  switch (phase & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

Pauli majorana(std::size_t n, std::size_t index) {
  if (n > 64) throw CapacityError("Majorana operators are limited to 64 qubits");
  if (index >= 2 * n) throw MalformedInput("Majorana index out of range");
  const std::size_t j = index % n;
  const std::uint64_t bit = std::uint64_t{1} << j;
  const std::uint64_t below = low_mask(j);
  if (index < n) return {bit, below, 0};
  return {bit, below | bit, 1};
}

Pauli majorana_product(std::size_t n, const BitVec& v) {
  if (v.size() != 2 * n) throw MalformedInput("Majorana vector length must be 2n");
  Pauli p;
  for (std::size_t i = 0; i < 2 * n; ++i)
    if (v.get(i)) p *= majorana(n, i);
  return p;
}

MajoranaForm to_majoranas(std::size_t n, const Pauli& p) {
  // Site by site from the right: the Majoranas at qubit j fix the x bit and the
  // z bit once the string contributions of higher sites are known.
  BitVec support(2 * n);
  std::uint64_t z_needed = p.z;
  for (std::size_t jj = n; jj-- > 0;) {
    const bool bx = (p.x >> jj) & 1;
    const bool bz = (z_needed >> jj) & 1;
    // Only the Y-type Majorana carries a z bit at its own site.
    const bool b = bz;
    const bool a = bx != b;
    if (a) { support.set(jj, true); z_needed ^= low_mask(jj); }
    if (b) { support.set(n + jj, true); z_needed ^= low_mask(jj + 1); }
  }
  Pauli q = majorana_product(n, support);
  if (q.x != p.x || q.z != p.z) throw NumericalError("Majorana decomposition failed");
  return {support, (p.phase - q.phase) & 3};
}

}  // namespace pstqec
