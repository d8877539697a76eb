#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pstqec {

// Packed vector over GF(2). Bits beyond size() are always zero.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  static BitVec from_string(std::string_view bits);
  static BitVec from_mask(std::uint64_t mask, std::size_t n);

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v) {
    std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVec& operator^=(const BitVec& o);
  friend BitVec operator^(BitVec a, const BitVec& b) { a ^= b; return a; }
  bool operator==(const BitVec& o) const = default;
  bool operator<(const BitVec& o) const;

  std::size_t weight() const;
  bool any() const;
  bool dot(const BitVec& o) const;
  // Low 64 bits; callers check size() <= 64 when that matters.
  std::uint64_t mask() const { return words_.empty() ? 0 : words_[0]; }
  std::string to_string() const;

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

class BinMatrix {
 public:
  BinMatrix() = default;
  BinMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {}

  static BinMatrix identity(std::size_t n);
  static BinMatrix from_rows(const std::vector<std::string>& rows);
  static BinMatrix from_bitvecs(std::vector<BitVec> rows, std::size_t cols);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v) { rows_[r].set(c, v); }

  const BitVec& row(std::size_t r) const { return rows_[r]; }
  BitVec& row(std::size_t r) { return rows_[r]; }
  BitVec column(std::size_t c) const;
  void append_row(BitVec v);

  BinMatrix transpose() const;
  BinMatrix operator*(const BinMatrix& o) const;
  BitVec apply(const BitVec& v) const;  // A v
  bool operator==(const BinMatrix& o) const = default;
  bool is_zero() const;

  BinMatrix select_columns(const std::vector<std::size_t>& cols) const;
  static BinMatrix vstack(const BinMatrix& a, const BinMatrix& b);
  static BinMatrix hstack(const BinMatrix& a, const BinMatrix& b);

  std::string to_text() const;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVec> rows_;
};

struct RrefResult {
  BinMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

RrefResult rref(const BinMatrix& a);
std::size_t rank(const BinMatrix& a);
BinMatrix nullspace(const BinMatrix& a);
// Basis of the row space (the nonzero rows of the reduced form).
BinMatrix row_basis(const BinMatrix& a);
bool is_invertible(const BinMatrix& a);
BinMatrix inverse(const BinMatrix& a);

// Reusable membership test for one row space.
class RowSpace {
 public:
  explicit RowSpace(const BinMatrix& a);
  bool contains(const BitVec& v) const;
  // Reduces v by the basis; zero iff v is in the space.
  BitVec reduce(BitVec v) const;
  std::size_t dimension() const { return basis_.rows(); }

 private:
  BinMatrix basis_;
  std::vector<std::size_t> pivots_;
};

std::size_t min_weight(const BinMatrix& g);
bool cols_independent_up_to(const BinMatrix& a, std::size_t w);
// Size of the smallest nonempty dependent column subset, or 0 if none has size <= limit.
std::size_t smallest_dependent_columns(const BinMatrix& a, std::size_t limit);
// Minimum distance of the code spanned by the rows of g, taking whichever exact route is
// cheaper: codeword enumeration or the dependent-column search on the dual.
std::size_t code_distance(const BinMatrix& g);

// Whitespace-separated 0/1 tokens per line, '#' starts a comment. Lines holding only
// '-' characters are reported through `rule_row` (index of the first row after it).
BinMatrix parse_matrix(std::string_view text, std::size_t* rule_row = nullptr);

}  // namespace pstqec
