#include "pstqec/gf2.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "pstqec/error.hpp"

namespace pstqec {

BitVec BitVec::from_string(std::string_view bits) {
  BitVec v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') v.set(i, true);
    else if (bits[i] != '0') throw MalformedInput("bit string contains '" + std::string(1, bits[i]) + "'");
  }
  return v;
}

BitVec BitVec::from_mask(std::uint64_t mask, std::size_t n) {
  BitVec v(n);
  if (n > 0) v.words_[0] = n >= 64 ? mask : mask & ((std::uint64_t{1} << n) - 1);
  return v;
}

BitVec& BitVec::operator^=(const BitVec& o) {
  if (o.n_ != n_) throw MalformedInput("bit vector length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

bool BitVec::operator<(const BitVec& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  return words_ < o.words_;
}

std::size_t BitVec::weight() const {
  std::size_t w = 0;
  for (auto x : words_) w += std::popcount(x);
  return w;
}

bool BitVec::any() const {
  return std::any_of(words_.begin(), words_.end(), [](auto x) { return x != 0; });
}

bool BitVec::dot(const BitVec& o) const {
  if (o.n_ != n_) throw MalformedInput("bit vector length mismatch");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & o.words_[i];
  return std::popcount(acc) & 1;
}

std::string BitVec::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) if (get(i)) s[i] = '1';
  return s;
}

BinMatrix BinMatrix::identity(std::size_t n) {
  BinMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BinMatrix BinMatrix::from_rows(const std::vector<std::string>& rows) {
  BinMatrix m;
  if (rows.empty()) return m;
  m.cols_ = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != m.cols_) throw MalformedInput("ragged matrix rows");
    m.rows_.push_back(BitVec::from_string(r));
  }
  return m;
}

BinMatrix BinMatrix::from_bitvecs(std::vector<BitVec> rows, std::size_t cols) {
  BinMatrix m;
  m.cols_ = cols;
  for (auto& r : rows) {
    if (r.size() != cols) throw MalformedInput("row length does not match column count");
  }
  m.rows_ = std::move(rows);
  return m;
}

BitVec BinMatrix::column(std::size_t c) const {
  BitVec v(rows());
  for (std::size_t r = 0; r < rows(); ++r) v.set(r, get(r, c));
  return v;
}

void BinMatrix::append_row(BitVec v) {
  if (rows_.empty() && cols_ == 0) cols_ = v.size();
  if (v.size() != cols_) throw MalformedInput("row length does not match column count");
  rows_.push_back(std::move(v));
}

BinMatrix BinMatrix::transpose() const {
  BinMatrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r, true);
  return t;
}

BinMatrix BinMatrix::operator*(const BinMatrix& o) const {
  if (cols_ != o.rows()) throw MalformedInput("matrix dimension mismatch in product");
  BinMatrix p(rows(), o.cols());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t k = 0; k < cols_; ++k)
      if (get(r, k)) p.rows_[r] ^= o.rows_[k];
  return p;
}

BitVec BinMatrix::apply(const BitVec& v) const {
  if (v.size() != cols_) throw MalformedInput("vector length mismatch in product");
  BitVec out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out.set(r, rows_[r].dot(v));
  return out;
}

bool BinMatrix::is_zero() const {
  return std::none_of(rows_.begin(), rows_.end(), [](const BitVec& r) { return r.any(); });
}

BinMatrix BinMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  BinMatrix s(rows(), cols.size());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) s.set(r, j, get(r, cols[j]));
  return s;
}

BinMatrix BinMatrix::vstack(const BinMatrix& a, const BinMatrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw MalformedInput("vstack column mismatch");
  BinMatrix m = a;
  for (const auto& r : b.rows_) m.rows_.push_back(r);
  return m;
}

BinMatrix BinMatrix::hstack(const BinMatrix& a, const BinMatrix& b) {
  if (a.rows() != b.rows()) throw MalformedInput("hstack row mismatch");
  BinMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) m.set(r, c, a.get(r, c));
    for (std::size_t c = 0; c < b.cols(); ++c) m.set(r, a.cols() + c, b.get(r, c));
  }
  return m;
}

std::string BinMatrix::to_text() const {
  std::ostringstream os;
  for (const auto& r : rows_) {
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (r.get(c) ? '1' : '0');
    os << '\n';
  }
  return os.str();
}

RrefResult rref(const BinMatrix& a) {
  RrefResult out{a, 0, {}};
  BinMatrix& m = out.reduced;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t p = lead;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    std::swap(m.row(p), m.row(lead));
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (r != lead && m.get(r, c)) m.row(r) ^= m.row(lead);
    out.pivots.push_back(c);
    ++lead;
  }
  out.rank = lead;
  return out;
}

std::size_t rank(const BinMatrix& a) { return rref(a).rank; }

BinMatrix row_basis(const BinMatrix& a) {
  auto r = rref(a);
  BinMatrix b(0, a.cols());
  for (std::size_t i = 0; i < r.rank; ++i) b.append_row(r.reduced.row(i));
  return b;
}

BinMatrix nullspace(const BinMatrix& a) {
  auto r = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  BinMatrix basis(0, a.cols());
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVec v(a.cols());
    v.set(f, true);
    for (std::size_t i = 0; i < r.rank; ++i)
      if (r.reduced.get(i, f)) v.set(r.pivots[i], true);
    basis.append_row(std::move(v));
  }
  return basis;
}

bool is_invertible(const BinMatrix& a) {
  return a.rows() == a.cols() && rank(a) == a.rows();
}

BinMatrix inverse(const BinMatrix& a) {
  if (a.rows() != a.cols()) throw MalformedInput("inverse of a non-square matrix");
  auto r = rref(BinMatrix::hstack(a, BinMatrix::identity(a.rows())));
  if (r.rank < a.rows() || (a.rows() > 0 && r.pivots[a.rows() - 1] >= a.cols()))
    throw NumericalError("matrix is singular over GF(2)");
  std::vector<std::size_t> right(a.cols());
  for (std::size_t i = 0; i < a.cols(); ++i) right[i] = a.cols() + i;
  return r.reduced.select_columns(right);
}

RowSpace::RowSpace(const BinMatrix& a) {
  auto r = rref(a);
  basis_ = BinMatrix(0, a.cols());
  for (std::size_t i = 0; i < r.rank; ++i) basis_.append_row(r.reduced.row(i));
  pivots_ = r.pivots;
}

BitVec RowSpace::reduce(BitVec v) const {
  for (std::size_t i = 0; i < pivots_.size(); ++i)
    if (v.get(pivots_[i])) v ^= basis_.row(i);
  return v;
}

bool RowSpace::contains(const BitVec& v) const { return !reduce(v).any(); }

namespace {

constexpr std::size_t kMaxEnumerationRows = 30;

// Gray-code walk over all nonzero combinations of the basis rows.
std::size_t gray_min_weight(const BinMatrix& basis) {
  const std::size_t k = basis.rows();
  BitVec cur(basis.cols());
  std::size_t best = basis.cols() + 1;
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t i = 1; i < total; ++i) {
    cur ^= basis.row(static_cast<std::size_t>(std::countr_zero(i)));
    best = std::min(best, cur.weight());
  }
  return best;
}

std::size_t gray_min_weight_small(const BinMatrix& basis) {
  const std::size_t k = basis.rows();
  std::vector<std::uint64_t> rows(k);
  for (std::size_t i = 0; i < k; ++i) rows[i] = basis.row(i).mask();
  std::uint64_t cur = 0;
  int best = 65;
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t i = 1; i < total; ++i) {
    cur ^= rows[std::countr_zero(i)];
    best = std::min(best, std::popcount(cur));
  }
  return static_cast<std::size_t>(best);
}

}  // namespace

std::size_t min_weight(const BinMatrix& g) {
  BinMatrix basis = row_basis(g);
  if (basis.rows() == 0) throw MalformedInput("min_weight of the zero code");
  if (basis.rows() > kMaxEnumerationRows)
    throw CapacityError("min_weight: " + std::to_string(basis.rows()) +
                        " independent rows exceed the enumeration limit of " +
                        std::to_string(kMaxEnumerationRows));
  return g.cols() <= 64 ? gray_min_weight_small(basis) : gray_min_weight(basis);
}

namespace {

struct DependentSearch {
  std::vector<BitVec> cols;
  std::size_t target = 0;

  bool dfs(std::size_t start, std::size_t depth, const BitVec& acc) {
    for (std::size_t j = start; j < cols.size(); ++j) {
      BitVec next = acc ^ cols[j];
      if (depth + 1 == target) {
        if (!next.any()) return true;
      } else if (cols.size() - j - 1 >= target - depth - 1 && dfs(j + 1, depth + 1, next)) {
        return true;
      }
    }
    return false;
  }
};

struct DependentSearchSmall {
  std::vector<std::uint64_t> cols;
  std::size_t target = 0;

  bool dfs(std::size_t start, std::size_t depth, std::uint64_t acc) {
    const std::size_t n = cols.size();
    for (std::size_t j = start; j + (target - depth - 1) < n; ++j) {
      std::uint64_t next = acc ^ cols[j];
      if (depth + 1 == target) {
        if (next == 0) return true;
      } else if (dfs(j + 1, depth + 1, next)) {
        return true;
      }
    }
    return false;
  }
};

}  // namespace

std::size_t smallest_dependent_columns(const BinMatrix& a, std::size_t limit) {
  limit = std::min(limit, a.cols());
  if (a.rows() <= 64) {
    DependentSearchSmall s;
    for (std::size_t c = 0; c < a.cols(); ++c) s.cols.push_back(a.column(c).mask());
    for (std::size_t w = 1; w <= limit; ++w) {
      s.target = w;
      if (s.dfs(0, 0, 0)) return w;
    }
    return 0;
  }
  DependentSearch s;
  for (std::size_t c = 0; c < a.cols(); ++c) s.cols.push_back(a.column(c));
  for (std::size_t w = 1; w <= limit; ++w) {
    s.target = w;
    if (s.dfs(0, 0, BitVec(a.rows()))) return w;
  }
  return 0;
}

bool cols_independent_up_to(const BinMatrix& a, std::size_t w) {
  if (w > a.cols()) throw MalformedInput("cols_independent_up_to: w exceeds column count");
  return smallest_dependent_columns(a, w) == 0;
}

std::size_t code_distance(const BinMatrix& g) {
  BinMatrix basis = row_basis(g);
  const std::size_t k = basis.rows();
  if (k == 0) throw MalformedInput("distance of the zero code");
  if (k <= 20 || k <= g.cols() - k) return min_weight(basis);
  // The dual has few rows: a codeword of weight w is a dependent set of w columns of
  // the parity check, so the first dependency size is the distance.
  BinMatrix check = nullspace(basis);
  std::size_t d = smallest_dependent_columns(check, g.cols());
  return d == 0 ? g.cols() + 1 : d;
}

BinMatrix parse_matrix(std::string_view text, std::size_t* rule_row) {
  BinMatrix m;
  std::size_t cols = 0;
  bool have_cols = false;
  if (rule_row) *rule_row = static_cast<std::size_t>(-1);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<bool> bits;
    bool rule = false, other = false;
    for (char ch : line) {
      if (ch == '0' || ch == '1') bits.push_back(ch == '1');
      else if (ch == '-') rule = true;
      else if (ch != ' ' && ch != '\t' && ch != '\r') other = true;
    }
    if (other || (rule && !bits.empty()))
      throw MalformedInput("line " + std::to_string(line_no) + ": unexpected token in matrix text");
    if (rule) {
      if (rule_row) *rule_row = m.rows();
      continue;
    }
    if (bits.empty()) continue;
    if (!have_cols) {
      cols = bits.size();
      have_cols = true;
    } else if (bits.size() != cols) {
      throw MalformedInput("line " + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                           " entries, found " + std::to_string(bits.size()));
    }
    BitVec v(cols);
    for (std::size_t i = 0; i < cols; ++i) v.set(i, bits[i]);
    m.append_row(std::move(v));
    if (pos > text.size()) break;
  }
  return m;
}

}  // namespace pstqec
