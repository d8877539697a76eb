#include "pstqec/codes.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "pstqec/error.hpp"

namespace pstqec {

namespace {

BitVec swap_halves(const BitVec& v) {
  const std::size_t n = v.size() / 2;
  BitVec s(v.size());
  for (std::size_t j = 0; j < n; ++j) {
    s.set(j, v.get(n + j));
    s.set(n + j, v.get(j));
  }
  return s;
}

bool symplectic_product(const BitVec& a, const BitVec& b) { return a.dot(swap_halves(b)); }

BitVec all_z(std::size_t m) {
  BitVec v(2 * m);
  for (std::size_t j = 0; j < m; ++j) v.set(j, true);
  return v;
}

BitVec all_x(std::size_t m) {
  BitVec v(2 * m);
  for (std::size_t j = 0; j < m; ++j) v.set(m + j, true);
  return v;
}

BitVec embed(const BitVec& part, std::size_t m, bool as_x) {
  BitVec v(2 * m);
  for (std::size_t j = 0; j < m; ++j)
    if (part.get(j)) v.set(as_x ? m + j : j, true);
  return v;
}

}  // namespace

Pauli StabilizerCode::generator(std::size_t i) const {
  return Pauli::from_symplectic(generators.row(i), generator_negative(i));
}

Pauli StabilizerCode::logical_z(std::size_t j) const {
  return Pauli::from_symplectic(logicals.at(j).z, logicals.at(j).z_negative);
}

Pauli StabilizerCode::logical_x(std::size_t j) const {
  return Pauli::from_symplectic(logicals.at(j).x, logicals.at(j).x_negative);
}

StabilizerCode CssCode::assemble() const {
  const std::size_t m = h1.cols();
  if (g2.rows() > 0 && g2.cols() != m) throw MalformedInput("H1 and G2 have different column counts");
  StabilizerCode code;
  code.m = m;
  code.generators = BinMatrix(0, 2 * m);
  BinMatrix zrows = row_basis(h1);
  BinMatrix xrows = g2.rows() > 0 ? row_basis(g2) : BinMatrix(0, m);
  for (std::size_t r = 0; r < zrows.rows(); ++r) code.generators.append_row(embed(zrows.row(r), m, false));
  for (std::size_t r = 0; r < xrows.rows(); ++r) code.generators.append_row(embed(xrows.row(r), m, true));
  attach_logicals(code);
  return code;
}

std::string to_string(ErrorMapKind k) { return k == ErrorMapKind::E ? "E" : "Eprime"; }

std::string to_string(CodeCase c) {
  switch (c) {
    case CodeCase::i: return "i";
    case CodeCase::ii: return "ii";
    default: return "iii";
  }
}

CodeCase parse_case(const std::string& s) {
  if (s == "i") return CodeCase::i;
  if (s == "ii") return CodeCase::ii;
  if (s == "iii") return CodeCase::iii;
  throw MalformedInput("unknown case '" + s + "' (expected i, ii or iii)");
}

BinMatrix symplectic_products(const BinMatrix& a, const BinMatrix& b) {
  if (a.cols() != b.cols() || a.cols() % 2 != 0)
    throw MalformedInput("symplectic product needs equal, even column counts");
  BinMatrix out(a.rows(), b.rows());
  std::vector<BitVec> swapped;
  swapped.reserve(b.rows());
  for (std::size_t j = 0; j < b.rows(); ++j) swapped.push_back(swap_halves(b.row(j)));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) out.set(i, j, a.row(i).dot(swapped[j]));
  return out;
}

bool is_valid_stabilizer(const BinMatrix& generators) {
  if (generators.cols() % 2 != 0)
    throw MalformedInput("stabilizer matrix has an odd number of columns (" + std::to_string(generators.cols()) + ")");
  if (!symplectic_products(generators, generators).is_zero()) return false;
  return rank(generators) == generators.rows();
}

ErrorMap build_error_map(std::size_t m, ErrorMapKind kind, std::vector<std::size_t> permutation) {
  if (permutation.empty()) {
    permutation.resize(2 * m);
    std::iota(permutation.begin(), permutation.end(), 0);
  }
  if (permutation.size() != 2 * m) throw MalformedInput("permutation must have 2M entries");
  {
    std::vector<bool> seen(2 * m, false);
    for (auto p : permutation) {
      if (p >= 2 * m || seen[p]) throw MalformedInput("invalid permutation");
      seen[p] = true;
    }
  }
  BinMatrix block(2 * m, 2 * m);
  // J^U: ones strictly above the diagonal.
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      const bool ju = r < c;
      const bool id = r == c;
      if (kind == ErrorMapKind::Eprime) {
        block.set(r, c, id);
        block.set(r, m + c, ju);
        block.set(m + r, m + c, id);
      } else {
        block.set(r, c, ju);
        block.set(r, m + c, ju || id);
        block.set(m + r, c, id);
        block.set(m + r, m + c, id);
      }
    }
  }
  ErrorMap em{m, kind, permutation, block.select_columns(permutation)};
  if (!is_invertible(em.matrix)) throw NumericalError("error map is singular");
  return em;
}

bool is_odd_parity_majorana(std::size_t m, std::size_t index) {
  const std::size_t site = index % m + 1;
  return index < m ? site % 2 == 1 : site % 2 == 0;
}

std::vector<std::size_t> parity_permutation(std::size_t m) {
  std::vector<std::size_t> odd, even;
  for (std::size_t i = 0; i < 2 * m; ++i) (is_odd_parity_majorana(m, i) ? odd : even).push_back(i);
  odd.insert(odd.end(), even.begin(), even.end());
  return odd;
}

BinMatrix syndrome_matrix(const StabilizerCode& code, const ErrorMap& em) {
  if (code.generators.rows() > 0 && code.generators.cols() != em.matrix.rows())
    throw MalformedInput("syndrome_matrix: code has " + std::to_string(code.generators.cols() / 2) +
                         " qubits, error map has " + std::to_string(em.m));
  if (code.generators.rows() == 0) return BinMatrix(0, em.matrix.cols());
  return symplectic_products(code.generators, em.matrix.transpose());
}

BitVec syndrome_of(const StabilizerCode& code, const BitVec& error) {
  BitVec s(code.generators.rows());
  const BitVec sw = swap_halves(error);
  for (std::size_t i = 0; i < code.generators.rows(); ++i) s.set(i, code.generators.row(i).dot(sw));
  return s;
}

std::size_t majorana_distance(const StabilizerCode& code, const ErrorMap& em,
                              const std::vector<std::size_t>& columns) {
  BinMatrix s = syndrome_matrix(code, em);
  if (!columns.empty()) s = s.select_columns(columns);
  const std::size_t d = smallest_dependent_columns(s, s.cols());
  return d == 0 ? s.cols() + 1 : d;
}

void attach_logicals(StabilizerCode& code) {
  const std::size_t m = code.m;
  code.logicals.clear();
  const std::size_t k = code.k();
  if (k == 0) return;

  // Normalizer: v with S Lambda v = 0.
  BinMatrix swapped(0, 2 * m);
  BinMatrix gz(0, m), gx(0, m);
  for (std::size_t r = 0; r < code.generators.rows(); ++r) {
    const BitVec& g = code.generators.row(r);
    swapped.append_row(swap_halves(g));
    BitVec zpart(m), xpart(m);
    for (std::size_t j = 0; j < m; ++j) {
      zpart.set(j, g.get(j));
      xpart.set(j, g.get(m + j));
    }
    gz.append_row(zpart);
    gx.append_row(xpart);
  }
  BinMatrix normal = code.generators.rows() ? nullspace(swapped) : BinMatrix::identity(2 * m);

  std::vector<BitVec> cand;
  auto in_normalizer = [&](const BitVec& v) {
    for (std::size_t r = 0; r < code.generators.rows(); ++r)
      if (symplectic_product(code.generators.row(r), v)) return false;
    return true;
  };
  if (in_normalizer(all_z(m))) cand.push_back(all_z(m));
  if (code.generators.rows()) {
    BinMatrix pz = nullspace(gx), px = nullspace(gz);
    for (std::size_t r = 0; r < pz.rows(); ++r) cand.push_back(embed(pz.row(r), m, false));
    if (in_normalizer(all_x(m))) cand.push_back(all_x(m));
    for (std::size_t r = 0; r < px.rows(); ++r) cand.push_back(embed(px.row(r), m, true));
  }
  for (std::size_t r = 0; r < normal.rows(); ++r) cand.push_back(normal.row(r));

  BinMatrix span = code.generators;
  while (code.logicals.size() < k) {
    RowSpace rs(span);
    std::size_t ia = cand.size();
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (!rs.contains(cand[i])) { ia = i; break; }
    }
    if (ia == cand.size()) throw NumericalError("could not complete a logical basis");
    BitVec a = cand[ia];
    std::size_t ib = cand.size();
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (symplectic_product(a, cand[i])) { ib = i; break; }
    }
    if (ib == cand.size()) throw NumericalError("logical operator without an anticommuting partner");
    BitVec b = cand[ib];
    for (auto& c : cand) {
      const bool cb = symplectic_product(c, b);
      const bool ca = symplectic_product(c, a);
      if (cb) c ^= a;
      if (ca) c ^= b;
    }
    code.logicals.push_back({a, b, false, false});
    span.append_row(a);
    span.append_row(b);
  }
}

CodeCase classify_case(const StabilizerCode& code) {
  const BitVec zall = all_z(code.m);
  if (code.generators.rows() > 0 && RowSpace(code.generators).contains(zall)) return CodeCase::iii;
  for (std::size_t r = 0; r < code.generators.rows(); ++r)
    if (symplectic_product(code.generators.row(r), zall)) return CodeCase::i;
  return CodeCase::ii;
}

bool perfect_check(std::size_t m, std::size_t k, std::size_t t) {
  using boost::multiprecision::cpp_int;
  if (k > m) return false;
  cpp_int sum = 0, binom = 1;
  for (std::size_t i = 0; i <= std::min(t, m); ++i) {
    if (i > 0) binom = binom * (m - i + 1) / i;
    sum += binom;
  }
  cpp_int lhs = cpp_int(1) << (m - k);
  return lhs == sum * sum;
}

DegeneracyResult distinguishable_or_degenerate(const StabilizerCode& code, const std::vector<BitVec>& errors) {
  DegeneracyResult res;
  res.errors = errors.size();
  RowSpace stab(code.generators.rows() ? code.generators : BinMatrix(0, 2 * code.m));
  std::map<BitVec, BitVec> first;
  for (const auto& e : errors) {
    BitVec s = syndrome_of(code, e);
    auto it = first.find(s);
    if (it == first.end()) {
      first.emplace(std::move(s), e);
      continue;
    }
    if (!stab.contains(it->second ^ e)) {
      ++res.conflicts;
      res.ok = false;
      if (!res.witness) res.witness = std::make_pair(it->second, e);
    }
  }
  return res;
}

std::vector<BitVec> correctable_errors(std::size_t m, CorrectableSet set) {
  std::vector<BitVec> majoranas;
  for (std::size_t i = 0; i < 2 * m; ++i) majoranas.push_back(majorana(m, i).symplectic(m));
  std::vector<BitVec> out{BitVec(2 * m)};
  if (set == CorrectableSet::TwoMajorana) {
    for (std::size_t i = 0; i < 2 * m; ++i) {
      out.push_back(majoranas[i]);
      for (std::size_t j = i + 1; j < 2 * m; ++j) out.push_back(majoranas[i] ^ majoranas[j]);
    }
    return out;
  }
  std::vector<std::size_t> odd, even;
  for (std::size_t i = 0; i < 2 * m; ++i) (is_odd_parity_majorana(m, i) ? odd : even).push_back(i);
  for (auto i : odd) out.push_back(majoranas[i]);
  for (auto j : even) out.push_back(majoranas[j]);
  for (auto i : odd)
    for (auto j : even) out.push_back(majoranas[i] ^ majoranas[j]);
  return out;
}

std::vector<BitVec> restricted_errors(const ErrorMap& em) {
  if (em.kind != ErrorMapKind::E) throw PreconditionError("restricted check needs an error map of kind E");
  const std::size_t m = em.m;
  for (std::size_t j = 0; j < 2 * m; ++j) {
    if (is_odd_parity_majorana(m, em.permutation[j]) != (j < m))
      throw PreconditionError("error map permutation does not place odd-parity Majoranas in the first M columns");
  }
  std::vector<BitVec> out{BitVec(2 * m)};
  for (std::size_t j = 0; j < 2 * m; ++j) out.push_back(em.matrix.column(j));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = m; j < 2 * m; ++j) out.push_back(em.matrix.column(i) ^ em.matrix.column(j));
  return out;
}

std::vector<BitVec> pair_errors(const ErrorMap& em) {
  if (em.kind != ErrorMapKind::Eprime) throw PreconditionError("pair check needs an error map of kind Eprime");
  const std::size_t m = em.m;
  // Columns of the unpermuted block form: Z_p at p, c_p at M+p.
  std::vector<BitVec> zc(m), cc(m);
  for (std::size_t j = 0; j < 2 * m; ++j) {
    const std::size_t src = em.permutation[j];
    (src < m ? zc[src] : cc[src - m]) = em.matrix.column(j);
  }
  std::vector<BitVec> out{BitVec(2 * m)};
  for (std::size_t p = 0; p < m; ++p) {
    out.push_back(zc[p]);
    out.push_back(cc[p]);
    out.push_back(cc[p] ^ zc[p]);
  }
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = p + 1; q < m; ++q) {
      const BitVec base = cc[p] ^ cc[q];
      out.push_back(base);
      out.push_back(base ^ zc[p]);
      out.push_back(base ^ zc[q]);
      out.push_back(base ^ zc[p] ^ zc[q]);
    }
  }
  return out;
}

DegeneracyResult lemma1_pair_check_detail(const StabilizerCode& code, const ErrorMap& em) {
  return distinguishable_or_degenerate(code, pair_errors(em));
}

bool lemma1_pair_check(const CssCode& css, const ErrorMap& em) {
  return lemma1_pair_check_detail(css.assemble(), em).ok;
}

DegeneracyResult restricted_parity_check_detail(const StabilizerCode& code, const ErrorMap& em) {
  return distinguishable_or_degenerate(code, restricted_errors(em));
}

bool restricted_parity_check(const StabilizerCode& code, const ErrorMap& em) {
  return restricted_parity_check_detail(code, em).ok;
}

}  // namespace pstqec
