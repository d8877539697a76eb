#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pstqec/gf2.hpp"
#include "pstqec/pauli.hpp"

namespace pstqec {

// Symplectic vectors are laid out as (z | x), 2M entries.
struct LogicalPair {
  BitVec z;
  BitVec x;
  bool z_negative = false;
  bool x_negative = false;
};

struct StabilizerCode {
  std::size_t m = 0;
  BinMatrix generators;        // (M-k) x 2M
  std::vector<bool> negative;  // per generator; empty means all positive
  std::vector<LogicalPair> logicals;

  std::size_t k() const { return m - generators.rows(); }
  bool generator_negative(std::size_t i) const { return !negative.empty() && negative[i]; }
  Pauli generator(std::size_t i) const;
  Pauli logical_z(std::size_t j = 0) const;
  Pauli logical_x(std::size_t j = 0) const;
};

struct CssCode {
  BinMatrix h1;
  BinMatrix g2;
  std::optional<std::size_t> d1;
  std::optional<std::size_t> d2;

  std::size_t m() const { return h1.cols(); }
  // Z-type rows (H1|0) followed by X-type rows (0|G2), dependent rows dropped,
  // with a logical basis attached.
  StabilizerCode assemble() const;
};

enum class ErrorMapKind { E, Eprime };
enum class CodeCase { i, ii, iii };

std::string to_string(ErrorMapKind k);
std::string to_string(CodeCase c);
CodeCase parse_case(const std::string& s);

struct ErrorMap {
  std::size_t m = 0;
  ErrorMapKind kind = ErrorMapKind::Eprime;
  std::vector<std::size_t> permutation;  // column j of the result is column permutation[j] of the block form
  BinMatrix matrix;
};

// Symplectic product matrix A * Lambda * B^T.
BinMatrix symplectic_products(const BinMatrix& a, const BinMatrix& b);

bool is_valid_stabilizer(const BinMatrix& generators);
ErrorMap build_error_map(std::size_t m, ErrorMapKind kind, std::vector<std::size_t> permutation = {});
// Permutation for kind E placing the odd-parity Majoranas (X-type at odd 1-based sites,
// Y-type at even sites) in the first M columns and the even-parity ones after them.
std::vector<std::size_t> parity_permutation(std::size_t m);
bool is_odd_parity_majorana(std::size_t m, std::size_t index);

BinMatrix syndrome_matrix(const StabilizerCode& code, const ErrorMap& em);
BitVec syndrome_of(const StabilizerCode& code, const BitVec& error);
std::size_t majorana_distance(const StabilizerCode& code, const ErrorMap& em,
                              const std::vector<std::size_t>& columns = {});

// Attaches a symplectic basis of logical operators (Z_L, X_L pairs), preferring
// Z^{xM} and pure Z / pure X representatives when they exist.
void attach_logicals(StabilizerCode& code);

CodeCase classify_case(const StabilizerCode& code);
bool perfect_check(std::size_t m, std::size_t k, std::size_t t);

// A set of errors given as symplectic vectors; distinguishable-or-degenerate means any
// two errors sharing a syndrome differ by an element of the stabilizer group.
struct DegeneracyResult {
  bool ok = true;
  std::size_t errors = 0;
  std::size_t conflicts = 0;
  std::optional<std::pair<BitVec, BitVec>> witness;
};
DegeneracyResult distinguishable_or_degenerate(const StabilizerCode& code, const std::vector<BitVec>& errors);

// Correctable sets, as symplectic vectors on the code's M qubits.
enum class CorrectableSet { TwoMajorana, OneOfEachParity };
std::vector<BitVec> correctable_errors(std::size_t m, CorrectableSet set);
std::vector<BitVec> restricted_errors(const ErrorMap& em);
std::vector<BitVec> pair_errors(const ErrorMap& em);

DegeneracyResult lemma1_pair_check_detail(const StabilizerCode& code, const ErrorMap& em);
bool lemma1_pair_check(const CssCode& css, const ErrorMap& em);
DegeneracyResult restricted_parity_check_detail(const StabilizerCode& code, const ErrorMap& em);
bool restricted_parity_check(const StabilizerCode& code, const ErrorMap& em);

}  // namespace pstqec
