#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pstqec/codes.hpp"
#include "pstqec/state.hpp"

namespace pstqec {

// Moves Paulis on the encoding region (qubits 0..M-1) through the noiseless evolution
// exp(-iHt) and expresses the image on the decoding region (qubits N-M..N-1), using the
// Majorana transfer map. A Z string left over on the rest of the chain is replaced by
// `rest_parity`, its eigenvalue on the rest state.
class TransferFrame {
 public:
  TransferFrame(const ChainSpec& spec, std::size_t m, double t, int rest_parity = 1, double tol = 1e-10);

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  Pauli map(const Pauli& encoding_local) const;
  StabilizerCode map_code(const StabilizerCode& code) const;

 private:
  std::size_t n_, m_;
  int rest_parity_;
  // For each source Majorana index: destination index and sign.
  std::vector<std::pair<std::size_t, int>> image_;
};

StabilizerCode arrival_frame(const StabilizerCode& code, const ChainSpec& spec, int rest_parity = 1);

// Codewords on M qubits in the frame of the given code.
Eigen::VectorXcd logical_state(const StabilizerCode& code, cplx alpha, cplx beta);

PureState encode_pure(const StabilizerCode& code, cplx alpha, cplx beta, std::size_t n);
SectorState encode(const StabilizerCode& code, cplx alpha, cplx beta, std::size_t n);

struct SyndromeTable {
  std::size_t generators = 0;
  std::map<BitVec, Pauli> corrections;  // syndrome -> correction on the decoding region
};

// Table for the correctable set, built in the encoding frame and carried to the arrival
// frame so that syndromes line up with the arrival generators.
SyndromeTable build_syndrome_table(const StabilizerCode& code, const TransferFrame& frame, CorrectableSet set);
SyndromeTable build_syndrome_table(const StabilizerCode& code, const std::vector<BitVec>& errors);

struct RecoveryResult {
  Eigen::MatrixXcd state;
  double failure_probability = 0.0;  // weight of syndromes absent from the table
  bool failed_decode = false;
};

// Syndrome probabilities for a region density matrix.
std::map<BitVec, double> syndrome_distribution(const Eigen::MatrixXcd& rho, const StabilizerCode& arrival);
RecoveryResult measure_correct(const Eigen::MatrixXcd& rho, const StabilizerCode& arrival, const SyndromeTable& table);
double logical_fidelity(const Eigen::MatrixXcd& rho, const StabilizerCode& arrival, cplx alpha, cplx beta);
// Fidelity after recovery without forming the recovered state.
double corrected_fidelity(const Eigen::MatrixXcd& rho, const StabilizerCode& arrival, const SyndromeTable& table,
                          cplx alpha, cplx beta);

// Region-reduced outputs of the channel on logical matrix units: r[2i+j] <-> |i_L><j_L|.
struct LogicalOutputs {
  std::array<Eigen::MatrixXcd, 4> r;
  Eigen::MatrixXcd combine(cplx alpha, cplx beta) const;
};

const std::array<std::pair<cplx, cplx>, 6>& pauli_eigenstates();
double six_state_average(const std::function<double(cplx, cplx)>& fidelity);

struct ProtocolSetup {
  ChainSpec spec;
  StabilizerCode code;
  StabilizerCode arrival;
  SyndromeTable table;
};
ProtocolSetup make_protocol(const ChainSpec& spec, const StabilizerCode& code, CorrectableSet set);

// Noiseless transfer with one Pauli inserted at t_err (0 <= t_err <= t0).
LogicalOutputs single_error_outputs(const ProtocolSetup& p, const SectorEvolver& ev, const Pauli& error, double t_err);
LogicalOutputs dephasing_outputs(const ProtocolSetup& p, const SectorEvolver& ev, double gamma, std::size_t steps);

struct FidelitySummary {
  double corrected = 0.0;    // six-state average after recovery
  double uncorrected = 0.0;  // six-state average without recovery
  double failure_rate = 0.0;
};
FidelitySummary summarize(const ProtocolSetup& p, const LogicalOutputs& out);

struct SweepPoint {
  double gamma = 0.0;
  double f_encoded = 0.0;
  double f_unencoded = 0.0;
  double decode_failure_rate = 0.0;
};

struct SweepOptions {
  std::size_t steps_encoded = 0;  // 0: automatic
  std::size_t steps_unencoded = 0;
  unsigned threads = 1;
  CorrectableSet set = CorrectableSet::OneOfEachParity;
};

std::size_t default_steps(const ChainSpec& spec, double gamma, bool encoded);
std::vector<SweepPoint> run_sweep(const ChainSpec& spec, const StabilizerCode& code, const std::vector<double>& gammas,
                                  const SweepOptions& opt = {});
std::string sweep_csv(const std::vector<SweepPoint>& points);

enum class RestState { Zeros, Ones, Random };
double case_ii_preparation(const ChainSpec& spec, const StabilizerCode& code, RestState rest, std::uint64_t seed = 1);

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace pstqec
