#include "pstqec/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <random>
#include <thread>

#include "pstqec/error.hpp"

namespace pstqec {

namespace {

std::uint64_t low_mask(std::size_t n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

Eigen::VectorXcd apply_dense(const Pauli& p, const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  for (Eigen::Index x = 0; x < v.size(); ++x) {
    if (v(x) == cplx(0.0)) continue;
    auto [y, a] = p.act(std::uint64_t(x));
    out(Eigen::Index(y)) += a * v(x);
  }
  return out;
}

// tr(P rho)
cplx expectation(const Pauli& p, const Eigen::MatrixXcd& rho) {
  cplx t = 0.0;
  for (Eigen::Index x = 0; x < rho.rows(); ++x) {
    auto [y, a] = p.act(std::uint64_t(x));
    t += a * rho(x, Eigen::Index(y));
  }
  return t;
}

StabilizerCode trivial_code() {
  StabilizerCode c;
  c.m = 1;
  c.generators = BinMatrix(0, 2);
  attach_logicals(c);
  return c;
}

}  // namespace

TransferFrame::TransferFrame(const ChainSpec& spec, std::size_t m, double t, int rest_parity, double tol)
    : n_(spec.n), m_(m), rest_parity_(rest_parity) {
  if (m == 0 || m > spec.n) throw PreconditionError("region size must be between 1 and N");
  if (rest_parity != 1 && rest_parity != -1) throw PreconditionError("rest parity must be +1 or -1");
  if (spec.n > 64) throw CapacityError("transfer frames are limited to 64 sites");
  const Eigen::MatrixXd o = transfer_map(spec, t).o;
  const std::size_t n = spec.n;
  image_.assign(2 * n, {0, 0});
  for (std::size_t a = 0; a < 2 * n; ++a) {
    const bool in_source = (a % n) < m;
    if (!in_source) continue;
    Eigen::Index best = 0;
    const double peak = o.col(Eigen::Index(a)).cwiseAbs().maxCoeff(&best);
    const double rest = std::sqrt(std::max(0.0, o.col(Eigen::Index(a)).squaredNorm() - peak * peak));
    if (std::abs(peak - 1.0) > tol || rest > tol)
      throw FrameError("Majorana " + std::to_string(a) + " does not map to a single Majorana (peak " +
                       std::to_string(peak) + ", spread " + std::to_string(rest) + "); chain is not PST at this time");
    image_[a] = {std::size_t(best), o(best, Eigen::Index(a)) > 0 ? 1 : -1};
  }
}

Pauli TransferFrame::map(const Pauli& p) const {
  const std::uint64_t region = low_mask(m_);
  if ((p.x | p.z) & ~region) throw MalformedInput("operator is not supported on the encoding region");
  MajoranaForm f = to_majoranas(n_, p);
  Pauli q;
  q.phase = f.phase;
  for (std::size_t a = 0; a < 2 * n_; ++a) {
    if (!f.support.get(a)) continue;
    auto [b, s] = image_[a];
    q *= majorana(n_, b);
    if (s < 0) q.phase = (q.phase + 2) & 3;
  }
  const std::size_t offset = n_ - m_;
  const std::uint64_t rest = low_mask(offset);
  if (q.x & rest) throw FrameError("image has bit flips outside the decoding region");
  const std::uint64_t zr = q.z & rest;
  if (zr != 0 && zr != rest) throw FrameError("image has a partial Z string on the rest of the chain");
  if (zr == rest && offset > 0) {
    q.z &= ~rest;
    if (rest_parity_ < 0) q.phase = (q.phase + 2) & 3;
  }
  return q.shifted(-int(offset));
}

StabilizerCode TransferFrame::map_code(const StabilizerCode& code) const {
  if (code.m != m_) throw MalformedInput("code size does not match the transfer region");
  StabilizerCode out;
  out.m = m_;
  out.generators = BinMatrix(0, 2 * m_);
  for (std::size_t i = 0; i < code.generators.rows(); ++i) {
    Pauli g = map(code.generator(i));
    out.generators.append_row(g.symplectic(m_));
    out.negative.push_back(g.sign() < 0);
  }
  for (std::size_t j = 0; j < code.logicals.size(); ++j) {
    Pauli z = map(code.logical_z(j)), x = map(code.logical_x(j));
    out.logicals.push_back({z.symplectic(m_), x.symplectic(m_), z.sign() < 0, x.sign() < 0});
  }
  return out;
}

StabilizerCode arrival_frame(const StabilizerCode& code, const ChainSpec& spec, int rest_parity) {
  return TransferFrame(spec, code.m, spec.t0, rest_parity).map_code(code);
}

Eigen::VectorXcd logical_state(const StabilizerCode& code, cplx alpha, cplx beta) {
  if (code.logicals.size() != 1) throw PreconditionError("logical states need exactly one logical qubit");
  if (code.m > 24) throw CapacityError("codewords are synthesised densely for at most 24 qubits");
  const Eigen::Index dim = Eigen::Index(1) << code.m;
  auto project = [&](Eigen::VectorXcd v) {
    for (std::size_t i = 0; i < code.generators.rows(); ++i) v = 0.5 * (v + apply_dense(code.generator(i), v));
    v = 0.5 * (v + apply_dense(code.logical_z(), v));
    return v;
  };
  Eigen::VectorXcd zero;
  for (Eigen::Index x = 0; x < dim; ++x) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
    e(x) = 1.0;
    zero = project(e);
    if (zero.norm() > 1e-6) break;
  }
  if (zero.norm() <= 1e-6) throw EncodingError("stabilizers and logical Z have no common +1 eigenstate");
  zero.normalize();
  // fix the global phase so the largest amplitude is real and positive
  Eigen::Index imax = 0;
  zero.cwiseAbs().maxCoeff(&imax);
  zero *= std::conj(zero(imax)) / std::abs(zero(imax));
  Eigen::VectorXcd one = apply_dense(code.logical_x(), zero);
  Eigen::VectorXcd psi = alpha * zero + beta * one;
  const double nrm = psi.norm();
  if (nrm < 1e-12) throw EncodingError("zero logical amplitudes");
  return psi / nrm;
}

PureState encode_pure(const StabilizerCode& code, cplx alpha, cplx beta, std::size_t n) {
  if (code.m > n) throw PreconditionError("code needs more qubits than the chain has");
  Eigen::VectorXcd region = logical_state(code, alpha, beta);
  PureState s(n);
  for (Eigen::Index x = 0; x < region.size(); ++x)
    if (std::abs(region(x)) > 1e-15) s.add(std::uint64_t(x), region(x));
  return s;
}

SectorState encode(const StabilizerCode& code, cplx alpha, cplx beta, std::size_t n) {
  return SectorState::from_pure(encode_pure(code, alpha, beta, n));
}

SyndromeTable build_syndrome_table(const StabilizerCode& code, const std::vector<BitVec>& errors) {
  SyndromeTable t;
  t.generators = code.generators.rows();
  for (const auto& e : errors) {
    BitVec s = syndrome_of(code, e);
    if (!t.corrections.count(s)) t.corrections.emplace(std::move(s), Pauli::from_symplectic(e));
  }
  BitVec zero(t.generators);
  if (!t.corrections.count(zero)) t.corrections.emplace(zero, Pauli::identity());
  return t;
}

SyndromeTable build_syndrome_table(const StabilizerCode& code, const TransferFrame& frame, CorrectableSet set) {
  SyndromeTable local = build_syndrome_table(code, correctable_errors(code.m, set));
  SyndromeTable t;
  t.generators = local.generators;
  for (auto& [s, p] : local.corrections) {
    Pauli q = frame.map(p);
    q.phase = std::popcount(q.x & q.z) & 3;  // corrections are applied up to sign
    t.corrections.emplace(s, q);
  }
  return t;
}

std::map<BitVec, double> syndrome_distribution(const Eigen::MatrixXcd& rho, const StabilizerCode& arrival) {
  const std::size_t r = arrival.generators.rows();
  if (r > 20) throw CapacityError("too many generators for the syndrome distribution");
  std::vector<Pauli> gens;
  for (std::size_t i = 0; i < r; ++i) gens.push_back(arrival.generator(i));
  const std::size_t count = std::size_t{1} << r;
  std::vector<double> e(count);
  std::vector<Pauli> group(count);
  group[0] = Pauli::identity();
  for (std::size_t g = 1; g < count; ++g) {
    const std::size_t low = std::size_t(std::countr_zero(g));
    group[g] = group[g & (g - 1)] * gens[low];
  }
  for (std::size_t g = 0; g < count; ++g) e[g] = expectation(group[g], rho).real();
  // Walsh-Hadamard transform: p_s = 2^{-r} sum_g (-1)^{g.s} e_g
  for (std::size_t h = 1; h < count; h <<= 1)
    for (std::size_t i = 0; i < count; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = e[j], b = e[j + h];
        e[j] = a + b;
        e[j + h] = a - b;
      }
  std::map<BitVec, double> out;
  for (std::size_t s = 0; s < count; ++s) {
    const double p = e[s] / double(count);
    if (std::abs(p) < 1e-15) continue;
    BitVec bits(r);
    for (std::size_t i = 0; i < r; ++i) bits.set(i, (s >> i) & 1);
    out.emplace(std::move(bits), p);
  }
  return out;
}

RecoveryResult measure_correct(const Eigen::MatrixXcd& rho, const StabilizerCode& arrival, const SyndromeTable& table) {
  const std::size_t r = arrival.generators.rows();
  if (arrival.m > 8) throw CapacityError("the full recovery output is formed densely only for M <= 8");
  const Eigen::Index dim = rho.rows();
  RecoveryResult res;
  res.state = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<Pauli> gens;
  for (std::size_t i = 0; i < r; ++i) gens.push_back(arrival.generator(i));
  for (std::size_t s = 0; s < (std::size_t{1} << r); ++s) {
    BitVec bits(r);
    for (std::size_t i = 0; i < r; ++i) bits.set(i, (s >> i) & 1);
    Eigen::MatrixXcd proj = Eigen::MatrixXcd::Identity(dim, dim);
    for (std::size_t i = 0; i < r; ++i) {
      const double sgn = ((s >> i) & 1) ? -1.0 : 1.0;
      Eigen::MatrixXcd next(dim, dim);
      for (Eigen::Index c = 0; c < dim; ++c) next.col(c) = 0.5 * (proj.col(c) + sgn * apply_dense(gens[i], proj.col(c)));
      proj = std::move(next);
    }
    Eigen::MatrixXcd branch = proj * rho * proj;
    const double p = branch.trace().real();
    if (p < 1e-15) continue;
    auto it = table.corrections.find(bits);
    Pauli c = Pauli::identity();
    if (it == table.corrections.end()) {
      res.failure_probability += p;
      res.failed_decode = true;
    } else {
      c = it->second;
    }
    Eigen::MatrixXcd cm(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
      Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
      e(col) = 1.0;
      cm.col(col) = apply_dense(c, e);
    }
    res.state += cm * branch * cm.adjoint();
  }
  return res;
}

double logical_fidelity(const Eigen::MatrixXcd& rho, const StabilizerCode& arrival, cplx alpha, cplx beta) {
  Eigen::VectorXcd psi = logical_state(arrival, alpha, beta);
  return (psi.adjoint() * rho * psi)(0, 0).real();
}

double corrected_fidelity(const Eigen::MatrixXcd& rho, const StabilizerCode& arrival, const SyndromeTable& table,
                          cplx alpha, cplx beta) {
  Eigen::VectorXcd psi = logical_state(arrival, alpha, beta);
  double f = 0.0;
  for (auto& [s, c] : table.corrections) {
    Eigen::VectorXcd phi = apply_dense(c, psi);
    f += (phi.adjoint() * rho * phi)(0, 0).real();
  }
  return f;
}

Eigen::MatrixXcd LogicalOutputs::combine(cplx alpha, cplx beta) const {
  const double nrm = std::sqrt(std::norm(alpha) + std::norm(beta));
  alpha /= nrm;
  beta /= nrm;
  return std::norm(alpha) * r[0] + alpha * std::conj(beta) * r[1] + beta * std::conj(alpha) * r[2] +
         std::norm(beta) * r[3];
}

const std::array<std::pair<cplx, cplx>, 6>& pauli_eigenstates() {
  static const double h = std::sqrt(0.5);
  static const std::array<std::pair<cplx, cplx>, 6> states = {{
      {1.0, 0.0}, {0.0, 1.0}, {h, h}, {h, -h}, {h, cplx(0, h)}, {h, cplx(0, -h)},
  }};
  return states;
}

double six_state_average(const std::function<double(cplx, cplx)>& fidelity) {
  double s = 0;
  for (auto& [a, b] : pauli_eigenstates()) s += fidelity(a, b);
  return s / 6.0;
}

ProtocolSetup make_protocol(const ChainSpec& spec, const StabilizerCode& code, CorrectableSet set) {
  TransferFrame frame(spec, code.m, spec.t0, 1);
  return {spec, code, frame.map_code(code), build_syndrome_table(code, frame, set)};
}

LogicalOutputs single_error_outputs(const ProtocolSetup& p, const SectorEvolver& ev, const Pauli& error, double t_err) {
  const double t0 = p.spec.t0;
  if (t_err < 0 || t_err > t0 * (1 + 1e-12)) throw PreconditionError("error time must lie in [0, t0]");
  const std::size_t n = p.spec.n, m = p.code.m;
  std::array<PureState, 2> psi = {encode_pure(p.code, 1, 0, n), encode_pure(p.code, 0, 1, n)};
  for (auto& s : psi) s = s.evolved(ev, t_err).apply(error).evolved(ev, std::max(0.0, t0 - t_err));
  LogicalOutputs out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.r[2 * i + j] = reduce_cross(psi[i], psi[j], n - m, m);
  return out;
}

LogicalOutputs dephasing_outputs(const ProtocolSetup& p, const SectorEvolver& ev, double gamma, std::size_t steps) {
  const std::size_t n = p.spec.n, m = p.code.m;
  PureState zero = encode_pure(p.code, 1, 0, n), one = encode_pure(p.code, 0, 1, n);
  std::set<std::size_t> s0 = zero.support(), s1 = one.support();
  bool disjoint = true;
  for (auto w : s0) disjoint = disjoint && !s1.count(w);
  LogicalOutputs out;
  if (steps == 0) steps = default_steps(p.spec, gamma, true);
  if (disjoint) {
    PureState plus = zero;
    plus += one;
    plus.scale(std::sqrt(0.5));
    SectorState rho = evolve_dephasing(SectorState::from_pure(plus), ev, gamma, p.spec.t0, steps);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const auto& si = i ? s1 : s0;
        const auto& sj = j ? s1 : s0;
        out.r[2 * i + j] = 2.0 * rho.reduce(n - m, m, [&](std::size_t a, std::size_t b) { return si.count(a) && sj.count(b); });
      }
    return out;
  }
  auto run = [&](cplx a, cplx b) {
    return evolve_dephasing(encode(p.code, a, b, n), ev, gamma, p.spec.t0, steps).reduce(n - m, m);
  };
  const double h = std::sqrt(0.5);
  Eigen::MatrixXcd r0 = run(1, 0), r1 = run(0, 1), rp = run(h, h), ri = run(h, cplx(0, h));
  out.r[0] = r0;
  out.r[3] = r1;
  out.r[1] = rp + cplx(0, 1) * ri - 0.5 * cplx(1, 1) * (r0 + r1);
  out.r[2] = out.r[1].adjoint();
  return out;
}

FidelitySummary summarize(const ProtocolSetup& p, const LogicalOutputs& out) {
  FidelitySummary f;
  for (auto& [a, b] : pauli_eigenstates()) {
    Eigen::MatrixXcd rho = out.combine(a, b);
    f.corrected += corrected_fidelity(rho, p.arrival, p.table, a, b);
    f.uncorrected += logical_fidelity(rho, p.arrival, a, b);
    double ok = 0.0;
    for (auto& [s, prob] : syndrome_distribution(rho, p.arrival))
      if (p.table.corrections.count(s)) ok += prob;
    f.failure_rate += std::max(0.0, 1.0 - ok);
  }
  f.corrected /= 6;
  f.uncorrected /= 6;
  f.failure_rate /= 6;
  return f;
}

std::size_t default_steps(const ChainSpec& spec, double gamma, bool encoded) {
  if (gamma == 0.0) return 1;
  const double x = gamma * spec.t0;
  if (encoded) return std::size_t(std::clamp(std::ceil(80.0 * x), 8.0, 32.0));
  return std::size_t(std::max(256.0, std::ceil(200.0 * x * double(spec.n))));
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<SweepPoint> run_sweep(const ChainSpec& spec, const StabilizerCode& code, const std::vector<double>& gammas,
                                  const SweepOptions& opt) {
  if (code.m > spec.n) throw PreconditionError("code needs more qubits than the chain has");
  ProtocolSetup enc = make_protocol(spec, code, opt.set);
  ProtocolSetup bare = make_protocol(spec, trivial_code(), opt.set);
  SectorEvolver ev(spec);
  std::vector<SweepPoint> pts(gammas.size());
  parallel_for(gammas.size(), opt.threads, [&](std::size_t i) {
    const double g = gammas[i];
    if (g < 0) throw PreconditionError("dephasing rate must be non-negative");
    const std::size_t se = opt.steps_encoded ? opt.steps_encoded : default_steps(spec, g, true);
    const std::size_t su = opt.steps_unencoded ? opt.steps_unencoded : default_steps(spec, g, false);
    FidelitySummary fe = summarize(enc, dephasing_outputs(enc, ev, g, se));
    FidelitySummary fu = summarize(bare, dephasing_outputs(bare, ev, g, su));
    pts[i] = {g, fe.corrected, fu.corrected, fe.failure_rate};
  });
  return pts;
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
  std::string out = "gamma,f_encoded,f_unencoded,decode_failure_rate\n";
  char buf[160];
  for (auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.10e,%.12f,%.12f,%.12e\n", p.gamma, p.f_encoded, p.f_unencoded,
                  std::max(0.0, p.decode_failure_rate));
    out += buf;
  }
  return out;
}

double case_ii_preparation(const ChainSpec& spec, const StabilizerCode& code, RestState rest, std::uint64_t seed) {
  const std::size_t n = spec.n, m = code.m;
  if (n > 14) throw PreconditionError("case (ii) preparation is simulated for N <= 14");
  if (classify_case(code) != CodeCase::ii) throw PreconditionError("case (ii) preparation needs a case (ii) code");
  if (m >= n) throw PreconditionError("case (ii) preparation needs a rest of chain");
  const std::size_t restn = n - m;
  SectorEvolver ev(spec);

  // 1. X_L eigenstate of the pre-image code on the decoding region, arbitrary rest.
  StabilizerCode pre = TransferFrame(spec, m, -spec.t0, 1).map_code(code);
  const double h = std::sqrt(0.5);
  Eigen::VectorXcd dec = logical_state(pre, h, h);
  Eigen::VectorXcd rs = Eigen::VectorXcd::Zero(Eigen::Index(1) << restn);
  if (rest == RestState::Zeros) {
    rs(0) = 1.0;
  } else if (rest == RestState::Ones) {
    rs(rs.size() - 1) = 1.0;
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    for (Eigen::Index i = 0; i < rs.size(); ++i) rs(i) = cplx(g(rng), g(rng));
    rs.normalize();
  }
  PureState psi(n);
  for (Eigen::Index r = 0; r < rs.size(); ++r)
    for (Eigen::Index d = 0; d < dec.size(); ++d)
      if (rs(r) != cplx(0.0) && dec(d) != cplx(0.0)) psi.add(std::uint64_t(r) | (std::uint64_t(d) << restn), rs(r) * dec(d));

  // 2. Transfer; the encoding region now holds a codeword of `code`.
  psi = psi.evolved(ev, spec.t0);
  Eigen::VectorXcd full = psi.to_dense();
  for (std::size_t i = 0; i < code.generators.rows(); ++i) full = 0.5 * (full + apply_dense(code.generator(i), full));
  const double p_code = full.squaredNorm();
  if (p_code < 1 - 1e-8) throw NumericalError("prepared state left the code space during the noiseless transfer");

  // Arrival-side parity of the rest of the chain, relative to its departure value.
  Pauli rest_parity_op = Pauli::hermitian(0, low_mask(n) & ~low_mask(m));
  const int parity_sign = TransferFrame(spec, n, spec.t0, 1).map(rest_parity_op).sign();

  double fidelity = 0.0;
  for (int outcome : {1, -1}) {
    // 3. Measure X_L on the encoding region.
    Eigen::VectorXcd branch = 0.5 * (full + double(outcome) * apply_dense(code.logical_x(), full));
    const double prob = branch.squaredNorm();
    if (prob < 1e-12) continue;
    Eigen::VectorXcd chi = logical_state(code, h, outcome * h);
    // rest state on qubits m..n-1
    Eigen::VectorXcd r = Eigen::VectorXcd::Zero(Eigen::Index(1) << restn);
    for (Eigen::Index x = 0; x < branch.size(); ++x)
      r(x >> m) += std::conj(chi(x & Eigen::Index(low_mask(m)))) * branch(x);
    if (std::abs(r.squaredNorm() - prob) > 1e-8)
      throw NumericalError("encoding region is entangled with the rest after the X_L measurement");
    r.normalize();
    // 4. Fresh transfer with the frame fixed by the measured parity.
    const int arrival_parity = outcome * parity_sign;
    TransferFrame frame(spec, m, spec.t0, arrival_parity);
    ProtocolSetup p{spec, code, frame.map_code(code), build_syndrome_table(code, frame, CorrectableSet::OneOfEachParity)};
    std::array<PureState, 2> basis;
    for (int b = 0; b < 2; ++b) {
      Eigen::VectorXcd cw = logical_state(code, b == 0 ? 1.0 : 0.0, b == 0 ? 0.0 : 1.0);
      PureState s(n);
      for (Eigen::Index x = 0; x < cw.size(); ++x)
        for (Eigen::Index y = 0; y < r.size(); ++y)
          if (cw(x) != cplx(0.0) && r(y) != cplx(0.0)) s.add(std::uint64_t(x) | (std::uint64_t(y) << m), cw(x) * r(y));
      basis[b] = s.evolved(ev, spec.t0);
    }
    LogicalOutputs out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out.r[2 * i + j] = reduce_cross(basis[i], basis[j], n - m, m);
    fidelity += prob * summarize(p, out).uncorrected;
  }
  return fidelity;
}

}  // namespace pstqec
