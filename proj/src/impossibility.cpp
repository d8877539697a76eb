#include "pstqec/impossibility.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "pstqec/error.hpp"
#include "pstqec/state.hpp"

namespace pstqec {

ReflectionOperator compute_R(const ChainSpec& spec, double tol) {
  if (spec.n % 2) throw PreconditionError("the reflection operator is defined for even N only");
  if (!check_spectral_symmetry(spec, tol)) throw PreconditionError("chain spectrum is not symmetric");
  if (pst_deviation(spec) > 1e-8) throw PreconditionError("chain does not have perfect state transfer at t0");
  const Eigen::Index n = Eigen::Index(spec.n);
  Spectrum sp = spectrum(spec);
  Eigen::MatrixXcd half = propagator(sp, -spec.t0 / 2);  // e^{+i h1 t0/2}
  Eigen::VectorXcd d(n);
  for (Eigen::Index k = 0; k < n; ++k) d(k) = k < n / 2 ? -1.0 : 1.0;
  ReflectionOperator out;
  out.n = spec.n;
  out.r = half * d.asDiagonal() * half.adjoint();
  out.hermitian_residual = (out.r - out.r.adjoint()).cwiseAbs().maxCoeff();
  out.involution_residual = (out.r * out.r - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (out.hermitian_residual > tol || out.involution_residual > tol)
    throw NumericalError("R fails Hermiticity or R^2 = 1 beyond tolerance");
  out.min_antidiagonal = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    out.max_diagonal = std::max(out.max_diagonal, std::abs(out.r(i, i)));
    out.min_antidiagonal = std::min(out.min_antidiagonal, std::abs(out.r(i, n - 1 - i)));
    for (Eigen::Index j = 0; j < n; ++j)
      if ((i - j) % 2 == 0) out.checkerboard = std::max(out.checkerboard, std::abs(out.r(i, j)));
  }
  return out;
}

std::size_t ReturnModes::unit_count(double tol) const {
  std::size_t c = 0;
  for (Eigen::Index i = 0; i < defect.size(); ++i)
    if (std::abs(defect(i)) <= tol) ++c;
  return c;
}

ReturnModes compute_W(const ReflectionOperator& r, std::size_t m) {
  if (m < 1 || m > r.n) throw PreconditionError("region size must be between 1 and N");
  const Eigen::Index mm = Eigen::Index(m), n = Eigen::Index(r.n);
  ReturnModes out;
  out.m = m;
  out.w = r.r.topLeftCorner(mm, mm);
  // W is Hermitian, so its singular vectors are eigenvectors and sigma = |eigenvalue|.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(out.w);
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition of W failed");
  // 1 - w^2 = R12 R12^dagger because R^2 = 1, which gives the defect without cancellation.
  Eigen::MatrixXcd r12 = r.r.topRightCorner(mm, n - mm);
  Eigen::MatrixXcd q = r12 * r12.adjoint();
  std::vector<Eigen::Index> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = Eigen::Index(i);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(es.eigenvalues()(a)) > std::abs(es.eigenvalues()(b));
  });
  out.singular.resize(mm);
  out.defect.resize(mm);
  out.modes.resize(mm, mm);
  for (Eigen::Index i = 0; i < mm; ++i) {
    const Eigen::Index src = order[std::size_t(i)];
    const double s = std::abs(es.eigenvalues()(src));
    Eigen::VectorXcd v = es.eigenvectors().col(src);
    out.singular(i) = s;
    out.modes.col(i) = v;
    out.defect(i) = n > mm ? (v.adjoint() * q * v)(0, 0).real() / (1.0 + s) : 1.0 - s;
  }
  out.max_sigma = out.singular(0);
  out.gap = out.defect.minCoeff();
  return out;
}

std::vector<DiscRow> disc_bound_report(const ReflectionOperator& r, std::size_t m, double tol) {
  if (2 * m > r.n) throw PreconditionError("the disc bound applies for M <= N/2");
  const Eigen::Index n = Eigen::Index(r.n);
  std::vector<DiscRow> rows;
  for (Eigen::Index i = 0; i < Eigen::Index(m); ++i) {
    DiscRow d;
    d.row = std::size_t(i) + 1;
    d.diagonal = r.r(i, i);
    for (Eigen::Index j = 0; j < n; ++j) (j < Eigen::Index(m) ? d.row_sum : d.excluded) += std::norm(r.r(i, j));
    d.antidiagonal = std::norm(r.r(i, n - 1 - i));
    d.ok = d.row_sum < 1.0 && 1.0 - d.row_sum >= d.antidiagonal - tol && std::abs(d.row_sum + d.excluded - 1.0) <= tol;
    rows.push_back(d);
  }
  return rows;
}

AntidiagReport verify_antidiag_formula(const ChainSpec& spec) {
  if (spec.n % 2) throw PreconditionError("the antidiagonal identity needs even N");
  const Eigen::Index n = Eigen::Index(spec.n);
  Spectrum sp = spectrum(spec);
  for (Eigen::Index k = 0; k + 1 < n; ++k)
    if (sp.values(k + 1) - sp.values(k) < 1e-12) throw NumericalError("degenerate single-particle eigenvalue");
  Eigen::MatrixXd h = h1_matrix(spec);
  Eigen::VectorXd alt(n);
  for (Eigen::Index k = 0; k < n; ++k) alt(k) = k % 2 == 0 ? 1.0 : -1.0;  // (-1)^{k+1}, k 1-based
  AntidiagReport rep;
  const double jmid = spec.couplings[std::size_t(n / 2 - 1)];
  const double outer = (n / 2 + 1) % 2 == 0 ? 1.0 : -1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd v = sp.vectors.col(i);
    const double lam = sp.values(i);
    rep.recurrence_residual = std::max(rep.recurrence_residual, (h * v - lam * v).cwiseAbs().maxCoeff());
    const Eigen::VectorXd partner = alt.asDiagonal() * v;
    const Eigen::VectorXd numeric = sp.vectors.col(n - 1 - i);
    rep.symmetry_residual =
        std::max(rep.symmetry_residual, std::min((numeric - partner).cwiseAbs().maxCoeff(), (numeric + partner).cwiseAbs().maxCoeff()));
    double lhs = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) lhs += (k < n / 2 ? -1.0 : 1.0) * v(k) * partner(k);
    const double rhs = 2.0 * v(n / 2) * v(n / 2) * jmid / lam * outer;
    rep.lhs.push_back(lhs);
    rep.rhs.push_back(rhs);
    const double dev = std::abs(std::abs(lhs) - std::abs(rhs)) / std::max(std::abs(rhs), 1e-300);
    rep.max_relative_deviation = std::max(rep.max_relative_deviation, dev);
    if ((lhs < 0) != (rhs < 0)) ++rep.sign_mismatches;
  }
  return rep;
}

RepetitionResult repetition_experiment(std::size_t n, std::size_t rep, std::size_t err_site, double t_err,
                                       const SectorEvolver* ev_in) {
  if (rep % 2 == 0 || rep == 0) throw PreconditionError("repetition length must be odd");
  if (rep > n) throw PreconditionError("repetition block longer than the chain");
  if (err_site > n) throw PreconditionError("error site outside the chain");
  ChainSpec spec = standard_chain(n);
  std::unique_ptr<SectorEvolver> own;
  if (!ev_in) own = std::make_unique<SectorEvolver>(spec);
  const SectorEvolver& ev = ev_in ? *ev_in : *own;
  if (t_err < 0 || t_err > spec.t0) throw PreconditionError("error time must lie in [0, t0]");

  const std::uint64_t block = (std::uint64_t{1} << rep) - 1;
  const std::size_t offset = n - rep;
  std::array<PureState, 2> ideal, noisy;
  for (int a = 0; a < 2; ++a) {
    PureState s(n);
    s.add(a ? block : 0, 1.0);
    ideal[a] = s.evolved(ev, spec.t0);
    noisy[a] = s.evolved(ev, t_err);
    if (err_site) noisy[a] = noisy[a].apply(Pauli::hermitian(std::uint64_t{1} << (err_site - 1), 0));
    noisy[a] = noisy[a].evolved(ev, spec.t0 - t_err);
  }
  // Arrival-frame codewords: single basis states of the decoding block.
  std::array<std::uint64_t, 2> y{};
  std::array<cplx, 2> ph{1.0, 1.0};
  Eigen::MatrixXcd r00 = reduce_cross(ideal[0], ideal[0], offset, rep), r10 = reduce_cross(ideal[1], ideal[0], offset, rep),
                   r11 = reduce_cross(ideal[1], ideal[1], offset, rep);
  Eigen::Index i0 = 0, i1 = 0;
  r00.diagonal().real().maxCoeff(&i0);
  r11.diagonal().real().maxCoeff(&i1);
  if (std::abs(r00(i0, i0) - 1.0) > 1e-8 || std::abs(r11(i1, i1) - 1.0) > 1e-8)
    throw FrameError("repetition codewords do not arrive as basis states");
  y = {std::uint64_t(i0), std::uint64_t(i1)};
  ph[1] = r10(i1, i0);
  if (std::popcount(y[0] ^ y[1]) != int(rep)) throw FrameError("arrival codewords are not complementary");

  std::array<Eigen::MatrixXcd, 4> out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out[2 * a + b] = reduce_cross(noisy[a], noisy[b], offset, rep);
  // Majority vote in the arrival frame: flip pattern e (minority weight) is undone.
  std::vector<std::uint64_t> minority;
  for (std::uint64_t e = 0; e <= block; ++e)
    if (std::size_t(std::popcount(e)) <= rep / 2) minority.push_back(e);
  auto decoded = [&](const Eigen::MatrixXcd& rho) {
    Eigen::Matrix2cd l = Eigen::Matrix2cd::Zero();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (auto e : minority)
          l(a, b) += std::conj(ph[a]) * ph[b] * rho(Eigen::Index(y[a] ^ e), Eigen::Index(y[b] ^ e));
    return l;
  };
  RepetitionResult res;
  res.rep = rep;
  for (int a = 0; a < 2; ++a) res.flip_probability[a] = std::max(0.0, 1.0 - decoded(out[3 * a])(a, a).real());
  res.error_probability = std::max(res.flip_probability[0], res.flip_probability[1]);
  const double h = std::sqrt(0.5);
  const std::array<std::pair<cplx, cplx>, 6> states = {{
      {1.0, 0.0}, {0.0, 1.0}, {h, h}, {h, -h}, {h, cplx(0, h)}, {h, cplx(0, -h)},
  }};
  double f = 0.0;
  for (auto& [al, be] : states) {
    Eigen::MatrixXcd rho = std::norm(al) * out[0] + al * std::conj(be) * out[1] + be * std::conj(al) * out[2] +
                           std::norm(be) * out[3];
    Eigen::Matrix2cd l = decoded(rho);
    Eigen::Vector2cd psi(al, be);
    f += (psi.adjoint() * l * psi)(0, 0).real();
  }
  res.six_state_infidelity = std::max(0.0, 1.0 - f / 6.0);
  return res;
}

DistinguishabilityReport trivial_distinguishability_check(const ChainSpec& spec, std::size_t m) {
  const std::size_t n = spec.n;
  if (n % 2 || m != n / 2 + 1) throw PreconditionError("the distinguishability check needs even N and M = N/2 + 1");
  SectorEvolver ev(spec);
  const std::size_t offset = n - m;
  const Pauli x = Pauli::hermitian(std::uint64_t{1} << (n / 2), 0);  // site N/2 + 1
  DistinguishabilityReport rep;
  auto counts = [&](std::uint64_t start) {
    PureState s(n);
    s.add(start, 1.0);
    s = s.evolved(ev, spec.t0 / 2).apply(x).evolved(ev, spec.t0 / 2);
    std::vector<double> dist(m + 1, 0.0);
    s.for_each([&](std::uint64_t b, cplx a) { dist[std::size_t(std::popcount(b >> offset))] += std::norm(a); });
    return dist;
  };
  rep.first = counts(0);
  rep.second = counts((std::uint64_t{1} << m) - 1);
  const double floor = 1e-12;
  rep.min_count_second = m + 1;
  for (std::size_t c = 0; c <= m; ++c) {
    if (rep.first[c] > floor) rep.max_count_first = c;
    if (rep.second[c] > floor) rep.min_count_second = std::min(rep.min_count_second, c);
  }
  rep.passed = rep.max_count_first <= 1 && rep.min_count_second >= 2;
  return rep;
}

}  // namespace pstqec
