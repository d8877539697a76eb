#include "pstqec/chain.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "pstqec/error.hpp"

namespace pstqec {

ChainSpec standard_chain(std::size_t n, double lambda) {
  if (n < 2) throw PreconditionError("a chain needs at least 2 sites");
  if (!(lambda > 0)) throw PreconditionError("lambda must be positive");
  ChainSpec s;
  s.n = n;
  s.lambda = lambda;
  s.fields.assign(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) s.couplings.push_back(lambda * std::sqrt(double(k * (n - k))));
  s.t0 = std::numbers::pi / (2 * lambda);
  return s;
}

ChainSpec custom_chain(std::vector<double> couplings, std::vector<double> fields, double t0, double lambda) {
  ChainSpec s;
  s.n = fields.size();
  s.couplings = std::move(couplings);
  s.fields = std::move(fields);
  s.t0 = t0;
  s.lambda = lambda;
  validate(s);
  return s;
}

void validate(const ChainSpec& spec) {
  if (spec.n < 2) throw PreconditionError("a chain needs at least 2 sites");
  if (spec.couplings.size() + 1 != spec.n)
    throw MalformedInput("expected " + std::to_string(spec.n - 1) + " couplings, got " +
                         std::to_string(spec.couplings.size()));
  if (spec.fields.size() != spec.n)
    throw MalformedInput("expected " + std::to_string(spec.n) + " fields, got " + std::to_string(spec.fields.size()));
  for (double j : spec.couplings)
    if (!(j > 0)) throw PreconditionError("couplings must be positive");
  if (!(spec.t0 > 0)) throw PreconditionError("transfer time must be positive");
}

ChainSpec parse_chain_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t n = 0;
  double lambda = 1.0;
  double t0 = -1.0;
  std::vector<double> j, b;
  bool have_j = false, have_b = false;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "N") ls >> n;
    else if (key == "lambda") ls >> lambda;
    else if (key == "t0") ls >> t0;
    else if (key == "J" || key == "B") {
      auto& dst = key == "J" ? j : b;
      (key == "J" ? have_j : have_b) = true;
      double v;
      while (ls >> v) dst.push_back(v);
    } else {
      throw MalformedInput("unknown chain file key '" + key + "'");
    }
    if (ls.fail() && !ls.eof()) throw MalformedInput("bad value for '" + key + "'");
  }
  if (n == 0) throw MalformedInput("chain file must give N");
  ChainSpec s = standard_chain(n, lambda);
  if (have_j) s.couplings = j;
  if (have_b) s.fields = b;
  if (t0 > 0) s.t0 = t0;
  validate(s);
  return s;
}

ChainSpec load_chain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open chain file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_chain_text(ss.str());
}

Eigen::MatrixXd h1_matrix(const ChainSpec& spec) {
  validate(spec);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(spec.n, spec.n);
  for (std::size_t k = 0; k < spec.n; ++k) h(k, k) = spec.fields[k];
  for (std::size_t k = 0; k + 1 < spec.n; ++k) h(k, k + 1) = h(k + 1, k) = spec.couplings[k];
  return h;
}

Spectrum spectrum(const ChainSpec& spec) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h1_matrix(spec));
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition of h1 failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

Eigen::MatrixXcd propagator(const Spectrum& s, double t) {
  const Eigen::Index n = s.values.size();
  Eigen::VectorXcd ph(n);
  for (Eigen::Index k = 0; k < n; ++k) ph(k) = std::polar(1.0, -s.values(k) * t);
  Eigen::MatrixXcd v = s.vectors.cast<std::complex<double>>();
  return v * ph.asDiagonal() * v.transpose();
}

Eigen::MatrixXcd propagator(const ChainSpec& spec, double t) { return propagator(spectrum(spec), t); }

namespace {

// exp(s * [[0, h],[-h, 0]]) = [[cos(hs), sin(hs)], [-sin(hs), cos(hs)]]
MajoranaPropagator rotation(const ChainSpec& spec, double s, double t) {
  Spectrum sp = spectrum(spec);
  const Eigen::Index n = sp.values.size();
  Eigen::VectorXd c(n), sn(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    c(k) = std::cos(sp.values(k) * s);
    sn(k) = std::sin(sp.values(k) * s);
  }
  Eigen::MatrixXd cm = sp.vectors * c.asDiagonal() * sp.vectors.transpose();
  Eigen::MatrixXd sm = sp.vectors * sn.asDiagonal() * sp.vectors.transpose();
  MajoranaPropagator o;
  o.n = spec.n;
  o.t = t;
  o.o.resize(2 * n, 2 * n);
  o.o << cm, sm, -sm, cm;
  return o;
}

}  // namespace

MajoranaPropagator majorana_propagator(const ChainSpec& spec, double t) { return rotation(spec, -t, t); }

MajoranaPropagator transfer_map(const ChainSpec& spec, double t) { return rotation(spec, t, t); }

double spectral_symmetry_residual(const ChainSpec& spec) {
  Eigen::MatrixXd h = h1_matrix(spec);
  Eigen::VectorXd d(spec.n);
  for (std::size_t k = 0; k < spec.n; ++k) d(k) = (k % 2 == 0) ? -1.0 : 1.0;
  Eigen::MatrixXd r = d.asDiagonal() * h * d.asDiagonal() + h;
  return r.cwiseAbs().maxCoeff();
}

bool check_spectral_symmetry(const ChainSpec& spec, double tol) { return spectral_symmetry_residual(spec) <= tol; }

bool is_odd_parity_index(std::size_t n, std::size_t index) {
  const std::size_t site = index % n + 1;
  return index < n ? site % 2 == 1 : site % 2 == 0;
}

double parity_block_check(const MajoranaPropagator& o) {
  const std::size_t n2 = 2 * o.n;
  double leak = 0.0;
  for (std::size_t a = 0; a < n2; ++a)
    for (std::size_t b = 0; b < n2; ++b)
      if (is_odd_parity_index(o.n, a) != is_odd_parity_index(o.n, b))
        leak = std::max(leak, std::abs(o.o(Eigen::Index(a), Eigen::Index(b))));
  return leak;
}

double pst_fidelity(const ChainSpec& spec) {
  Eigen::MatrixXcd u = propagator(spec, spec.t0);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < spec.n; ++k)
    worst = std::min(worst, std::abs(u(Eigen::Index(spec.n - 1 - k), Eigen::Index(k))));
  return worst;
}

double pst_deviation(const ChainSpec& spec) {
  Eigen::MatrixXcd u = propagator(spec, spec.t0);
  double dev = 0.0;
  for (std::size_t k = 0; k < spec.n; ++k)
    dev = std::max(dev, std::abs(std::abs(u(Eigen::Index(spec.n - 1 - k), Eigen::Index(k))) - 1.0));
  return dev;
}

}  // namespace pstqec
