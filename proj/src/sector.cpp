#include "pstqec/sector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "pstqec/error.hpp"

namespace pstqec {

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

SectorBasis::SectorBasis(std::size_t n, std::size_t w) : n_(n), w_(w) {
  if (n > 63) throw CapacityError("sector bases are limited to 63 sites");
  if (w > n) throw MalformedInput("sector weight exceeds site count");
  states_.reserve(binomial(n, w));
  if (w == 0) {
    states_.push_back(0);
    return;
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t x = (std::uint64_t{1} << w) - 1;
  while (x < limit) {
    states_.push_back(x);
    // Gosper's hack: next larger integer with the same popcount
    std::uint64_t c = x & (~x + 1);
    std::uint64_t r = x + c;
    x = (((r ^ x) >> 2) / c) | r;
  }
}

std::size_t SectorBasis::index_of(std::uint64_t x) const {
  std::size_t idx = 0, i = 1;
  while (x) {
    const std::size_t p = static_cast<std::size_t>(std::countr_zero(x));
    idx += binomial(p, i);
    x &= x - 1;
    ++i;
  }
  return idx;
}

const SectorBasis& shared_basis(std::size_t n, std::size_t w) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<SectorBasis>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, w}];
  if (!slot) slot = std::make_unique<SectorBasis>(n, w);
  return *slot;
}

Eigen::SparseMatrix<double, Eigen::RowMajor> sector_hamiltonian(const ChainSpec& spec, const SectorBasis& basis) {
  validate(spec);
  double offset = 0.0;
  for (double b : spec.fields) offset -= 0.5 * b;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(basis.size() * (spec.n + 1));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::uint64_t x = basis.state(i);
    double diag = offset;
    for (std::size_t k = 0; k < spec.n; ++k)
      if ((x >> k) & 1) diag += spec.fields[k];
    if (diag != 0.0) trip.emplace_back(int(i), int(i), diag);
    for (std::size_t k = 0; k + 1 < spec.n; ++k) {
      const bool a = (x >> k) & 1, b = (x >> (k + 1)) & 1;
      if (a == b) continue;
      const std::uint64_t y = x ^ (std::uint64_t{3} << k);
      trip.emplace_back(int(i), int(basis.index_of(y)), spec.couplings[k]);
    }
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> h(basis.size(), basis.size());
  h.setFromTriplets(trip.begin(), trip.end());
  return h;
}

SectorEvolver::SectorEvolver(ChainSpec spec, std::size_t dense_limit)
    : spec_(std::move(spec)), dense_limit_(dense_limit) {
  validate(spec_);
  single_particle_ = spectrum(spec_).values;
}

const SectorEvolver::Sector& SectorEvolver::sector(std::size_t w) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = sectors_.find(w);
  if (it != sectors_.end()) return *it->second;
  auto s = std::make_unique<Sector>();
  s->basis = std::make_unique<SectorBasis>(spec_.n, w);
  s->h = sector_hamiltonian(spec_, *s->basis);
  double offset = 0.0;
  for (double b : spec_.fields) offset -= 0.5 * b;
  s->emin = offset + single_particle_.head(Eigen::Index(w)).sum();
  s->emax = offset + single_particle_.tail(Eigen::Index(w)).sum();
  s->dense = s->basis->size() <= dense_limit_;
  if (s->dense) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(s->h));
    if (es.info() != Eigen::Success) throw NumericalError("sector eigendecomposition failed");
    s->energies = es.eigenvalues();
    s->vectors = es.eigenvectors();
  }
  auto& ref = *s;
  sectors_.emplace(w, std::move(s));
  return ref;
}

const SectorBasis& SectorEvolver::basis(std::size_t w) const { return *sector(w).basis; }

bool SectorEvolver::is_dense(std::size_t w) const { return sector(w).dense; }

Eigen::MatrixXcd SectorEvolver::propagator(std::size_t w, double t) const {
  const Sector& s = sector(w);
  if (!s.dense) throw CapacityError("sector too large for a dense propagator");
  Eigen::VectorXcd ph(s.energies.size());
  for (Eigen::Index k = 0; k < ph.size(); ++k) ph(k) = std::polar(1.0, -s.energies(k) * t);
  Eigen::MatrixXcd v = s.vectors.cast<cplx>();
  return v * ph.asDiagonal() * v.transpose();
}

void SectorEvolver::apply(std::size_t w, double t, Eigen::VectorXcd& v) const {
  const Sector& s = sector(w);
  if (std::size_t(v.size()) != s.basis->size()) throw MalformedInput("vector does not match sector dimension");
  if (t == 0.0) return;
  if (s.dense) {
    Eigen::VectorXcd c = s.vectors.transpose().cast<cplx>() * v;
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::polar(1.0, -s.energies(k) * t);
    v = s.vectors.cast<cplx>() * c;
    return;
  }
  chebyshev(s, t, v);
}

void SectorEvolver::chebyshev(const Sector& s, double t, Eigen::VectorXcd& v) const {
  const double center = 0.5 * (s.emax + s.emin);
  const double half = 0.5 * (s.emax - s.emin) * 1.01 + 1e-9;
  const double x = half * std::abs(t);
  const double sgn = t < 0 ? -1.0 : 1.0;
  auto apply_scaled = [&](const Eigen::VectorXcd& in) -> Eigen::VectorXcd {
    return (s.h * in - center * in) / half;
  };
  Eigen::VectorXcd tprev = v;
  Eigen::VectorXcd tcur = apply_scaled(v);
  Eigen::VectorXcd acc = std::cyl_bessel_j(0.0, x) * tprev;
  const std::size_t kmax = static_cast<std::size_t>(x + 20.0 * std::cbrt(x + 1.0) + 40.0);
  cplx mi(0.0, -sgn);
  cplx ph = mi;
  for (std::size_t k = 1; k <= kmax; ++k) {
    const double jk = std::cyl_bessel_j(double(k), x);
    acc += 2.0 * ph * jk * tcur;
    if (double(k) > x && std::abs(jk) < 1e-17) break;
    Eigen::VectorXcd tnext = 2.0 * apply_scaled(tcur) - tprev;
    tprev.swap(tcur);
    tcur.swap(tnext);
    ph *= mi;
  }
  v = std::polar(1.0, -center * t) * acc;
}

}  // namespace pstqec
