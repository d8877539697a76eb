#include "pstqec/state.hpp"

#include <bit>
#include <cmath>
#include <unordered_map>

#include "pstqec/error.hpp"

namespace pstqec {

namespace {

std::size_t weight_of(std::uint64_t x) { return static_cast<std::size_t>(std::popcount(x)); }

std::uint64_t region_mask(std::size_t offset, std::size_t m) {
  const std::uint64_t low = m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  return low << offset;
}

// Indices of a sector basis grouped by the bits outside the region.
using RestGroups = std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>>;

RestGroups group_by_rest(const SectorBasis& b, std::size_t offset, std::size_t m) {
  const std::uint64_t mask = region_mask(offset, m);
  RestGroups g;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const std::uint64_t x = b.state(i);
    g[x & ~mask].emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>((x & mask) >> offset));
  }
  return g;
}

}  // namespace

PureState PureState::from_dense(std::size_t n, const Eigen::VectorXcd& psi, double drop) {
  if (psi.size() != (Eigen::Index(1) << n)) throw MalformedInput("dense vector has the wrong length");
  PureState s(n);
  for (Eigen::Index x = 0; x < psi.size(); ++x)
    if (std::abs(psi(x)) > drop) s.add(static_cast<std::uint64_t>(x), psi(x));
  return s;
}

Eigen::VectorXcd PureState::to_dense() const {
  if (n_ > 24) throw CapacityError("dense state vectors are limited to 24 qubits");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index(1) << n_);
  for_each([&](std::uint64_t x, cplx a) { psi(Eigen::Index(x)) += a; });
  return psi;
}

std::set<std::size_t> PureState::support() const {
  std::set<std::size_t> s;
  for (auto& [w, v] : sectors_)
    if (v.squaredNorm() > 0) s.insert(w);
  return s;
}

cplx PureState::amplitude(std::uint64_t x) const {
  auto it = sectors_.find(weight_of(x));
  if (it == sectors_.end()) return 0.0;
  return it->second(Eigen::Index(shared_basis(n_, it->first).index_of(x)));
}

void PureState::add(std::uint64_t x, cplx a) {
  const std::size_t w = weight_of(x);
  const SectorBasis& b = shared_basis(n_, w);
  auto it = sectors_.find(w);
  if (it == sectors_.end()) it = sectors_.emplace(w, Eigen::VectorXcd::Zero(Eigen::Index(b.size()))).first;
  it->second(Eigen::Index(b.index_of(x))) += a;
}

double PureState::norm() const {
  double s = 0;
  for (auto& [w, v] : sectors_) s += v.squaredNorm();
  return std::sqrt(s);
}

void PureState::scale(cplx s) {
  for (auto& [w, v] : sectors_) v *= s;
}

PureState& PureState::operator+=(const PureState& o) {
  if (o.n_ != n_) throw MalformedInput("adding states of different sizes");
  for (auto& [w, v] : o.sectors_) {
    auto it = sectors_.find(w);
    if (it == sectors_.end()) sectors_.emplace(w, v);
    else it->second += v;
  }
  return *this;
}

PureState PureState::evolved(const SectorEvolver& ev, double t) const {
  if (ev.n() != n_) throw MalformedInput("evolver and state sizes differ");
  PureState out = *this;
  for (auto& [w, v] : out.sectors_) ev.apply(w, t, v);
  return out;
}

PureState PureState::apply(const Pauli& p) const {
  PureState out(n_);
  for_each([&](std::uint64_t x, cplx a) {
    auto [y, ph] = p.act(x);
    out.add(y, ph * a);
  });
  return out;
}

void PureState::for_each(const std::function<void(std::uint64_t, cplx)>& fn) const {
  for (auto& [w, v] : sectors_) {
    const SectorBasis& b = shared_basis(n_, w);
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (v(i) != cplx(0.0)) fn(b.state(std::size_t(i)), v(i));
  }
}

Eigen::MatrixXcd reduce_cross(const PureState& a, const PureState& b, std::size_t offset, std::size_t m) {
  if (a.n() != b.n()) throw MalformedInput("reduce_cross: state sizes differ");
  if (offset + m > a.n()) throw MalformedInput("reduce_cross: region outside the chain");
  const std::uint64_t mask = region_mask(offset, m);
  std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint32_t, cplx>>> by_rest;
  b.for_each([&](std::uint64_t y, cplx v) {
    by_rest[y & ~mask].emplace_back(static_cast<std::uint32_t>((y & mask) >> offset), std::conj(v));
  });
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(Eigen::Index(1) << m, Eigen::Index(1) << m);
  a.for_each([&](std::uint64_t x, cplx u) {
    auto it = by_rest.find(x & ~mask);
    if (it == by_rest.end()) return;
    const Eigen::Index r = Eigen::Index((x & mask) >> offset);
    for (auto& [c, v] : it->second) rho(r, c) += u * v;
  });
  return rho;
}

SectorState SectorState::from_pure(const PureState& psi) {
  SectorState s(psi.n());
  for (auto& [a, va] : psi.sectors())
    for (auto& [b, vb] : psi.sectors())
      if (a <= b) s.blocks_[{a, b}] = va * vb.adjoint();
  return s;
}

std::set<std::size_t> SectorState::support() const {
  std::set<std::size_t> s;
  for (auto& [k, m] : blocks_)
    if (k.first == k.second) s.insert(k.first);
  return s;
}

bool SectorState::has_block(std::size_t a, std::size_t b) const {
  return blocks_.count({std::min(a, b), std::max(a, b)}) > 0;
}

Eigen::MatrixXcd SectorState::block(std::size_t a, std::size_t b) const {
  auto it = blocks_.find({std::min(a, b), std::max(a, b)});
  if (it == blocks_.end()) return {};
  return a <= b ? it->second : Eigen::MatrixXcd(it->second.adjoint());
}

double SectorState::trace() const {
  double t = 0;
  for (auto& [k, m] : blocks_)
    if (k.first == k.second) t += m.trace().real();
  return t;
}

double SectorState::purity() const {
  double p = 0;
  for (auto& [k, m] : blocks_) p += (k.first == k.second ? 1.0 : 2.0) * m.squaredNorm();
  return p;
}

Eigen::MatrixXcd SectorState::to_dense() const {
  if (n_ > 12) throw CapacityError("dense density matrices are limited to 12 qubits");
  const Eigen::Index dim = Eigen::Index(1) << n_;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (auto& [k, m] : blocks_) {
    const SectorBasis& ba = shared_basis(n_, k.first);
    const SectorBasis& bb = shared_basis(n_, k.second);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const auto x = Eigen::Index(ba.state(std::size_t(i))), y = Eigen::Index(bb.state(std::size_t(j)));
        rho(x, y) = m(i, j);
        if (k.first != k.second) rho(y, x) = std::conj(m(i, j));
      }
  }
  return rho;
}

SectorState SectorState::apply(const Pauli& p) const {
  SectorState out(n_);
  auto target = [&](std::size_t a, std::size_t b) -> Eigen::MatrixXcd& {
    auto& m = out.blocks_[{a, b}];
    if (m.size() == 0)
      m = Eigen::MatrixXcd::Zero(Eigen::Index(shared_basis(n_, a).size()), Eigen::Index(shared_basis(n_, b).size()));
    return m;
  };
  for (auto& [k, m] : blocks_) {
    const auto [a, b] = k;
    const SectorBasis& ba = shared_basis(n_, a);
    const SectorBasis& bb = shared_basis(n_, b);
    std::vector<std::uint64_t> xs(ba.size()), ys(bb.size());
    std::vector<cplx> ax(ba.size()), ay(bb.size());
    for (std::size_t i = 0; i < ba.size(); ++i) std::tie(xs[i], ax[i]) = p.act(ba.state(i));
    for (std::size_t j = 0; j < bb.size(); ++j) {
      std::tie(ys[j], ay[j]) = p.act(bb.state(j));
      ay[j] = std::conj(ay[j]);
    }
    for (std::size_t i = 0; i < ba.size(); ++i) {
      const std::size_t a2 = weight_of(xs[i]);
      const std::size_t ix = shared_basis(n_, a2).index_of(xs[i]);
      for (std::size_t j = 0; j < bb.size(); ++j) {
        const cplx v = m(Eigen::Index(i), Eigen::Index(j)) * ax[i] * ay[j];
        const std::size_t b2 = weight_of(ys[j]);
        const std::size_t iy = shared_basis(n_, b2).index_of(ys[j]);
        if (a == b) {
          if (a2 <= b2) target(a2, b2)(Eigen::Index(ix), Eigen::Index(iy)) += v;
        } else if (a2 < b2) {
          target(a2, b2)(Eigen::Index(ix), Eigen::Index(iy)) += v;
        } else if (a2 > b2) {
          target(b2, a2)(Eigen::Index(iy), Eigen::Index(ix)) += std::conj(v);
        } else {
          auto& t = target(a2, b2);
          t(Eigen::Index(ix), Eigen::Index(iy)) += v;
          t(Eigen::Index(iy), Eigen::Index(ix)) += std::conj(v);
        }
      }
    }
  }
  return out;
}

SectorState SectorState::evolved(const SectorEvolver& ev, double t) const {
  if (ev.n() != n_) throw MalformedInput("evolver and state sizes differ");
  std::map<std::size_t, Eigen::MatrixXcd> u;
  for (auto w : support()) u[w] = ev.propagator(w, t);
  for (auto& [k, m] : blocks_) {
    if (!u.count(k.first)) u[k.first] = ev.propagator(k.first, t);
    if (!u.count(k.second)) u[k.second] = ev.propagator(k.second, t);
  }
  SectorState out(n_);
  for (auto& [k, m] : blocks_) out.blocks_[k] = u[k.first] * m * u[k.second].adjoint();
  return out;
}

SectorState SectorState::dephased(double gamma, double t) const {
  SectorState out = *this;
  for (auto& [k, m] : out.blocks_) {
    const SectorBasis& ba = shared_basis(n_, k.first);
    const SectorBasis& bb = shared_basis(n_, k.second);
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        m(i, j) *= std::exp(-2.0 * gamma * t * double(std::popcount(ba.state(std::size_t(i)) ^ bb.state(std::size_t(j)))));
  }
  return out;
}

Eigen::MatrixXcd SectorState::reduce(std::size_t offset, std::size_t m,
                                     const std::function<bool(std::size_t, std::size_t)>& keep) const {
  if (offset + m > n_) throw MalformedInput("reduce: region outside the chain");
  const Eigen::Index dim = Eigen::Index(1) << m;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  std::map<std::size_t, RestGroups> groups;
  auto grp = [&](std::size_t w) -> const RestGroups& {
    auto it = groups.find(w);
    if (it == groups.end()) it = groups.emplace(w, group_by_rest(shared_basis(n_, w), offset, m)).first;
    return it->second;
  };
  auto accumulate = [&](std::size_t a, std::size_t b, const Eigen::MatrixXcd& blk, bool adjoint) {
    const RestGroups& ga = grp(a);
    const RestGroups& gb = grp(b);
    for (auto& [rest, la] : ga) {
      auto it = gb.find(rest);
      if (it == gb.end()) continue;
      for (auto& [ia, ra] : la)
        for (auto& [ib, rb] : it->second) {
          const cplx v = adjoint ? std::conj(blk(Eigen::Index(ib), Eigen::Index(ia))) : blk(Eigen::Index(ia), Eigen::Index(ib));
          rho(Eigen::Index(ra), Eigen::Index(rb)) += v;
        }
    }
  };
  for (auto& [k, blk] : blocks_) {
    const auto [a, b] = k;
    if (!keep || keep(a, b)) accumulate(a, b, blk, false);
    if (a != b && (!keep || keep(b, a))) accumulate(b, a, blk, true);
  }
  return rho;
}

SectorState evolve_dephasing(const SectorState& rho, const SectorEvolver& ev, double gamma, double t,
                             std::size_t steps) {
  if (gamma < 0) throw PreconditionError("dephasing rate must be non-negative");
  if (!(t > 0)) throw PreconditionError("evolution time must be positive");
  if (gamma == 0.0) return rho.evolved(ev, t);
  steps = std::max<std::size_t>(steps, 1);
  const double dt = t / double(steps);
  const std::size_t n = rho.n();

  std::set<std::size_t> sectors;
  for (auto& [k, m] : rho.blocks()) {
    sectors.insert(k.first);
    sectors.insert(k.second);
  }
  std::map<std::size_t, Eigen::MatrixXcd> full, half;
  for (auto w : sectors) {
    full[w] = ev.propagator(w, dt);
    half[w] = ev.propagator(w, 0.5 * dt);
  }
  SectorState out = rho;
  auto& blocks = out.mutable_blocks();
  for (auto& [k, m] : blocks) {
    const auto [a, b] = k;
    const SectorBasis& ba = shared_basis(n, a);
    const SectorBasis& bb = shared_basis(n, b);
    Eigen::MatrixXd damp(m.rows(), m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        damp(i, j) = std::exp(-2.0 * gamma * dt * double(std::popcount(ba.state(std::size_t(i)) ^ bb.state(std::size_t(j)))));
    Eigen::MatrixXcd cur = half[a] * m * half[b].adjoint();
    for (std::size_t s = 0; s < steps; ++s) {
      cur.array() *= damp.array();
      const auto& ua = s + 1 < steps ? full[a] : half[a];
      const auto& ub = s + 1 < steps ? full[b] : half[b];
      cur = ua * cur * ub.adjoint();
    }
    m = std::move(cur);
  }
  return out;
}

}  // namespace pstqec
