#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "oracles/lindblad.hpp"
#include "pstqec/catalog.hpp"
#include "pstqec/dynamics.hpp"
#include "pstqec/impossibility.hpp"

using namespace pstqec;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

Outcome criterion1() {
  bool ok = true;
  std::string d;
  double slowest = 0;
  auto timed = [&](const std::string& name) {
    auto t = std::chrono::steady_clock::now();
    auto r = verify_catalog_entry(catalog_entry(name));
    slowest = std::max(slowest, seconds_since(t));
    return r;
  };
  auto c13 = timed("css-13");
  ok = ok && c13.d1 == 5u && c13.d2 == 3u && c13.css_nested == true && c13.code_case == CodeCase::i;
  d += fmt("css-13 d1=%zu d2=%zu case=%s; ", c13.d1.value_or(0), c13.d2.value_or(0), to_string(*c13.code_case).c_str());
  auto c15 = timed("css-15");
  StabilizerCode s15 = entry_code(catalog_entry("css-15"));
  BitVec allz(30);
  for (std::size_t i = 0; i < 15; ++i) allz.set(i, true);
  const bool has_allz = RowSpace(s15.generators).contains(allz);
  ok = ok && c15.d1 == 5u && c15.d2 == 3u && c15.css_nested == true && has_allz && c15.code_case == CodeCase::iii;
  d += fmt("css-15 d1=%zu d2=%zu Z^15 in S=%d case=%s; ", c15.d1.value_or(0), c15.d2.value_or(0), int(has_allz),
           to_string(*c15.code_case).c_str());
  auto c10 = timed("case3-10");
  ok = ok && c10.code_case == CodeCase::iii && c10.restricted_parity_check == true;
  d += fmt("case3-10 case=%s restricted=%d (%zu conflicts); slowest %.3fs", to_string(*c10.code_case).c_str(),
           int(c10.restricted_parity_check.value_or(false)), c10.restricted_conflicts, slowest);
  ok = ok && slowest < 1.0;
  return {ok, d};
}

Outcome criterion2() {
  bool ok = true;
  std::string d;
  for (std::string name : {"css-13", "css-15"}) {
    StabilizerCode c = entry_code(catalog_entry(name));
    auto r = lemma1_pair_check_detail(c, build_error_map(c.m, ErrorMapKind::Eprime));
    ok = ok && r.ok;
    d += fmt("%s: %zu errors, %zu conflicts; ", name.c_str(), r.errors, r.conflicts);
  }
  return {ok, d};
}

Outcome criterion3() {
  std::set<std::pair<std::size_t, std::size_t>> hits;
  for (std::size_t m = 1; m <= 31; ++m)
    for (std::size_t k = 1; k <= m; ++k)
      if (perfect_check(m, k, 1)) hits.insert({m, k});
  const std::set<std::pair<std::size_t, std::size_t>> expected = {{7, 1}, {15, 7}, {31, 21}};
  const bool five = perfect_check(5, 1, 1);
  std::string list;
  for (auto [m, k] : hits) list += fmt("(%zu,%zu,1) ", m, k);
  return {hits == expected && !five, "true for " + list + fmt("; (5,1,1)=%d", int(five))};
}

Outcome criterion4() {
  auto t = std::chrono::steady_clock::now();
  double worst = 0;
  for (std::size_t n = 2; n <= 64; ++n) worst = std::max(worst, pst_deviation(standard_chain(n)));
  const double secs = seconds_since(t);
  return {worst < 1e-10 && secs < 10, fmt("max ||<N+1-n|U|n>|-1| = %.2e over N=2..64 in %.2fs", worst, secs)};
}

Outcome criterion5() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ud(0.0, 10.0);
  double worst = 0, control = 0;
  for (std::size_t n = 4; n <= 20; ++n) {
    ChainSpec s = standard_chain(n);
    for (int i = 0; i < 10; ++i) worst = std::max(worst, parity_block_check(majorana_propagator(s, ud(rng) * s.t0)));
  }
  ChainSpec bad = standard_chain(8);
  bad.fields[0] = bad.lambda;
  for (int i = 0; i < 10; ++i) control = std::max(control, parity_block_check(majorana_propagator(bad, ud(rng) * bad.t0)));
  return {worst < 1e-12 && control > 0.1, fmt("max leakage %.2e (N=4..20, 10 times each); B1=lambda control %.3f", worst, control)};
}

Outcome criterion6() {
  auto t = std::chrono::steady_clock::now();
  ChainSpec s = standard_chain(12);
  ProtocolSetup p = make_protocol(s, entry_code(catalog_entry("steane-7")), CorrectableSet::OneOfEachParity);
  SectorEvolver ev(s);
  double worst = 1.0;
  for (std::size_t site = 1; site <= 12; ++site)
    for (int k = 0; k <= 20; ++k) {
      auto out = single_error_outputs(p, ev, Pauli::hermitian(0, std::uint64_t{1} << (site - 1)), s.t0 * k / 20.0);
      worst = std::min(worst, summarize(p, out).corrected);
    }
  return {std::abs(worst - 1.0) < 1e-8, fmt("min corrected fidelity %.14f over 12 sites x 21 times (%.1fs)", worst, seconds_since(t))};
}

Outcome criterion7() {
  std::mt19937_64 rng(77);
  double worst = 0;
  ChainSpec s = standard_chain(4);
  SectorEvolver ev(s);
  for (double gamma : {0.01, 0.1}) {
    Eigen::VectorXcd a = oracle::random_state(4, rng);
    SectorState rho = SectorState::from_pure(PureState::from_dense(4, a));
    oracle::Mat ref = oracle::lindblad_rk4(s, gamma, s.t0, 20000, a * a.adjoint());
    SectorState out = evolve_dephasing(rho, ev, gamma, s.t0, 2000);
    worst = std::max(worst, (out.to_dense() - ref).cwiseAbs().maxCoeff());
  }
  return {worst < 1e-6, fmt("max element deviation %.2e (N=4, gamma 0.01 and 0.1, RK4 reference)", worst)};
}

Outcome criterion8() {
  auto t = std::chrono::steady_clock::now();
  ChainSpec s = standard_chain(12);
  std::vector<double> gammas;
  const std::size_t points = 20;
  for (std::size_t i = 0; i < points; ++i) gammas.push_back(1e-3 * std::pow(500.0, double(i) / double(points - 1)));
  SweepOptions o;
  o.threads = std::max(1u, std::thread::hardware_concurrency());
  auto pts = run_sweep(s, entry_code(catalog_entry("steane-7")), gammas, o);
  bool mono = true;
  int sign_changes = 0;
  bool starts_above = pts.front().f_encoded > pts.front().f_unencoded;
  double crossover = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    mono = mono && pts[i].f_encoded <= pts[i - 1].f_encoded + 1e-9 && pts[i].f_unencoded <= pts[i - 1].f_unencoded + 1e-9;
    const bool above_prev = pts[i - 1].f_encoded > pts[i - 1].f_unencoded;
    const bool above = pts[i].f_encoded > pts[i].f_unencoded;
    if (above != above_prev) {
      ++sign_changes;
      crossover = std::sqrt(pts[i - 1].gamma * pts[i].gamma);
    }
  }
  const bool ends_below = pts.back().f_encoded < pts.back().f_unencoded;
  const bool ok = mono && starts_above && ends_below && sign_changes == 1;
  return {ok, fmt("gamma in [1e-3, 0.5]: crossover near %.3g, encoded %.6f vs %.6f at 1e-3, %.6f vs %.6f at 0.5; monotone=%d (%.0fs)",
                  crossover, pts.front().f_encoded, pts.front().f_unencoded, pts.back().f_encoded, pts.back().f_unencoded,
                  int(mono), seconds_since(t))};
}

Outcome criterion9() {
  bool ok = true;
  double diag = 0, anti = 1, dev = 0, sigma = 0, gap = 1;
  std::size_t min_units = 99;
  for (std::size_t n = 4; n <= 20; n += 2) {
    ChainSpec s = standard_chain(n);
    ReflectionOperator r = compute_R(s);
    diag = std::max(diag, r.max_diagonal);
    anti = std::min(anti, r.min_antidiagonal);
    dev = std::max(dev, verify_antidiag_formula(s).max_relative_deviation);
    for (std::size_t m = 1; m <= n / 2; ++m) {
      ReturnModes w = compute_W(r, m);
      sigma = std::max(sigma, w.max_sigma);
      gap = std::min(gap, w.gap);
      ok = ok && w.max_sigma < 1.0 && w.gap > 0;
    }
    min_units = std::min(min_units, compute_W(r, n / 2 + 1).unit_count(1e-8));
  }
  ok = ok && diag < 1e-10 && anti > 1e-8 && dev < 1e-9 && min_units >= 2;
  return {ok, fmt("max|R_nn| %.1e, min|R_n,N+1-n| %.3e, identity dev %.1e, max sigma(M<=N/2) 1-%.2e, min unit count at N/2+1 = %zu",
                  diag, anti, dev, gap, min_units)};
}

Outcome criterion10() {
  ChainSpec s = standard_chain(21);
  SectorEvolver ev(s);
  double p[3];
  int i = 0;
  for (std::size_t rep : {1u, 3u, 5u}) p[i++] = repetition_experiment(21, rep, 11, s.t0 / 2, &ev).error_probability;
  const bool ok = p[0] > p[1] && p[1] > p[2] && p[0] >= 0.75 && p[0] <= 0.95 && p[1] >= 0.02 && p[1] <= 0.15 && p[2] <= 1e-3;
  return {ok, fmt("rep1 %.4f, rep3 %.4f, rep5 %.2e (worst logical bit-flip after majority vote)", p[0], p[1], p[2])};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome criterion11() {
#ifndef PSTQEC_CLI
  return {false, "CLI not built"};
#else
  const std::string cli = PSTQEC_CLI;
  const std::vector<std::string> runs = {
      "simulate dephasing --n 9 --code steane-7 --gamma-min 0.001 --gamma-max 0.1 --points 3 --steps-encoded 3",
      "code verify css-13",
      "impossibility wmatrix --n 10 --m 5",
      "--seed 9 code search --m 7 --d1 3 --d2 3 --case ii",
  };
  bool ok = true;
  std::string d;
  int idx = 0;
  for (const auto& args : runs) {
    std::string body[2];
    for (int r = 0; r < 2; ++r) {
      const std::string out = fmt("acceptance_determinism_%d_%d.out", idx, r);
      const std::string cmd = "\"" + cli + "\" " + args + " --out " + out;
      const int rc = std::system(cmd.c_str());
      body[r] = slurp(out);
      ok = ok && rc == 0 && !body[r].empty() && !slurp(out + ".manifest.json").empty();
      std::remove(out.c_str());
      std::remove((out + ".manifest.json").c_str());
    }
    const bool same = body[0] == body[1];
    ok = ok && same;
    d += fmt("[%s] %s; ", args.c_str(), same ? "identical" : "DIFFERENT");
    ++idx;
  }
  return {ok, d};
#endif
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"catalog verification", criterion1},  {"two-Majorana check", criterion2},
      {"perfect-code identity", criterion3}, {"perfect state transfer", criterion4},
      {"parity blocks", criterion5}, {"single dephasing correction", criterion6},
      {"lindblad oracle equivalence", criterion7}, {"fidelity crossover", criterion8},
      {"impossibility numerics", criterion9}, {"repetition experiment", criterion10},
      {"determinism", criterion11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(int(i + 1))) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
