#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "pstqec/catalog.hpp"
#include "pstqec/dynamics.hpp"
#include "pstqec/error.hpp"
#include "pstqec/impossibility.hpp"
#include "pstqec/search.hpp"

using namespace pstqec;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.3.0";

enum Exit { kOk = 0, kUsage = 1, kVerification = 2, kTolerance = 3 };

struct Globals {
  unsigned threads = 1;
  std::uint64_t seed = 1;
  Tolerances tol;
  std::string out;
  std::string command_line;
};

unsigned default_threads() {
  if (const char* env = std::getenv("PSTQEC_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return unsigned(v);
    } catch (...) {
    }
  }
  return 1;
}

std::string chain_text(const ChainSpec& s) {
  std::ostringstream os;
  os.precision(17);
  os << "N " << s.n << "\nlambda " << s.lambda << "\nt0 " << s.t0 << "\nJ";
  for (double j : s.couplings) os << ' ' << j;
  os << "\nB";
  for (double b : s.fields) os << ' ' << b;
  os << '\n';
  return os.str();
}

std::string hex32(std::uint32_t v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x", v);
  return buf;
}

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

json base_manifest(const Globals& g) {
  json m;
  m["command_line"] = g.command_line;
  m["seed"] = g.seed;
  m["threads"] = g.threads;
  m["tolerances"] = {{"physics", g.tol.physics}, {"algebra", g.tol.algebra}};
  json sums = json::object();
  for (const auto& f : detail::embedded_catalog_files()) sums[std::string(f.name)] = hex32(crc32(f.content));
  m["catalog_checksums"] = sums;
  m["version"] = kVersion;
  m["timestamp"] = utc_now();
  return m;
}

// Writes the body to --out (plus one manifest beside it) or to stdout.
void emit(const Globals& g, const std::string& body, json manifest) {
  if (g.out.empty()) {
    std::cout << body;
    return;
  }
  {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw MalformedInput("cannot write '" + g.out + "'");
    f << body;
  }
  manifest["output"] = g.out;
  manifest["output_crc32"] = hex32(crc32(body));
  std::ofstream mf(g.out + ".manifest.json", std::ios::binary);
  mf << manifest.dump(2) << '\n';
}

ChainSpec load_chain(std::size_t n, double lambda, const std::string& file) {
  if (!file.empty()) return load_chain_file(file);
  if (n == 0) throw PreconditionError("give --n or --chain");
  return standard_chain(n, lambda);
}

// "0.3t0", "t0", "0.25" (absolute)
double parse_time(const std::string& s, double t0) {
  auto pos = s.find("t0");
  if (pos == std::string::npos) return std::stod(s);
  std::string f = s.substr(0, pos);
  if (!f.empty() && f.back() == '*') f.pop_back();
  const double factor = f.empty() ? 1.0 : std::stod(f);
  return factor * t0;
}

Pauli single_site(char kind, std::size_t site) {
  const std::uint64_t b = std::uint64_t{1} << (site - 1);
  switch (kind) {
    case 'X': return Pauli::hermitian(b, 0);
    case 'Y': return Pauli::hermitian(b, b);
    case 'Z': return Pauli::hermitian(0, b);
  }
  throw MalformedInput("unknown Pauli '" + std::string(1, kind) + "'");
}

CorrectableSet parse_set(const std::string& s) {
  if (s == "parity") return CorrectableSet::OneOfEachParity;
  if (s == "pairs") return CorrectableSet::TwoMajorana;
  throw MalformedInput("unknown correctable set '" + s + "'");
}

json to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

void dump_matrix_csv(const std::string& path, const Eigen::MatrixXcd& m) {
  std::ofstream f(path, std::ios::binary);
  char buf[96];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%s%.17g%+.17gi", j ? "," : "", m(i, j).real(), m(i, j).imag());
      f << buf;
    }
    f << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  for (int i = 0; i < argc; ++i) g.command_line += (i ? " " : "") + std::string(argv[i]);
  g.threads = default_threads();

  CLI::App app{"Majorana-error codes and perfect-state-transfer chains"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.add_option("--threads", g.threads, "worker threads (default: $PSTQEC_THREADS or 1)")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--tol-physics", g.tol.physics, "tolerance for simulated quantities");
  app.add_option("--tol-algebra", g.tol.algebra, "tolerance for matrix identities");

  int status = kOk;

  // code
  auto* code = app.add_subcommand("code", "verify, list and search code tables");
  code->require_subcommand(1);
  std::string code_name;
  auto* verify = code->add_subcommand("verify", "check a catalog code or table file against its claims");
  verify->add_option("code", code_name, "catalog name or table path")->required();
  verify->add_option("--out", g.out, "write the JSON report here");
  verify->callback([&] {
    CatalogEntry e = resolve_code(code_name);
    VerificationReport r = verify_catalog_entry(e);
    auto claims = check_claims(e, r);
    std::string body = report_json(r, claims) + "\n";
    json m = base_manifest(g);
    m["code"] = e.name;
    m["table_crc32"] = hex32(e.checksum);
    emit(g, body, m);
    bool ok = r.symplectic_valid;
    for (auto& c : claims) ok = ok && c.ok;
    status = ok ? kOk : kVerification;
  });

  bool verify_all = false;
  auto* cat = code->add_subcommand("catalog", "list the embedded tables");
  cat->add_flag("--verify", verify_all, "verify every entry");
  cat->add_option("--out", g.out, "write the JSON listing here");
  cat->callback([&] {
    json list = json::array();
    bool ok = true;
    for (auto& e : catalog()) {
      json j;
      j["name"] = e.name;
      j["M"] = e.m;
      j["form"] = e.form;
      j["crc32"] = hex32(e.checksum);
      if (e.meta.count("description")) j["description"] = e.meta.at("description");
      if (verify_all) {
        VerificationReport r = verify_catalog_entry(e);
        bool all = r.symplectic_valid;
        for (auto& c : check_claims(e, r)) all = all && c.ok;
        j["all_claims_verified"] = all;
        ok = ok && all;
      }
      list.push_back(j);
    }
    emit(g, list.dump(2) + "\n", base_manifest(g));
    status = ok ? kOk : kVerification;
  });

  SearchParams sp;
  std::string case_name = "i";
  auto* search = code->add_subcommand("search", "bounded random search for CSS Majorana codes");
  search->add_option("--m", sp.m, "code length")->required();
  search->add_option("--d1", sp.d1, "minimum d1");
  search->add_option("--d2", sp.d2, "minimum d2");
  search->add_option("--case", case_name, "parity case: i, ii or iii");
  search->add_option("--budget", sp.budget, "candidate codes to examine");
  search->add_flag("--restricted", sp.require_restricted, "require the restricted parity check");
  search->add_flag("--lemma1", sp.require_lemma1, "require the two-Majorana check");
  search->add_option("--out", g.out, "write the JSON result here");
  search->callback([&] {
    sp.code_case = parse_case(case_name);
    sp.seed = g.seed;
    sp.threads = g.threads;
    SearchResult r = bounded_search(sp);
    json j;
    j["M"] = sp.m;
    j["d1_min"] = sp.d1;
    j["d2_min"] = sp.d2;
    j["case"] = to_string(sp.code_case);
    j["budget"] = sp.budget;
    j["candidates"] = r.candidates;
    j["found"] = r.code.has_value();
    if (r.code) {
      j["worker"] = r.worker;
      j["h1"] = r.code->h1.to_text();
      j["g2"] = r.code->g2.to_text();
      if (r.code->d1) j["d1"] = *r.code->d1;
      if (r.code->d2) j["d2"] = *r.code->d2;
    }
    emit(g, j.dump(2) + "\n", base_manifest(g));
    status = r.code ? kOk : kVerification;
  });

  // chain
  auto* chain = app.add_subcommand("chain", "chain properties");
  chain->require_subcommand(1);
  std::size_t n = 0;
  double lambda = 1.0;
  std::string chain_file;
  auto* check = chain->add_subcommand("check", "perfect transfer, spectral symmetry and parity blocks");
  check->add_option("--n", n, "standard chain length");
  check->add_option("--lambda", lambda, "coupling scale");
  check->add_option("--chain", chain_file, "chain description file");
  check->add_option("--out", g.out, "write the JSON report here");
  check->callback([&] {
    ChainSpec s = load_chain(n, lambda, chain_file);
    json j;
    j["N"] = s.n;
    j["lambda"] = s.lambda;
    j["t0"] = s.t0;
    const double dev = pst_deviation(s), sym = spectral_symmetry_residual(s);
    double leak = 0;
    for (double f : {0.13, 0.5, 1.0}) leak = std::max(leak, parity_block_check(majorana_propagator(s, f * s.t0)));
    j["pst_deviation"] = dev;
    j["spectral_symmetry_residual"] = sym;
    j["parity_leakage"] = leak;
    j["pst"] = dev <= g.tol.physics;
    j["symmetric_spectrum"] = sym <= g.tol.algebra;
    j["parity_preserving"] = leak <= g.tol.algebra;
    json m = base_manifest(g);
    m["chain_crc32"] = hex32(crc32(chain_text(s)));
    emit(g, j.dump(2) + "\n", m);
    status = (dev <= g.tol.physics && sym <= g.tol.algebra && leak <= g.tol.algebra) ? kOk : kTolerance;
  });

  // simulate
  auto* sim = app.add_subcommand("simulate", "open-system transfer simulations");
  sim->require_subcommand(1);
  std::string sim_code = "steane-7", single_error, pauli_kind = "Z", set_name = "parity";
  std::optional<double> gamma;
  double gmin = 1e-3, gmax = 0.5;
  std::size_t points = 20, steps_enc = 0, steps_bare = 0;
  auto* deph = sim->add_subcommand("dephasing", "dephasing sweep or single-error run");
  deph->add_option("--n", n, "standard chain length");
  deph->add_option("--lambda", lambda, "coupling scale");
  deph->add_option("--chain", chain_file, "chain description file");
  deph->add_option("--code", sim_code, "catalog name or table path");
  deph->add_option("--gamma", gamma, "single dephasing rate (units of lambda)");
  deph->add_option("--gamma-min", gmin, "sweep start");
  deph->add_option("--gamma-max", gmax, "sweep end");
  deph->add_option("--points", points, "log-spaced sweep points")->check(CLI::PositiveNumber);
  deph->add_option("--steps-encoded", steps_enc, "splitting steps for the encoded run (0: automatic)");
  deph->add_option("--steps-unencoded", steps_bare, "splitting steps for the unencoded run (0: automatic)");
  deph->add_option("--set", set_name, "correctable set: parity or pairs");
  deph->add_option("--single-error", single_error, "discrete error 'site,time', e.g. 5,0.3t0");
  deph->add_option("--pauli", pauli_kind, "Pauli for --single-error: X, Y or Z");
  deph->add_option("--out", g.out, "CSV output path");
  deph->callback([&] {
    ChainSpec s = load_chain(n, lambda, chain_file);
    CatalogEntry e = resolve_code(sim_code);
    StabilizerCode c = entry_code(e);
    if (c.m > s.n) throw PreconditionError("code needs " + std::to_string(c.m) + " qubits but the chain has " + std::to_string(s.n));
    const CorrectableSet set = parse_set(set_name);
    json m = base_manifest(g);
    m["code"] = e.name;
    m["table_crc32"] = hex32(e.checksum);
    m["chain_crc32"] = hex32(crc32(chain_text(s)));
    m["correctable_set"] = set_name;
    m["metric"] = "six-state average fidelity after syndrome recovery in the arrival frame";
    if (!single_error.empty()) {
      auto comma = single_error.find(',');
      if (comma == std::string::npos) throw MalformedInput("--single-error expects site,time");
      const std::size_t site = std::stoul(single_error.substr(0, comma));
      if (site < 1 || site > s.n) throw PreconditionError("error site outside the chain");
      if (pauli_kind.size() != 1) throw MalformedInput("--pauli expects X, Y or Z");
      const double t = parse_time(single_error.substr(comma + 1), s.t0);
      ProtocolSetup p = make_protocol(s, c, set);
      SectorEvolver ev(s);
      FidelitySummary f = summarize(p, single_error_outputs(p, ev, single_site(pauli_kind[0], site), t));
      char buf[256];
      std::snprintf(buf, sizeof buf, "site,t,pauli,f_corrected,f_uncorrected,decode_failure_rate\n%zu,%.12f,%s,%.12f,%.12f,%.12e\n",
                    site, t, pauli_kind.c_str(), f.corrected, f.uncorrected, f.failure_rate);
      emit(g, buf, m);
      // dephasing errors are inside every correctable set
      if (pauli_kind == "Z" && std::abs(f.corrected - 1.0) > 1e-8) status = kTolerance;
      return;
    }
    std::vector<double> gammas;
    if (gamma) {
      gammas.push_back(*gamma * s.lambda);
    } else {
      if (!(gmin > 0) || !(gmax >= gmin)) throw PreconditionError("need 0 < gamma-min <= gamma-max");
      for (std::size_t i = 0; i < points; ++i) {
        const double f = points == 1 ? 0.0 : double(i) / double(points - 1);
        gammas.push_back(s.lambda * gmin * std::pow(gmax / gmin, f));
      }
    }
    SweepOptions o;
    o.steps_encoded = steps_enc;
    o.steps_unencoded = steps_bare;
    o.threads = g.threads;
    o.set = set;
    auto pts = run_sweep(s, c, gammas, o);
    json steps = json::array();
    for (double gm : gammas)
      steps.push_back({{"gamma", gm},
                       {"encoded", steps_enc ? steps_enc : default_steps(s, gm, true)},
                       {"unencoded", steps_bare ? steps_bare : default_steps(s, gm, false)}});
    m["integrator"] = "Strang splitting, exact Hamiltonian and dephasing factors";
    m["integrator_steps"] = steps;
    emit(g, sweep_csv(pts), m);
    for (auto& p : pts)
      if (p.gamma == 0.0 && (std::abs(p.f_encoded - 1) > 1e-8 || std::abs(p.f_unencoded - 1) > 1e-8)) status = kTolerance;
  });

  // impossibility
  auto* imp = app.add_subcommand("impossibility", "return-mode and repetition-code numerics");
  imp->require_subcommand(1);
  std::size_t m_region = 0;
  std::string report = "json", dump_prefix;
  double unit_tol = 1e-8;
  auto* wm = imp->add_subcommand("wmatrix", "reflection operator R and its leading block W");
  wm->add_option("--n", n, "standard chain length (even)");
  wm->add_option("--chain", chain_file, "chain description file");
  wm->add_option("--m", m_region, "encoding region size")->required();
  wm->add_option("--report", report, "report format (json)")->check(CLI::IsMember({"json"}));
  wm->add_option("--dump-csv", dump_prefix, "also write R and W as CSV with this prefix");
  wm->add_option("--unit-tol", unit_tol, "distance from 1 counted as a unit singular value");
  wm->add_option("--out", g.out, "write the JSON report here");
  wm->callback([&] {
    ChainSpec s = load_chain(n, 1.0, chain_file);
    ReflectionOperator r = compute_R(s, g.tol.physics);
    ReturnModes w = compute_W(r, m_region);
    json j;
    j["N"] = s.n;
    j["M"] = m_region;
    j["R"] = {{"hermitian_residual", r.hermitian_residual},
              {"involution_residual", r.involution_residual},
              {"max_abs_diagonal", r.max_diagonal},
              {"min_abs_antidiagonal", r.min_antidiagonal},
              {"max_abs_same_parity", r.checkerboard}};
    j["singular_values"] = to_json(w.singular);
    j["one_minus_singular_values"] = to_json(w.defect);
    j["max_sigma"] = w.max_sigma;
    j["gap"] = w.gap;
    j["unit_singular_values"] = w.unit_count(unit_tol);
    if (2 * m_region <= s.n) {
      json rows = json::array();
      for (auto& d : disc_bound_report(r, m_region, g.tol.physics))
        rows.push_back({{"row", d.row},
                        {"w_ii_abs", std::abs(d.diagonal)},
                        {"row_sum", d.row_sum},
                        {"excluded", d.excluded},
                        {"antidiagonal", d.antidiagonal},
                        {"ok", d.ok}});
      j["disc_rows"] = rows;
    }
    AntidiagReport a = verify_antidiag_formula(s);
    j["antidiagonal_identity"] = {{"max_relative_deviation", a.max_relative_deviation},
                                  {"sign_mismatches", a.sign_mismatches},
                                  {"recurrence_residual", a.recurrence_residual},
                                  {"symmetry_residual", a.symmetry_residual}};
    bool ok;
    if (2 * m_region <= s.n) {
      ok = w.max_sigma < 1.0 && w.gap > 0;
      j["contract"] = "max singular value below 1";
    } else if (2 * m_region == s.n + 2) {
      ok = w.unit_count(unit_tol) >= 2;
      j["contract"] = "at least two unit singular values";
    } else {
      ok = true;
      j["contract"] = "none";
    }
    j["contract_met"] = ok;
    if (!dump_prefix.empty()) {
      dump_matrix_csv(dump_prefix + "R.csv", r.r);
      dump_matrix_csv(dump_prefix + "W.csv", w.w);
    }
    json man = base_manifest(g);
    man["chain_crc32"] = hex32(crc32(chain_text(s)));
    emit(g, j.dump(2) + "\n", man);
    status = ok ? kOk : kTolerance;
  });

  std::size_t rep = 1, err_site = 0;
  std::string t_err = "0.5t0";
  std::optional<double> max_error, min_error;
  auto* repc = imp->add_subcommand("repetition", "repetition-code transfer with one bit flip");
  repc->add_option("--n", n, "standard chain length")->required();
  repc->add_option("--rep", rep, "repetition length (odd)")->required();
  repc->add_option("--site", err_site, "bit-flip site, 0 for none (default: middle site)");
  repc->add_option("--t-err", t_err, "bit-flip time, e.g. 0.5t0");
  repc->add_option("--max-error", max_error, "upper bound on the error probability");
  repc->add_option("--min-error", min_error, "lower bound on the error probability");
  repc->add_option("--out", g.out, "write the JSON report here");
  repc->callback([&] {
    ChainSpec s = standard_chain(n);
    if (!repc->count("--site")) err_site = (n + 1) / 2;
    const double t = parse_time(t_err, s.t0);
    RepetitionResult r = repetition_experiment(n, rep, err_site, t);
    // reference bounds for the N=21 middle-site configuration unless given explicitly
    if (!max_error && !min_error && n == 21 && err_site == 11) {
      if (rep == 1) min_error = 0.75, max_error = 0.95;
      if (rep == 3) min_error = 0.02, max_error = 0.15;
      if (rep == 5) max_error = 1e-3;
    }
    json j;
    j["N"] = n;
    j["rep"] = rep;
    j["error_site"] = err_site;
    j["t_err"] = t;
    j["error_probability"] = r.error_probability;
    j["flip_probability"] = {r.flip_probability[0], r.flip_probability[1]};
    j["six_state_infidelity"] = r.six_state_infidelity;
    bool ok = true;
    if (max_error) ok = ok && r.error_probability <= *max_error;
    if (min_error) ok = ok && r.error_probability >= *min_error;
    j["bounds"] = {{"min", min_error ? json(*min_error) : json(nullptr)}, {"max", max_error ? json(*max_error) : json(nullptr)}};
    j["within_bounds"] = ok;
    json man = base_manifest(g);
    man["metric"] = "error_probability: worst logical bit-flip probability over |0_L>, |1_L> after majority vote in the arrival frame; "
                    "six_state_infidelity: 1 - six-state average fidelity after the same vote";
    emit(g, j.dump(2) + "\n", man);
    status = ok ? kOk : kTolerance;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const MalformedInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity failure: " << e.what() << '\n';
    return kVerification;
  } catch (const EncodingError& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return kVerification;
  } catch (const NumericalError& e) {
    std::cerr << "tolerance breach: " << e.what() << '\n';
    return kTolerance;
  } catch (const FrameError& e) {
    std::cerr << "tolerance breach: " << e.what() << '\n';
    return kTolerance;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return status;
}
