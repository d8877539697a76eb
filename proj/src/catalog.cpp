#include "pstqec/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <boost/crc.hpp>
#include <json.hpp>

#include "pstqec/error.hpp"

namespace pstqec {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::map<std::string, std::string> read_header(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (t.empty() || t[0] != '#') continue;
    auto body = t.substr(1);
    auto colon = body.find(':');
    if (colon == std::string::npos) continue;
    out[trim(body.substr(0, colon))] = trim(body.substr(colon + 1));
  }
  return out;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

std::uint32_t crc32(std::string_view bytes) {
  boost::crc_32_type c;
  c.process_bytes(bytes.data(), bytes.size());
  return c.checksum();
}

CatalogEntry parse_catalog_text(std::string_view text, const std::string& fallback_name) {
  CatalogEntry e;
  auto header = read_header(text);
  e.name = header.count("name") ? header["name"] : fallback_name;
  e.form = header.count("form") ? header["form"] : "check";
  e.checksum = crc32(text);
  for (auto& [k, v] : header) {
    if (k.rfind("claim.", 0) == 0) {
      Claim c;
      c.key = k.substr(6);
      if (v.rfind(">=", 0) == 0) {
        c.relation = ">=";
        c.value = trim(v.substr(2));
      } else {
        c.value = v;
      }
      e.claims.push_back(c);
    } else if (k != "name" && k != "form") {
      e.meta[k] = v;
    }
  }
  std::size_t rule = 0;
  BinMatrix rows = parse_matrix(text, &rule);
  if (rows.rows() == 0) throw MalformedInput("table '" + e.name + "' has no matrix rows");
  if (e.form == "check") {
    e.m = rows.cols();
    e.css = CssCode{rows, rows, std::nullopt, std::nullopt};
  } else if (e.form == "generator") {
    e.m = rows.cols();
    if (rule == static_cast<std::size_t>(-1) || rule == 0 || rule > rows.rows())
      throw MalformedInput("table '" + e.name + "' of form generator needs a rule line after the C2 rows");
    BinMatrix g2(0, e.m);
    for (std::size_t r = 0; r < rule; ++r) g2.append_row(rows.row(r));
    e.css = CssCode{nullspace(rows), g2, std::nullopt, std::nullopt};
  } else if (e.form == "stabilizer") {
    if (rows.cols() % 2 != 0)
      throw MalformedInput("table '" + e.name + "' of form stabilizer has an odd column count");
    e.m = rows.cols() / 2;
    e.generators = rows;
  } else {
    throw MalformedInput("table '" + e.name + "' has unknown form '" + e.form + "'");
  }
  if (header.count("M") && std::to_string(e.m) != header["M"])
    throw MalformedInput("table '" + e.name + "' declares M=" + header["M"] + " but has " + std::to_string(e.m) +
                         " columns");
  return e;
}

CatalogEntry load_catalog_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot open table file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  if (auto dot = base.rfind('.'); dot != std::string::npos) base = base.substr(0, dot);
  return parse_catalog_text(ss.str(), base);
}

std::vector<CatalogEntry> catalog() {
  std::map<std::string, std::uint32_t> recorded;
  std::istringstream sums{std::string(detail::embedded_catalog_checksums())};
  std::string hex, file;
  while (sums >> hex >> file) recorded[file] = static_cast<std::uint32_t>(std::stoul(hex, nullptr, 16));
  std::vector<CatalogEntry> out;
  for (const auto& f : detail::embedded_catalog_files()) {
    auto it = recorded.find(std::string(f.name));
    if (it == recorded.end()) throw IntegrityError("no checksum recorded for " + std::string(f.name));
    if (crc32(f.content) != it->second) throw IntegrityError("checksum mismatch for " + std::string(f.name));
    out.push_back(parse_catalog_text(f.content));
  }
  return out;
}

CatalogEntry catalog_entry(const std::string& name) {
  for (auto& e : catalog())
    if (e.name == name) return e;
  throw MalformedInput("unknown code '" + name + "'");
}

CatalogEntry resolve_code(const std::string& name_or_path) {
  for (auto& e : catalog())
    if (e.name == name_or_path) return e;
  if (name_or_path.find('/') != std::string::npos || name_or_path.find('.') != std::string::npos)
    return load_catalog_file(name_or_path);
  throw MalformedInput("unknown code '" + name_or_path + "'");
}

StabilizerCode entry_code(const CatalogEntry& e) {
  if (e.css) return e.css->assemble();
  StabilizerCode code;
  code.m = e.m;
  code.generators = e.generators;
  if (!is_valid_stabilizer(code.generators)) throw MalformedInput("generators of '" + e.name + "' are not a valid stabilizer");
  attach_logicals(code);
  return code;
}

VerificationReport verify_catalog_entry(const CatalogEntry& entry) {
  VerificationReport r;
  r.name = entry.name;
  r.m = entry.m;
  StabilizerCode code;
  code.m = entry.m;
  if (entry.css) {
    const CssCode& css = *entry.css;
    r.css_nested = (css.h1 * css.g2.transpose()).is_zero();
    // Z rows and X rows commute exactly when H1 G2^T = 0; dependent rows are dropped first.
    code.generators = BinMatrix(0, 2 * entry.m);
    BinMatrix zr = row_basis(css.h1), xr = row_basis(css.g2);
    for (std::size_t i = 0; i < zr.rows(); ++i) {
      BitVec v(2 * entry.m);
      for (std::size_t j = 0; j < entry.m; ++j) v.set(j, zr.get(i, j));
      code.generators.append_row(v);
    }
    for (std::size_t i = 0; i < xr.rows(); ++i) {
      BitVec v(2 * entry.m);
      for (std::size_t j = 0; j < entry.m; ++j) v.set(entry.m + j, xr.get(i, j));
      code.generators.append_row(v);
    }
    BinMatrix c1 = nullspace(css.h1);
    BinMatrix c2perp = nullspace(css.g2);
    if (c1.rows() > 0) r.d1 = code_distance(c1);
    if (c2perp.rows() > 0) r.d2 = code_distance(c2perp);
  } else {
    code.generators = entry.generators;
  }
  r.symplectic_valid = is_valid_stabilizer(code.generators);
  if (!r.symplectic_valid) return r;
  attach_logicals(code);
  r.k = code.k();
  r.code_case = classify_case(code);

  auto eprime = build_error_map(entry.m, ErrorMapKind::Eprime);
  std::vector<std::size_t> zcols(entry.m), xcols(entry.m);
  for (std::size_t j = 0; j < entry.m; ++j) {
    zcols[j] = j;
    xcols[j] = entry.m + j;
  }
  // Column searches grow combinatorially; the full 2M-column distance is only taken
  // where it stays cheap.
  if (entry.m <= 23) {
    r.majorana_distance = majorana_distance(code, eprime);
    r.majorana_distance_z = majorana_distance(code, eprime, zcols);
    r.majorana_distance_x = majorana_distance(code, eprime, xcols);
  }
  if (r.d1 && r.d2 && r.k && *r.k > 0) {
    const std::size_t d = std::min(*r.d1, *r.d2);
    r.perfect = perfect_check(entry.m, *r.k, (d - 1) / 2);
  }
  auto lemma = lemma1_pair_check_detail(code, eprime);
  r.lemma1_pair_check = lemma.ok;
  r.lemma1_conflicts = lemma.conflicts;
  auto restricted = restricted_parity_check_detail(
      code, build_error_map(entry.m, ErrorMapKind::E, parity_permutation(entry.m)));
  r.restricted_parity_check = restricted.ok;
  r.restricted_conflicts = restricted.conflicts;
  return r;
}

std::vector<ClaimResult> check_claims(const CatalogEntry& entry, const VerificationReport& report) {
  std::vector<ClaimResult> out;
  auto opt_num = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("null"); };
  auto opt_bool = [](const std::optional<bool>& v) { return v ? bool_str(*v) : std::string("null"); };
  for (const auto& c : entry.claims) {
    ClaimResult res{c, "", false};
    std::optional<std::size_t> num;
    if (c.key == "d1") { res.computed = opt_num(report.d1); num = report.d1; }
    else if (c.key == "d2") { res.computed = opt_num(report.d2); num = report.d2; }
    else if (c.key == "k") { res.computed = opt_num(report.k); num = report.k; }
    else if (c.key == "majorana_distance") { res.computed = opt_num(report.majorana_distance); num = report.majorana_distance; }
    else if (c.key == "case") res.computed = report.code_case ? to_string(*report.code_case) : "null";
    else if (c.key == "perfect") res.computed = opt_bool(report.perfect);
    else if (c.key == "lemma1") res.computed = opt_bool(report.lemma1_pair_check);
    else if (c.key == "restricted") res.computed = opt_bool(report.restricted_parity_check);
    else if (c.key == "symplectic_valid") res.computed = bool_str(report.symplectic_valid);
    else res.computed = "unsupported claim";
    if (c.relation == ">=" && num) res.ok = *num >= std::stoul(c.value);
    else res.ok = res.computed == c.value;
    out.push_back(res);
  }
  return out;
}

std::string report_json(const VerificationReport& r, const std::vector<ClaimResult>& claims, int indent) {
  using nlohmann::ordered_json;
  auto num = [](const std::optional<std::size_t>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  auto flag = [](const std::optional<bool>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  ordered_json j;
  j["code"] = r.name;
  j["M"] = r.m;
  j["k"] = num(r.k);
  j["symplectic_valid"] = r.symplectic_valid;
  j["css_nested"] = flag(r.css_nested);
  j["d1"] = num(r.d1);
  j["d2"] = num(r.d2);
  j["majorana_distance"] = num(r.majorana_distance);
  j["majorana_distance_x"] = num(r.majorana_distance_x);
  j["majorana_distance_z"] = num(r.majorana_distance_z);
  j["case"] = r.code_case ? ordered_json(to_string(*r.code_case)) : ordered_json(nullptr);
  j["perfect"] = flag(r.perfect);
  j["lemma1_pair_check"] = flag(r.lemma1_pair_check);
  j["lemma1_conflicts"] = r.lemma1_conflicts;
  j["restricted_parity_check"] = flag(r.restricted_parity_check);
  j["restricted_conflicts"] = r.restricted_conflicts;
  ordered_json cl = ordered_json::array();
  bool all_ok = r.symplectic_valid;
  for (const auto& c : claims) {
    ordered_json cj;
    cj["key"] = c.claim.key;
    cj["claimed"] = (c.claim.relation == ">=" ? ">=" : "") + c.claim.value;
    cj["computed"] = c.computed;
    cj["ok"] = c.ok;
    cl.push_back(cj);
    all_ok = all_ok && c.ok;
  }
  j["claims"] = cl;
  j["all_claims_verified"] = all_ok;
  return j.dump(indent);
}

}  // namespace pstqec
