#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pstqec/codes.hpp"

namespace pstqec {

struct EmbeddedFile {
  std::string_view name;
  std::string_view content;
};

namespace detail {
const std::vector<EmbeddedFile>& embedded_catalog_files();
std::string_view embedded_catalog_checksums();
}  // namespace detail

std::uint32_t crc32(std::string_view bytes);

// "d1: >=5" is stored as {key "d1", relation ">=", value "5"}.
struct Claim {
  std::string key;
  std::string relation = "=";
  std::string value;
};

// form "check": the rows are H and H1 = G2 = H.
// form "generator": all rows generate C1 (H1 is its dual), rows above the rule generate C2.
// form "stabilizer": rows are (z|x) symplectic generators of a general stabilizer code.
struct CatalogEntry {
  std::string name;
  std::string form;
  std::size_t m = 0;
  std::map<std::string, std::string> meta;
  std::vector<Claim> claims;
  std::optional<CssCode> css;
  BinMatrix generators;  // raw rows for the stabilizer form
  std::uint32_t checksum = 0;
};

CatalogEntry parse_catalog_text(std::string_view text, const std::string& fallback_name = "");
CatalogEntry load_catalog_file(const std::string& path);
// Verifies every embedded table against the recorded checksums; throws IntegrityError.
std::vector<CatalogEntry> catalog();
CatalogEntry catalog_entry(const std::string& name);
// A catalog name, or a path to a table file.
CatalogEntry resolve_code(const std::string& name_or_path);
StabilizerCode entry_code(const CatalogEntry& e);

struct VerificationReport {
  std::string name;
  std::size_t m = 0;
  std::optional<std::size_t> k;
  bool symplectic_valid = false;
  std::optional<bool> css_nested;  // H1 G2^T = 0
  std::optional<std::size_t> d1;
  std::optional<std::size_t> d2;
  std::optional<std::size_t> majorana_distance;
  std::optional<std::size_t> majorana_distance_x;
  std::optional<std::size_t> majorana_distance_z;
  std::optional<CodeCase> code_case;
  std::optional<bool> perfect;
  std::optional<bool> lemma1_pair_check;
  std::size_t lemma1_conflicts = 0;
  std::optional<bool> restricted_parity_check;
  std::size_t restricted_conflicts = 0;
};

VerificationReport verify_catalog_entry(const CatalogEntry& entry);

struct ClaimResult {
  Claim claim;
  std::string computed;
  bool ok = false;
};
std::vector<ClaimResult> check_claims(const CatalogEntry& entry, const VerificationReport& report);

std::string report_json(const VerificationReport& r, const std::vector<ClaimResult>& claims, int indent = 2);

}  // namespace pstqec
