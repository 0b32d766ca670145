#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tgs/semiring.hpp"

namespace tgs {

/// One line of a catalog index. `hash` is the structure_hash of the
/// canonical form; `file` is relative to the catalog directory.
struct CatalogEntry {
  std::string hash;
  std::string file;
  std::size_t order = 0;
  std::size_t gamma = 0;
  std::vector<std::string> flags;  // sorted

  bool operator==(const CatalogEntry&) const = default;
};

struct CatalogFilter {
  std::optional<std::size_t> order;
  std::optional<std::size_t> gamma;
  std::vector<std::string> flags;  // all must be present
};

inline constexpr const char* kCatalogIndex = "index.json";

std::string canonical_hash(const GammaSemiring& s);

/// "additive-group", "identity", "valid".
std::vector<std::string> structure_flags(const GammaSemiring& s);

CatalogEntry catalog_entry(const GammaSemiring& s, const std::string& file);

/// Entries of DIR/index.json; empty when the directory or index is absent.
/// CorruptIndex when the index does not parse.
std::vector<CatalogEntry> catalog_load(const std::string& dir);
void catalog_store(const std::string& dir, const std::vector<CatalogEntry>& entries);

/// Writes the canonical form as HASH.tgs unless an entry with that hash
/// exists. Returns the entry and whether it was new.
std::pair<CatalogEntry, bool> catalog_add(const std::string& dir, const GammaSemiring& s);

/// Every matching entry after checking that its file parses and hashes to
/// the indexed value. CorruptIndex names the first stale entry.
std::vector<CatalogEntry> catalog_query(const std::string& dir, const CatalogFilter& filter = {});

struct RebuildReport {
  std::vector<CatalogEntry> entries;
  std::vector<std::string> skipped;  // .tgs files that failed to parse
};

/// Re-indexes every *.tgs file in the directory, sorted by file name.
RebuildReport catalog_rebuild(const std::string& dir);

}  // namespace tgs
