#include "tgs/catalog.hpp"

#include <algorithm>
#include <filesystem>

#include "json.hpp"
#include "tgs/canonical.hpp"
#include "tgs/format.hpp"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace tgs {

namespace {

[[noreturn]] void corrupt(const std::string& message) {
  throw Error(ErrorKind::CorruptIndex, message + " (run `tgs catalog rebuild`)");
}

bool matches(const CatalogEntry& e, const CatalogFilter& f) {
  if (f.order && e.order != *f.order) return false;
  if (f.gamma && e.gamma != *f.gamma) return false;
  for (const auto& flag : f.flags)
    if (!std::binary_search(e.flags.begin(), e.flags.end(), flag)) return false;
  return true;
}

}  // namespace

std::string canonical_hash(const GammaSemiring& s) {
  return structure_hash(canonical_form(s).table);
}

std::vector<std::string> structure_flags(const GammaSemiring& s) {
  std::vector<std::string> flags;
  if (s.additive_group()) flags.push_back("additive-group");
  if (s.multiplicative_identity()) flags.push_back("identity");
  if (verify_axioms(s, 1).valid) flags.push_back("valid");
  return flags;
}

CatalogEntry catalog_entry(const GammaSemiring& s, const std::string& file) {
  return {canonical_hash(s), file, s.order(), s.gamma(), structure_flags(s)};
}

std::vector<CatalogEntry> catalog_load(const std::string& dir) {
  fs::path index = fs::path(dir) / kCatalogIndex;
  if (!fs::exists(index)) return {};
  ojson doc;
  try {
    doc = ojson::parse(read_file(index.string()));
  } catch (const ojson::parse_error& e) {
    corrupt(std::string("index does not parse: ") + e.what());
  }
  std::vector<CatalogEntry> out;
  try {
    for (const auto& item : doc.at("entries")) {
      CatalogEntry e;
      e.hash = item.at("hash").get<std::string>();
      e.file = item.at("file").get<std::string>();
      e.order = item.at("order").get<std::size_t>();
      e.gamma = item.at("gamma").get<std::size_t>();
      e.flags = item.at("flags").get<std::vector<std::string>>();
      std::sort(e.flags.begin(), e.flags.end());
      out.push_back(std::move(e));
    }
  } catch (const ojson::exception& e) {
    corrupt(std::string("bad index entry: ") + e.what());
  }
  return out;
}

void catalog_store(const std::string& dir, const std::vector<CatalogEntry>& entries) {
  fs::create_directories(dir);
  ojson doc;
  doc["version"] = 1;
  doc["entries"] = ojson::array();
  for (const auto& e : entries)
    doc["entries"].push_back({{"hash", e.hash},
                              {"file", e.file},
                              {"order", e.order},
                              {"gamma", e.gamma},
                              {"flags", e.flags}});
  write_file((fs::path(dir) / kCatalogIndex).string(), doc.dump(2) + "\n");
}

std::pair<CatalogEntry, bool> catalog_add(const std::string& dir, const GammaSemiring& s) {
  std::vector<CatalogEntry> entries = catalog_load(dir);
  GammaSemiring canon = canonical_form(s).table;
  std::string hash = structure_hash(canon);
  for (const auto& e : entries)
    if (e.hash == hash) return {e, false};
  fs::create_directories(dir);
  CatalogEntry e{hash, hash + ".tgs", s.order(), s.gamma(), structure_flags(s)};
  write_file((fs::path(dir) / e.file).string(), serialize_structure(canon));
  entries.push_back(e);
  catalog_store(dir, entries);
  return {e, true};
}

std::vector<CatalogEntry> catalog_query(const std::string& dir, const CatalogFilter& filter) {
  std::vector<CatalogEntry> out;
  for (const auto& e : catalog_load(dir)) {
    if (!matches(e, filter)) continue;
    fs::path p = fs::path(dir) / e.file;
    if (!fs::exists(p)) corrupt("missing file " + e.file);
    GammaSemiring s = trivial_semiring();
    try {
      s = parse_structure(read_file(p.string()));
    } catch (const Error& err) {
      corrupt(e.file + " does not parse: " + err.what());
    }
    if (canonical_hash(s) != e.hash || s.order() != e.order || s.gamma() != e.gamma)
      corrupt("stale entry " + e.file);
    out.push_back(e);
  }
  return out;
}

RebuildReport catalog_rebuild(const std::string& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorKind::Usage, "no such directory '" + dir + "'");
  std::vector<std::string> names;
  for (const auto& de : fs::directory_iterator(dir))
    if (de.is_regular_file() && de.path().extension() == ".tgs")
      names.push_back(de.path().filename().string());
  std::sort(names.begin(), names.end());
  RebuildReport r;
  for (const auto& name : names) {
    try {
      r.entries.push_back(
          catalog_entry(parse_structure(read_file((fs::path(dir) / name).string())), name));
    } catch (const Error&) {
      r.skipped.push_back(name);
    }
  }
  catalog_store(dir, r.entries);
  return r;
}

}  // namespace tgs
