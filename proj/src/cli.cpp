#include "tgs/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tgs/canonical.hpp"
#include "tgs/catalog.hpp"
#include "tgs/enumerate.hpp"
#include "tgs/format.hpp"
#include "tgs/homology.hpp"
#include "tgs/ideal.hpp"
#include "tgs/localize.hpp"
#include "tgs/module.hpp"
#include "tgs/sheaf.hpp"
#include "tgs/spectrum.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace tgs::cli {

namespace {

// Raised while reading inputs; always a usage/file failure.
struct InputError {
  ErrorKind kind;
  std::string message;
};

std::string strip_kind(const Error& e) {
  std::string what = e.what();
  std::string prefix = std::string(e.name()) + ": ";
  return what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
}

[[noreturn]] void usage(const std::string& message) {
  throw InputError{ErrorKind::Usage, message};
}

std::string base_name(const std::string& path) {
  fs::path p(path);
  while (!p.empty() && p.filename().empty()) p = p.parent_path();
  return p.filename().string();
}

std::string read_input(const std::string& path) {
  if (!fs::is_regular_file(path)) usage(base_name(path) + ": no such file");
  return read_file(path);
}

GammaSemiring load_structure(const std::string& path) {
  std::string text = read_input(path);
  try {
    return parse_structure(text);
  } catch (const Error& e) {
    throw InputError{e.kind(), base_name(path) + ": " + strip_kind(e)};
  }
}

GammaModule load_module(const std::string& path) {
  std::string text = read_input(path);
  try {
    std::string dir = fs::path(path).parent_path().string();
    return parse_module(text, dir.empty() ? "." : dir);
  } catch (const Error& e) {
    throw InputError{e.kind(), base_name(path) + ": " + strip_kind(e)};
  }
}

void require_same_base(const GammaModule& a, const GammaModule& b) {
  if (!(a.base() == b.base())) usage("modules are over different base structures");
}

std::vector<Elem> parse_elements(const std::string& text, std::size_t bound) {
  std::vector<Elem> out;
  std::string t = text;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) usage("not an element label: '" + tok + "'");
    if (v >= bound) usage("element " + tok + " out of range (order " + std::to_string(bound) + ")");
    out.push_back(static_cast<Elem>(v));
  }
  return out;
}

Subset to_subset(const std::vector<Elem>& elems) {
  Subset s = 0;
  for (Elem e : elems) s |= singleton(e);
  return s;
}

json subset_json(Subset s) { return json(elements(s)); }

json points_json(PointSet p) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < 64; ++i)
    if ((p >> i) & 1u) idx.push_back(i);
  return json(idx);
}

json rows(const std::vector<Elem>& flat, std::size_t width) {
  json out = json::array();
  for (std::size_t i = 0; i + width <= flat.size() && width > 0; i += width)
    out.push_back(std::vector<Elem>(flat.begin() + i, flat.begin() + i + width));
  return out;
}

json add_rows(const GammaSemiring& s) {
  return rows(std::vector<Elem>(s.add_table().begin(), s.add_table().end()), s.order());
}

json violations_json(const std::vector<Violation>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back({{"axiom", v.axiom}, {"witness", v.witness}});
  return out;
}

json group_json(const AbelianGroup& g) {
  return {{"group", format_group(g)}, {"order", g.order}, {"invariant_factors", g.invariant_factors}};
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string ratio_text(const Ratio& r) {
  return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

struct Report {
  json body;
  std::string primary;
};

// Options shared by the parser and the handlers.
struct Options {
  bool quiet = false;
  std::string file, file2, dir, module_file, system, prime, open, cover, axioms, mode = "generators";
  std::vector<std::string> files, flags;
  std::size_t order = 0, gamma = 1, index = 1, max_witnesses = 4;
  std::optional<std::size_t> max_results, filter_order, filter_gamma;
  unsigned workers = 1;
  bool commutative = false, up_to_iso = false, classify = false, topology = false;
  bool plain_relation = false, displayed_sum = false, descending = false;
  std::string out_dir;
};

LocalizeOptions localize_options(const Options& o) {
  LocalizeOptions lo;
  lo.doubled_relation = !o.plain_relation;
  lo.displayed_sum = o.displayed_sum;
  return lo;
}

Report cmd_verify(const Options& o) {
  GammaSemiring s = load_structure(o.file);
  AxiomReport r = verify_axioms(s, o.max_witnesses);
  json b;
  b["command"] = "verify";
  b["file"] = base_name(o.file);
  b["hash"] = structure_hash(s);
  b["order"] = s.order();
  b["gamma"] = s.gamma();
  b["axioms"] = to_string(s.axioms());
  b["valid"] = r.valid;
  b["check_count"] = r.check_count;
  b["failure_count"] = r.failure_count;
  b["violations"] = violations_json(r.violations);
  return {b, r.valid ? "true" : "false"};
}

bool table_less(const GammaSemiring& a, const GammaSemiring& b) {
  auto at = a.add_table(), bt = b.add_table();
  if (!std::equal(at.begin(), at.end(), bt.begin(), bt.end()))
    return std::lexicographical_compare(at.begin(), at.end(), bt.begin(), bt.end());
  auto am = a.ternary_table(), bm = b.ternary_table();
  return std::lexicographical_compare(am.begin(), am.end(), bm.begin(), bm.end());
}

Report cmd_enumerate(const Options& o) {
  EnumerationTask task;
  task.order = o.order;
  task.gamma = o.gamma;
  task.commutative_only = o.commutative;
  task.max_results = o.max_results;
  task.workers = o.workers;
  std::istringstream toks(o.axioms);
  for (std::string tok; toks >> tok;)
    if (!apply_axiom_token(task.axioms, tok)) usage("unknown axiom token '" + tok + "'");
  if (o.order == 0) usage("--order must be positive");
  if (o.gamma == 0) usage("--gamma must be positive");

  EnumerationResult res = enumerate_all(task);
  std::vector<GammaSemiring> found = std::move(res.structures);
  std::sort(found.begin(), found.end(), table_less);

  std::vector<GammaSemiring> to_write;
  std::size_t classes = 0;
  if (o.up_to_iso) {
    std::map<std::string, GammaSemiring> reps;
    for (const auto& s : found) {
      GammaSemiring c = canonical_form(s).table;
      reps.emplace(structure_hash(c), c);
    }
    classes = reps.size();
    for (auto& [h, c] : reps) to_write.push_back(c);
  } else {
    to_write = found;
  }

  json b;
  b["command"] = "enumerate";
  b["order"] = o.order;
  b["gamma"] = o.gamma;
  b["axioms"] = to_string(task.axioms);
  b["commutative_only"] = o.commutative;
  b["labeled"] = found.size();
  if (o.up_to_iso) b["iso_classes"] = classes;
  b["complete"] = res.status.complete;
  if (!o.out_dir.empty()) {
    fs::create_directories(o.out_dir);
    std::vector<CatalogEntry> entries;
    json written = json::array();
    for (std::size_t i = 0; i < to_write.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "o%zu-g%zu-%04zu.tgs", o.order, o.gamma, i);
      write_file((fs::path(o.out_dir) / name).string(), serialize_structure(to_write[i]));
      entries.push_back(catalog_entry(to_write[i], name));
      written.push_back({{"file", name}, {"hash", entries.back().hash}});
    }
    catalog_store(o.out_dir, entries);
    b["out"] = base_name(o.out_dir);
    b["written"] = written;
  }
  return {b, std::to_string(o.up_to_iso ? classes : found.size())};
}

Report cmd_ideals(const Options& o) {
  GammaSemiring s = load_structure(o.file);
  std::vector<Ideal> ideals = all_ideals(s);
  json list = json::array();
  for (const Ideal& i : ideals) {
    json item;
    item["members"] = subset_json(i.members);
    if (o.classify) {
      PrimeCheck pc = is_prime(s, i);
      item["prime"] = pc.prime;
      item["semiprime"] = is_semiprime(s, i);
      item["maximal"] = i.members != full_set(s.order()) && is_maximal(s, i);
      item["radical"] = subset_json(radical(s, i).members);
      if (!pc.prime && !pc.witness.empty()) item["prime_witness"] = pc.witness;
    }
    list.push_back(item);
  }
  json b;
  b["command"] = "ideals";
  b["file"] = base_name(o.file);
  b["order"] = s.order();
  b["count"] = ideals.size();
  b["ideals"] = list;
  return {b, std::to_string(ideals.size())};
}

Report cmd_spec(const Options& o) {
  GammaSemiring s = load_structure(o.file);
  PrimeSpectrum sp = spec(s);
  TopologyReport tr = topology_report(s, sp);
  json pts = json::array();
  for (const Ideal& p : sp.points) pts.push_back(subset_json(p.members));
  json b;
  b["command"] = "spec";
  b["file"] = base_name(o.file);
  b["order"] = s.order();
  b["point_count"] = sp.size();
  b["points"] = pts;
  b["closed_set_count"] = tr.closed_set_count;
  b["t0"] = tr.is_t0;
  b["discrete"] = tr.is_discrete;
  if (o.topology) {
    json closed = json::array(), open = json::array(), basic = json::array();
    for (PointSet c : tr.closed_sets) closed.push_back(points_json(c));
    for (PointSet u : open_sets(tr, sp)) open.push_back(points_json(u));
    for (Elem a = 0; a < s.order(); ++a)
      basic.push_back({{"element", a}, {"points", points_json(basic_open(sp, a))}});
    b["closed_sets"] = closed;
    b["open_sets"] = open;
    b["basic_opens"] = basic;
    b["t0_counterexample"] = tr.t0_counterexample
                                 ? json({tr.t0_counterexample->first, tr.t0_counterexample->second})
                                 : json(nullptr);
  }
  return {b, std::to_string(sp.size())};
}

json localized_json(const LocalizedSemiring& loc) {
  json b;
  b["system"] = loc.members;
  b["classes"] = loc.size();
  json reps = json::array();
  for (auto [a, s] : loc.representative) reps.push_back({a, s});
  b["representatives"] = reps;
  b["canonical_map"] = loc.canonical_map;
  b["add"] = add_rows(loc.table);
  b["ternary"] = std::vector<Elem>(loc.table.ternary_table().begin(), loc.table.ternary_table().end());
  return b;
}

Report cmd_localize(const Options& o) {
  GammaSemiring s = load_structure(o.file);
  if (o.system.empty() == o.prime.empty()) usage("give exactly one of --system and --prime");
  json b;
  b["command"] = "localize";
  b["file"] = base_name(o.file);
  b["relation"] = o.plain_relation ? "plain" : "doubled";
  b["sum"] = o.displayed_sum ? "displayed" : "balanced";
  std::size_t classes = 0;
  if (!o.system.empty()) {
    LocalizedSemiring loc = localize(s, to_subset(parse_elements(o.system, s.order())), localize_options(o));
    b.update(localized_json(loc));
    classes = loc.size();
  } else {
    Subset members = to_subset(parse_elements(o.prime, s.order())) | 1u;
    if (!is_ideal(s, members))
      throw Error(ErrorKind::NotAnIdeal, format_subset(members) + " is not an ideal");
    PrimeCheck pc = is_prime(s, Ideal{members});
    if (!pc.prime) {
      std::string w;
      for (Elem x : pc.witness) w += (w.empty() ? "" : ",") + std::to_string(x);
      throw Error(ErrorKind::PreconditionViolated,
                  format_subset(members) + " is not prime" + (w.empty() ? "" : " (witness " + w + ")"));
    }
    LocalAtPrime lp = localize_at_prime(s, Ideal{members}, localize_options(o));
    b["prime"] = subset_json(members);
    b.update(localized_json(lp.local));
    b["maximal"] = subset_json(lp.maximal.members);
    classes = lp.local.size();
  }
  return {b, std::to_string(classes)};
}

const char* gluing_status(const GluingReport& r) {
  if (!r.checked) return "unchecked";
  return r.ok() ? "ok" : "failed";
}

PointSet open_of(const SheafData& sh, const std::vector<Elem>& elems) {
  PointSet u = 0;
  for (Elem a : elems) u |= basic_open(sh.spectrum, a);
  return u;
}

Report cmd_sheaf(const Options& o) {
  GammaSemiring s = load_structure(o.file);
  std::optional<GammaModule> m;
  if (!o.module_file.empty()) {
    m = load_module(o.module_file);
    if (!(m->base() == s)) usage(base_name(o.module_file) + " is not over " + base_name(o.file));
  }
  SheafData sh = m ? tilde_module(*m) : structure_sheaf(s);
  std::optional<PointSet> selected;
  if (!o.open.empty()) selected = open_of(sh, parse_elements(o.open, s.order()));

  json pts = json::array();
  for (const Ideal& p : sh.spectrum.points) pts.push_back(subset_json(p.members));
  json opens = json::array();
  for (std::size_t i = 0; i < sh.opens.size(); ++i) {
    PointSet u = sh.opens[i];
    if (selected && u != *selected) continue;
    json item;
    item["points"] = points_json(u);
    item["system"] = subset_json(sh.sections[i].system);
    item["sections"] = sh.section_count(u);
    if (m) {
      const GammaModule& mod = sh.modules[i];
      item["add"] = rows(mod.add_table(), mod.size());
      if (selected) item["action"] = mod.action_table();
    } else {
      const GammaSemiring& ring = sh.rings[i];
      item["add"] = add_rows(ring);
      if (selected)
        item["ternary"] = std::vector<Elem>(ring.ternary_table().begin(), ring.ternary_table().end());
    }
    item["gluing"] = i < sh.gluing.size() ? gluing_status(sh.gluing[i]) : "unchecked";
    opens.push_back(item);
  }
  json stalks = json::array();
  for (std::size_t p = 0; p < sh.spectrum.size(); ++p) {
    Stalk st = stalk(sh, p);
    stalks.push_back({{"point", p}, {"size", st.size()}, {"smallest_open", points_json(st.smallest)}});
  }
  PointSet shown = selected ? *selected : sh.spectrum.all();
  json b;
  b["command"] = "sheaf";
  b["file"] = base_name(o.file);
  b["module"] = m ? json(base_name(o.module_file)) : json(nullptr);
  b["points"] = pts;
  b["open_count"] = sh.opens.size();
  if (selected) b["open"] = points_json(*selected);
  b["opens"] = opens;
  b["stalks"] = stalks;
  b["restrictions_compose"] = sh.restrictions_compose;
  bool glued = std::all_of(sh.gluing.begin(), sh.gluing.end(), [](const GluingReport& r) { return r.ok(); });
  b["gluing_ok"] = !sh.gluing.empty() && glued;
  b["global_sections"] = sh.section_count(sh.spectrum.all());
  return {b, std::to_string(sh.section_count(shown))};
}

json module_header(const std::string& key, const std::string& path, const GammaModule& m) {
  return {{key, base_name(path)}, {key + "_size", m.size()}};
}

Report cmd_module_verify(const Options& o) {
  GammaModule m = load_module(o.file);
  AxiomReport r = verify_module(m, o.max_witnesses);
  json b;
  b["command"] = "module verify";
  b["file"] = base_name(o.file);
  b["base_hash"] = structure_hash(m.base());
  b["size"] = m.size();
  b["group_based"] = m.group_based();
  b["valid"] = r.valid;
  b["check_count"] = r.check_count;
  b["failure_count"] = r.failure_count;
  b["violations"] = violations_json(r.violations);
  return {b, r.valid ? "true" : "false"};
}

Report cmd_module_pair(const Options& o, const std::string& what) {
  GammaModule a = load_module(o.file), c = load_module(o.file2);
  require_same_base(a, c);
  json b;
  b["command"] = "module " + what;
  b.update(module_header("left", o.file, a));
  b.update(module_header("right", o.file2, c));
  std::size_t primary = 0;
  if (what == "homs") {
    std::vector<HomMap> hs = all_homs(a, c);
    b["count"] = hs.size();
    b["homs"] = hs;
    primary = hs.size();
  } else if (what == "tensor") {
    TensorProduct t = tensor(a, c);
    b["size"] = t.module.size();
    b["add"] = rows(t.module.add_table(), t.module.size());
    b["balanced"] = t.balanced;
    primary = t.module.size();
  } else {
    HomModule h = hom_module(a, c);
    b["size"] = h.module.size();
    b["homs"] = h.homs;
    b["add"] = rows(h.module.add_table(), h.module.size());
    primary = h.module.size();
  }
  return {b, std::to_string(primary)};
}

struct CechSetup {
  GammaSemiring base = trivial_semiring();
  std::optional<GammaModule> module;
  std::vector<Elem> cover;
  CohomologyResult result;
};

CechSetup cech_setup(const Options& o) {
  CechSetup c;
  c.base = load_structure(o.file);
  if (!o.module_file.empty()) {
    c.module = load_module(o.module_file);
    if (!(c.module->base() == c.base)) usage(base_name(o.module_file) + " is not over " + base_name(o.file));
  }
  c.cover = parse_elements(o.cover, c.base.order());
  if (c.cover.empty()) usage("--cover needs at least one element");
  SheafData sh = c.module ? tilde_module(*c.module) : structure_sheaf(c.base);
  c.result = cech_cohomology(sh, cover_of(sh, c.cover));
  return c;
}

json degrees_json(const CohomologyResult& r, std::vector<std::string>* names) {
  json out = json::array();
  for (std::size_t k = 0; k < r.groups.size(); ++k) {
    json item = {{"degree", r.low + static_cast<int>(k)}};
    item.update(group_json(r.groups[k]));
    out.push_back(item);
    if (names) names->push_back(format_group(r.groups[k]));
  }
  return out;
}

Report cmd_cech(const Options& o) {
  CechSetup c = cech_setup(o);
  std::vector<std::string> names;
  json b;
  b["command"] = "cech";
  b["file"] = base_name(o.file);
  b["module"] = c.module ? json(base_name(o.module_file)) : json(nullptr);
  b["cover"] = c.cover;
  b["degrees"] = degrees_json(c.result, &names);
  return {b, join(names, ",")};
}

Report cmd_euler(const Options& o) {
  EulerMode mode;
  if (o.mode == "generators") mode = EulerMode::Generators;
  else if (o.mode == "multiplicative") mode = EulerMode::Multiplicative;
  else usage("--mode is generators or multiplicative");
  CechSetup c = cech_setup(o);
  Ratio r = euler_characteristic(c.result, mode);
  json b;
  b["command"] = "euler";
  b["file"] = base_name(o.file);
  b["module"] = c.module ? json(base_name(o.module_file)) : json(nullptr);
  b["cover"] = c.cover;
  b["mode"] = o.mode;
  b["degrees"] = degrees_json(c.result, nullptr);
  b["euler"] = ratio_text(r);
  b["numerator"] = r.num;
  b["denominator"] = r.den;
  return {b, ratio_text(r)};
}

Report cmd_derived(const Options& o, bool is_tor) {
  GammaModule a = load_module(o.file), c = load_module(o.file2);
  require_same_base(a, c);
  GeneratorOrder order = o.descending ? GeneratorOrder::Descending : GeneratorOrder::Ascending;
  AbelianGroup g = is_tor ? tor(a, c, o.index, order) : ext(a, c, o.index, order);
  json b;
  b["command"] = is_tor ? "tor" : "ext";
  b.update(module_header("left", o.file, a));
  b.update(module_header("right", o.file2, c));
  b["i"] = o.index;
  b["generator_order"] = o.descending ? "descending" : "ascending";
  b.update(group_json(g));
  return {b, format_group(g)};
}

json entry_json(const CatalogEntry& e) {
  return {{"hash", e.hash}, {"file", e.file}, {"order", e.order}, {"gamma", e.gamma}, {"flags", e.flags}};
}

Report cmd_catalog_add(const Options& o) {
  json added = json::array();
  for (const auto& f : o.files) {
    auto [e, fresh] = catalog_add(o.dir, load_structure(f));
    added.push_back({{"source", base_name(f)}, {"hash", e.hash}, {"file", e.file}, {"new", fresh}});
  }
  std::size_t total = catalog_load(o.dir).size();
  json b;
  b["command"] = "catalog add";
  b["catalog"] = base_name(o.dir);
  b["added"] = added;
  b["entries"] = total;
  return {b, std::to_string(total)};
}

Report cmd_catalog_query(const Options& o) {
  CatalogFilter f{o.filter_order, o.filter_gamma, o.flags};
  std::vector<CatalogEntry> es = catalog_query(o.dir, f);
  json filter;
  filter["order"] = f.order ? json(*f.order) : json(nullptr);
  filter["gamma"] = f.gamma ? json(*f.gamma) : json(nullptr);
  filter["flags"] = f.flags;
  json list = json::array();
  for (const auto& e : es) list.push_back(entry_json(e));
  json b;
  b["command"] = "catalog query";
  b["catalog"] = base_name(o.dir);
  b["filter"] = filter;
  b["count"] = es.size();
  b["entries"] = list;
  return {b, std::to_string(es.size())};
}

Report cmd_catalog_rebuild(const Options& o) {
  RebuildReport r = catalog_rebuild(o.dir);
  json list = json::array();
  for (const auto& e : r.entries) list.push_back(entry_json(e));
  json b;
  b["command"] = "catalog rebuild";
  b["catalog"] = base_name(o.dir);
  b["count"] = r.entries.size();
  b["skipped"] = r.skipped;
  b["entries"] = list;
  return {b, std::to_string(r.entries.size())};
}

void emit_error(std::ostream& out, std::ostream& err, const std::string& command, ErrorKind kind,
                const std::string& message) {
  json b;
  b["command"] = command;
  b["error"] = {{"kind", std::string(error_name(kind))}, {"message", message}};
  out << b.dump(2) << "\n";
  err << "tgs " << command << ": " << error_name(kind) << ": " << message << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite commutative ternary Gamma-semirings", "tgs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("-q,--quiet", o.quiet, "Print only the primary value");

  auto* verify = app.add_subcommand("verify", "Check the axioms of a structure file");
  verify->add_option("file", o.file, "Structure file")->required();
  verify->add_option("--max-witnesses", o.max_witnesses, "Witnesses kept per axiom");

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate all structures of a size");
  enumerate->add_option("--order", o.order, "Carrier size")->required();
  enumerate->add_option("--gamma", o.gamma, "Gamma size")->required();
  enumerate->add_flag("--commutative", o.commutative, "Only commutative products");
  enumerate->add_flag("--up-to-iso", o.up_to_iso, "Count and write isomorphism classes");
  enumerate->add_option("--out", o.out_dir, "Write structure files and an index here");
  enumerate->add_option("--workers", o.workers, "Worker threads");
  enumerate->add_option("--max-results", o.max_results, "Stop after this many structures");
  enumerate->add_option("--axioms", o.axioms, "Axiom tokens, e.g. \"commutativity=off\"");

  auto* ideals = app.add_subcommand("ideals", "List the ideal lattice");
  ideals->add_option("file", o.file, "Structure file")->required();
  ideals->add_flag("--classify", o.classify, "Flag prime, semiprime and maximal ideals");

  auto* specc = app.add_subcommand("spec", "Prime spectrum and its topology");
  specc->add_option("file", o.file, "Structure file")->required();
  specc->add_flag("--topology", o.topology, "List closed, open and basic open sets");

  auto* localizec = app.add_subcommand("localize", "Localize at a system or a prime");
  localizec->add_option("file", o.file, "Structure file")->required();
  localizec->add_option("--system", o.system, "Members of the multiplicative system");
  localizec->add_option("--prime", o.prime, "Members of a prime ideal");
  localizec->add_flag("--plain-relation", o.plain_relation, "Use u.a.t = u.b.s");
  localizec->add_flag("--displayed-sum", o.displayed_sum, "Use the symmetric fraction sum");

  auto* sheafc = app.add_subcommand("sheaf", "Structure sheaf or module sheaf");
  sheafc->add_option("file", o.file, "Structure file")->required();
  sheafc->add_option("--module", o.module_file, "Module file over the structure");
  sheafc->add_option("--open", o.open, "Elements a_i; show the open union of D(a_i)");

  auto* modulec = app.add_subcommand("module", "Module operations");
  modulec->require_subcommand(1);
  auto* mverify = modulec->add_subcommand("verify", "Check the module axioms");
  mverify->add_option("file", o.file, "Module file")->required();
  mverify->add_option("--max-witnesses", o.max_witnesses, "Witnesses kept per axiom");
  std::map<std::string, CLI::App*> pairs;
  for (const char* name : {"homs", "tensor", "hom-module"}) {
    auto* sub = modulec->add_subcommand(name, std::string("Compute ") + name + " of two modules");
    sub->add_option("left", o.file, "Module file")->required();
    sub->add_option("right", o.file2, "Module file")->required();
    pairs[name] = sub;
  }

  auto* cech = app.add_subcommand("cech", "Cech cohomology over a basic-open cover");
  auto* euler = app.add_subcommand("euler", "Euler characteristic of Cech cohomology");
  for (auto* sub : {cech, euler}) {
    sub->add_option("file", o.file, "Structure file")->required();
    sub->add_option("--cover", o.cover, "Elements a_i of the cover D(a_i)")->required();
    sub->add_option("--module", o.module_file, "Module file over the structure");
  }
  euler->add_option("--mode", o.mode, "generators or multiplicative");

  auto* torc = app.add_subcommand("tor", "Tor_i(M, N) from a free resolution of M");
  auto* extc = app.add_subcommand("ext", "Ext^i(M, N) from a free resolution of M");
  for (auto* sub : {torc, extc}) {
    sub->add_option("left", o.file, "Module file M")->required();
    sub->add_option("right", o.file2, "Module file N")->required();
    sub->add_option("-i,--i", o.index, "Degree");
    sub->add_flag("--descending", o.descending, "Pick generators from the largest label");
  }

  auto* catalog = app.add_subcommand("catalog", "Structure catalog");
  catalog->require_subcommand(1);
  auto* cadd = catalog->add_subcommand("add", "Add structure files");
  cadd->add_option("dir", o.dir, "Catalog directory")->required();
  cadd->add_option("files", o.files, "Structure files")->required();
  auto* cquery = catalog->add_subcommand("query", "List matching entries");
  cquery->add_option("dir", o.dir, "Catalog directory")->required();
  cquery->add_option("--order", o.filter_order, "Carrier size");
  cquery->add_option("--gamma", o.filter_gamma, "Gamma size");
  cquery->add_option("--flag", o.flags, "Required flag (repeatable)");
  auto* crebuild = catalog->add_subcommand("rebuild", "Regenerate the index");
  crebuild->add_option("dir", o.dir, "Catalog directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "tgs: " << e.what() << " (see tgs --help)\n";
    return kExitUsage;
  }

  std::string command = app.get_subcommands().front()->get_name();
  if (modulec->parsed() || catalog->parsed()) {
    auto* parent = modulec->parsed() ? modulec : catalog;
    command += " " + parent->get_subcommands().front()->get_name();
  }

  try {
    Report r;
    if (verify->parsed()) r = cmd_verify(o);
    else if (enumerate->parsed()) r = cmd_enumerate(o);
    else if (ideals->parsed()) r = cmd_ideals(o);
    else if (specc->parsed()) r = cmd_spec(o);
    else if (localizec->parsed()) r = cmd_localize(o);
    else if (sheafc->parsed()) r = cmd_sheaf(o);
    else if (mverify->parsed()) r = cmd_module_verify(o);
    else if (cech->parsed()) r = cmd_cech(o);
    else if (euler->parsed()) r = cmd_euler(o);
    else if (torc->parsed()) r = cmd_derived(o, true);
    else if (extc->parsed()) r = cmd_derived(o, false);
    else if (cadd->parsed()) r = cmd_catalog_add(o);
    else if (cquery->parsed()) r = cmd_catalog_query(o);
    else if (crebuild->parsed()) r = cmd_catalog_rebuild(o);
    else {
      for (const auto& [name, sub] : pairs)
        if (sub->parsed()) r = cmd_module_pair(o, name);
    }
    if (o.quiet) out << r.primary << "\n";
    else out << r.body.dump(2) << "\n";
    return kExitOk;
  } catch (const InputError& e) {
    emit_error(out, err, command, e.kind, e.message);
    return kExitUsage;
  } catch (const Error& e) {
    emit_error(out, err, command, e.kind(), strip_kind(e));
    bool input = e.kind() == ErrorKind::Usage || e.kind() == ErrorKind::CorruptIndex ||
                 e.kind() == ErrorKind::MalformedFile;
    return input ? kExitUsage : kExitMath;
  } catch (const fs::filesystem_error& e) {
    emit_error(out, err, command, ErrorKind::Usage, e.what());
    return kExitUsage;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"tgs"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace tgs::cli
