#include "tgs/sheaf.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tgs/union_find.hpp"

namespace tgs {

Subset saturated_system(const GammaSemiring& s, const PrimeSpectrum& sp, PointSet u) {
  Subset covered = 0;
  for (std::size_t i = 0; i < sp.size(); ++i)
    if ((u >> i) & 1u) covered |= sp.points[i].members;
  return full_set(s.order()) & ~covered;
}

Subset power_system(const GammaSemiring& s, Elem a) {
  require_subset_carrier(s);
  Subset out = singleton(a);
  if (auto e = s.multiplicative_identity()) out |= singleton(*e);
  const Elem g = static_cast<Elem>(s.gamma());
  for (Subset prev = 0; prev != out;) {
    prev = out;
    for (Elem x : elements(prev))
      for (Elem y : elements(prev))
        for (Elem z : elements(prev))
          for (Elem al = 0; al < g; ++al)
            for (Elem be = 0; be < g; ++be) out |= singleton(s.mul(x, al, y, be, z));
  }
  return out;
}

Elem Sections::class_of(Elem x, Elem s) const {
  if (members.empty()) return 0;
  auto it = std::lower_bound(members.begin(), members.end(), s);
  if (it == members.end() || *it != s)
    throw Error(ErrorKind::PreconditionViolated,
                "denominator " + std::to_string(s) + " is not in the system");
  return pair_class[x * members.size() + static_cast<std::size_t>(it - members.begin())];
}

std::size_t SheafData::index_of(PointSet u) const {
  auto it = std::lower_bound(opens.begin(), opens.end(), u);
  if (it == opens.end() || *it != u)
    throw Error(ErrorKind::PreconditionViolated, format_subset(u) + " is not an open set");
  return static_cast<std::size_t>(it - opens.begin());
}

std::size_t SheafData::section_count(PointSet u) const {
  std::size_t i = index_of(u);
  return is_module_sheaf() ? modules[i].size() : rings[i].order();
}

Elem SheafData::add(PointSet u, Elem x, Elem y) const {
  std::size_t i = index_of(u);
  return is_module_sheaf() ? modules[i].add(x, y) : rings[i].add(x, y);
}

std::vector<Elem> SheafData::restriction(PointSet u, PointSet v) const {
  if ((v & ~u) != 0)
    throw Error(ErrorKind::PreconditionViolated,
                format_subset(v) + " is not inside " + format_subset(u));
  const Sections& from = over(u);
  const Sections& to = over(v);
  std::vector<Elem> out(section_count(u), 0);
  if (to.members.empty()) return out;
  for (std::size_t c = 0; c < out.size(); ++c) {
    auto [x, s] = from.representative[c];
    out[c] = to.class_of(x, s);
  }
  return out;
}

namespace {

template <class Fractions>
Sections sections_from(PointSet u, const Fractions& f) {
  return Sections{u, f.system, f.members, f.pair_class, f.representative};
}

// Restrictions must respect every representative and compose.
bool check_restrictions(const SheafData& sh) {
  if (sh.opens.size() > 64) return true;
  for (PointSet u : sh.opens) {
    const Sections& su = sh.over(u);
    for (PointSet v : sh.opens) {
      if ((v & ~u) != 0) continue;
      auto ruv = sh.restriction(u, v);
      const Sections& sv = sh.over(v);
      if (!sv.members.empty())
        for (std::size_t i = 0; i < su.pair_class.size(); ++i) {
          Elem x = static_cast<Elem>(i / su.members.size());
          Elem d = su.members[i % su.members.size()];
          if (sv.class_of(x, d) != ruv[su.pair_class[i]]) return false;
        }
      for (PointSet w : sh.opens) {
        if ((w & ~v) != 0) continue;
        auto rvw = sh.restriction(v, w);
        auto ruw = sh.restriction(u, w);
        for (std::size_t c = 0; c < ruv.size(); ++c)
          if (rvw[ruv[c]] != ruw[c]) return false;
      }
    }
  }
  return true;
}

void finish(SheafData& sh) {
  sh.restrictions_compose = check_restrictions(sh);
  if (sh.spectrum.size() > kGluingCheckPoints) return;
  for (PointSet u : sh.opens) {
    try {
      sh.gluing.push_back(check_gluing(sh, u, basic_cover(sh, u)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SizeGuardExceeded) throw;
      GluingReport skipped;
      skipped.open = u;
      skipped.cover = basic_cover(sh, u);
      sh.gluing.push_back(skipped);
    }
  }
}

SheafData skeleton(const GammaSemiring& s, const LocalizeOptions& options) {
  SheafData sh;
  sh.base = s;
  sh.options = options;
  sh.spectrum = spec(s);
  sh.opens = open_sets(topology_report(s, sh.spectrum), sh.spectrum);
  std::sort(sh.opens.begin(), sh.opens.end());
  sh.opens.erase(std::unique(sh.opens.begin(), sh.opens.end()), sh.opens.end());
  enforce_guard(sh.opens.size(), 256, "open set count");
  std::set<PointSet> basic;
  for (Elem a = 0; a < s.order(); ++a)
    if (PointSet d = basic_open(sh.spectrum, a)) basic.insert(d);
  sh.basic_opens.assign(basic.begin(), basic.end());
  return sh;
}

}  // namespace

SheafData structure_sheaf(const GammaSemiring& s, const LocalizeOptions& options) {
  SheafData sh = skeleton(s, options);
  for (PointSet u : sh.opens) {
    if (u == 0) {
      sh.sections.push_back(Sections{});
      sh.rings.push_back(trivial_semiring(s.gamma()).with_axioms(s.axioms()));
      continue;
    }
    LocalizedSemiring loc = localize(s, saturated_system(s, sh.spectrum, u), options);
    sh.sections.push_back(sections_from(u, loc));
    sh.rings.push_back(std::move(loc.table));
  }
  finish(sh);
  return sh;
}

SheafData tilde_module(const GammaModule& m, const LocalizeOptions& options) {
  SheafData sh = skeleton(m.base(), options);
  for (PointSet u : sh.opens) {
    if (u == 0) {
      sh.sections.push_back(Sections{});
      sh.modules.push_back(zero_module(m.base()));
      continue;
    }
    LocalizedModule loc = localize_module(m, saturated_system(m.base(), sh.spectrum, u), options);
    sh.sections.push_back(sections_from(u, loc));
    sh.modules.push_back(std::move(loc.module));
  }
  finish(sh);
  return sh;
}

std::vector<PointSet> basic_cover(const SheafData& sheaf, PointSet u) {
  std::vector<PointSet> out;
  for (PointSet d : sheaf.basic_opens)
    if ((d & ~u) == 0) out.push_back(d);
  return out;
}

GluingReport check_gluing(const SheafData& sheaf, PointSet u, const std::vector<PointSet>& cover) {
  PointSet uni = 0;
  for (PointSet c : cover) {
    if ((c & ~u) != 0)
      throw Error(ErrorKind::NotACover, format_subset(c) + " is not inside " + format_subset(u));
    sheaf.index_of(c);
    uni |= c;
  }
  if (uni != u)
    throw Error(ErrorKind::NotACover,
                "cover of " + format_subset(u) + " only reaches " + format_subset(uni));

  const std::size_t k = cover.size();
  // to_meet[i][j]: restriction from cover[i] to cover[i] & cover[j].
  std::vector<std::vector<std::vector<Elem>>> to_meet(k, std::vector<std::vector<Elem>>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) to_meet[i][j] = sheaf.restriction(cover[i], cover[i] & cover[j]);

  const std::size_t limit = scaled_guard(std::size_t{1} << 20);
  std::set<std::vector<Elem>> families;
  std::vector<Elem> tuple(k);
  auto extend = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      families.insert(tuple);
      if (families.size() > limit)
        throw Error(ErrorKind::SizeGuardExceeded, "compatible family count exceeds guard");
      return;
    }
    const std::size_t count = sheaf.section_count(cover[i]);
    for (Elem x = 0; x < count; ++x) {
      bool fits = true;
      for (std::size_t j = 0; j < i && fits; ++j) fits = to_meet[i][j][x] == to_meet[j][i][tuple[j]];
      if (!fits) continue;
      tuple[i] = x;
      self(self, i + 1);
    }
  };
  extend(extend, 0);

  GluingReport out;
  out.open = u;
  out.cover = cover;
  out.sections = sheaf.section_count(u);
  out.families = families.size();
  std::vector<std::vector<Elem>> down;
  for (PointSet c : cover) down.push_back(sheaf.restriction(u, c));
  std::set<std::vector<Elem>> images;
  for (Elem x = 0; x < out.sections; ++x) {
    for (std::size_t i = 0; i < k; ++i) tuple[i] = down[i][x];
    images.insert(tuple);
  }
  out.injective = images.size() == out.sections;
  out.surjective = images.size() == out.families;
  out.checked = true;
  return out;
}

Stalk stalk(const SheafData& sheaf, std::size_t point) {
  if (point >= sheaf.spectrum.size())
    throw Error(ErrorKind::PreconditionViolated, "no point " + std::to_string(point));
  std::vector<PointSet> system;
  PointSet smallest = sheaf.spectrum.all();
  for (PointSet d : sheaf.basic_opens)
    if ((d >> point) & 1u) {
      system.push_back(d);
      smallest &= d;
    }
  if (std::find(system.begin(), system.end(), smallest) == system.end()) system.push_back(smallest);

  std::vector<std::size_t> offset(system.size() + 1, 0);
  for (std::size_t i = 0; i < system.size(); ++i)
    offset[i + 1] = offset[i] + sheaf.section_count(system[i]);
  UnionFind uf(offset.back());
  for (std::size_t i = 0; i < system.size(); ++i)
    for (std::size_t j = 0; j < system.size(); ++j) {
      if (i == j || (system[j] & ~system[i]) != 0) continue;
      auto r = sheaf.restriction(system[i], system[j]);
      for (std::size_t x = 0; x < r.size(); ++x) uf.unite(offset[i] + x, offset[j] + r[x]);
    }

  const std::size_t w = static_cast<std::size_t>(
      std::find(system.begin(), system.end(), smallest) - system.begin());
  const std::size_t wsize = offset[w + 1] - offset[w];
  Stalk out;
  out.point = point;
  out.smallest = smallest;
  out.from_smallest.resize(wsize);
  std::map<std::size_t, Elem> label;
  for (std::size_t x = 0; x < wsize; ++x) {
    auto [it, fresh] = label.try_emplace(uf.find(offset[w] + x), static_cast<Elem>(label.size()));
    out.from_smallest[x] = it->second;
  }
  const std::size_t q = label.size();
  const auto& pr = out.from_smallest;

  constexpr Elem unset = ~Elem{0};
  auto put = [&](std::vector<Elem>& table, std::size_t cell, Elem value) {
    if (table[cell] == unset) table[cell] = value;
    else if (table[cell] != value)
      throw Error(ErrorKind::NotWellDefined, "stalk operations differ on identified sections");
  };
  const std::size_t wi = sheaf.index_of(smallest);
  std::vector<Elem> add(q * q, unset);
  auto wadd = [&](Elem x, Elem y) { return sheaf.add(smallest, x, y); };
  for (Elem x = 0; x < wsize; ++x)
    for (Elem y = 0; y < wsize; ++y) put(add, pr[x] * q + pr[y], pr[wadd(x, y)]);

  const std::size_t g = sheaf.base.gamma();
  if (!sheaf.is_module_sheaf()) {
    const GammaSemiring& r = sheaf.rings[wi];
    std::vector<Elem> ter(q * g * q * g * q, unset);
    for (Elem a = 0; a < wsize; ++a)
      for (Elem al = 0; al < g; ++al)
        for (Elem b = 0; b < wsize; ++b)
          for (Elem be = 0; be < g; ++be)
            for (Elem c = 0; c < wsize; ++c)
              put(ter, (((pr[a] * g + al) * q + pr[b]) * g + be) * q + pr[c], pr[r.mul(a, al, b, be, c)]);
    out.ring = GammaSemiring(q, g, std::move(add), std::move(ter), r.axioms());
  } else {
    const GammaModule& m = sheaf.modules[wi];
    const std::size_t n = sheaf.base.order();
    std::vector<Elem> act(n * g * q * g * n, unset);
    for (Elem a = 0; a < n; ++a)
      for (Elem al = 0; al < g; ++al)
        for (Elem x = 0; x < wsize; ++x)
          for (Elem be = 0; be < g; ++be)
            for (Elem b = 0; b < n; ++b)
              put(act, (((a * g + al) * q + pr[x]) * g + be) * n + b, pr[m.act(a, al, x, be, b)]);
    out.module = GammaModule(sheaf.base, q, std::move(add), std::move(act));
  }
  return out;
}

std::optional<std::vector<std::size_t>> spec_map(const GammaSemiring& from,
                                                 const GammaSemiring& to,
                                                 const std::vector<Elem>& f) {
  PrimeSpectrum src = spec(from), dst = spec(to);
  std::vector<std::size_t> out;
  for (const Ideal& q : dst.points) {
    Subset pre = 0;
    for (Elem a = 0; a < from.order(); ++a)
      if (contains(q.members, f[a])) pre |= singleton(a);
    auto idx = src.index_of(Ideal{pre});
    if (!idx) return std::nullopt;
    out.push_back(*idx);
  }
  return out;
}

std::vector<Elem> global_sections_map(const SheafData& from, const SheafData& to,
                                      const std::vector<Elem>& f) {
  const Sections& src = from.over(from.spectrum.all());
  const Sections& dst = to.over(to.spectrum.all());
  std::vector<Elem> out(from.section_count(from.spectrum.all()), 0);
  if (src.members.empty()) return out;
  for (Elem d : src.members)
    if (!dst.members.empty() && !contains(dst.system, f[d]))
      throw Error(ErrorKind::PreconditionViolated,
                  "denominator " + std::to_string(d) + " maps outside the global system");
  const std::size_t k = src.members.size();
  std::vector<bool> seen(out.size(), false);
  for (std::size_t i = 0; i < src.pair_class.size(); ++i) {
    Elem c = src.pair_class[i];
    Elem value = dst.class_of(f[i / k], f[src.members[i % k]]);
    if (!seen[c]) {
      out[c] = value;
      seen[c] = true;
    } else if (out[c] != value) {
      throw Error(ErrorKind::NotWellDefined, "global section map differs on representatives");
    }
  }
  return out;
}

}  // namespace tgs
