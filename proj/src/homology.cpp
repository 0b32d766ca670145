#include "tgs/homology.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "tgs/union_find.hpp"

namespace tgs {

namespace {

void require_group(const GammaModule& m, const std::string& what) {
  if (!m.group_based())
    throw Error(ErrorKind::GroupRequired, what + " has no additive inverses");
}

std::vector<std::size_t> prime_factors(std::size_t q) {
  std::vector<std::size_t> out;
  for (std::size_t p = 2; p * p <= q; ++p)
    if (q % p == 0) {
      out.push_back(p);
      while (q % p == 0) q /= p;
    }
  if (q > 1) out.push_back(q);
  return out;
}

std::size_t count(const std::vector<char>& v) {
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), 1));
}

Elem times(const GammaModule& m, Elem x, std::size_t k) {
  Elem out = 0;
  for (std::size_t i = 0; i < k; ++i) out = m.add(out, x);
  return out;
}

std::vector<char> span(const GammaModule& m, const std::vector<Elem>& gens) {
  std::vector<char> in(m.size(), 0);
  std::vector<Elem> queue{0};
  in[0] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (Elem g : gens) {
      Elem y = m.add(queue[i], g);
      if (!in[y]) {
        in[y] = 1;
        queue.push_back(y);
      }
    }
  return in;
}

std::vector<Elem> members_of(const std::vector<char>& v) {
  std::vector<Elem> out;
  for (Elem x = 0; x < v.size(); ++x)
    if (v[x]) out.push_back(x);
  return out;
}

// Cycles and boundaries of a complex at one stored degree.
std::pair<std::vector<char>, std::vector<char>> cycles_boundaries(const Complex& c, int d) {
  const GammaModule& x = c.at(d);
  const std::size_t k = static_cast<std::size_t>(d - c.low);
  const HomMap* out = nullptr;
  const HomMap* in = nullptr;
  if (c.cochain) {
    if (d < c.high()) out = &c.maps[k];
    if (d > c.low) in = &c.maps[k - 1];
  } else {
    if (d > c.low) out = &c.maps[k - 1];
    if (d < c.high()) in = &c.maps[k];
  }
  std::vector<char> z(x.size(), 1), b(x.size(), 0);
  if (out)
    for (Elem e = 0; e < x.size(); ++e) z[e] = (*out)[e] == 0;
  b[0] = 1;
  if (in)
    for (Elem y : *in) b[y] = 1;
  return {std::move(z), std::move(b)};
}

}  // namespace

std::string format_group(const AbelianGroup& g) {
  if (g.trivial()) return "0";
  std::string out;
  for (std::size_t d : g.invariant_factors) {
    if (!out.empty()) out += " x ";
    out += "Z" + std::to_string(d);
  }
  return out;
}

AbelianGroup subquotient(const GammaModule& m, const std::vector<char>& cycles,
                         const std::vector<char>& boundaries) {
  require_group(m, "subquotient module");
  const std::size_t zc = count(cycles), bc = count(boundaries);
  if (bc == 0 || zc % bc != 0)
    throw Error(ErrorKind::PreconditionViolated, "boundaries are not a subgroup of the cycles");
  AbelianGroup out;
  out.order = zc / bc;
  const std::vector<Elem> zs = members_of(cycles);
  std::vector<std::vector<std::size_t>> exps;  // per prime, descending exponents
  std::size_t width = 0;
  for (std::size_t p : prime_factors(out.order)) {
    std::size_t ppart = 1;
    for (std::size_t q = out.order; q % p == 0; q /= p) ppart *= p;
    std::vector<Elem> mult(zs.begin(), zs.end());
    std::vector<std::size_t> rank_at;  // factors with exponent >= k + 1
    std::size_t prev = 1;
    while (prev < ppart) {
      for (Elem& y : mult) y = times(m, y, p);
      std::size_t killed = 0;
      for (Elem y : mult) killed += boundaries[y] ? 1 : 0;
      std::size_t now = killed / bc;
      std::size_t r = 0;
      for (std::size_t ratio = now / prev; ratio > 1; ratio /= p) ++r;
      rank_at.push_back(r);
      prev = now;
    }
    std::vector<std::size_t> e(rank_at.empty() ? 0 : rank_at.front(), 0);
    for (std::size_t r : rank_at)
      for (std::size_t j = 0; j < r; ++j) ++e[j];
    width = std::max(width, e.size());
    std::vector<std::size_t> powers;
    for (std::size_t x : e) {
      std::size_t v = 1;
      for (std::size_t i = 0; i < x; ++i) v *= p;
      powers.push_back(v);
    }
    exps.push_back(powers);
  }
  out.invariant_factors.assign(width, 1);
  for (const auto& powers : exps)
    for (std::size_t j = 0; j < powers.size(); ++j) out.invariant_factors[j] *= powers[j];
  std::reverse(out.invariant_factors.begin(), out.invariant_factors.end());
  return out;
}

AbelianGroup additive_group(const GammaModule& m) {
  std::vector<char> all(m.size(), 1), zero(m.size(), 0);
  zero[0] = 1;
  return subquotient(m, all, zero);
}

void validate_complex(const Complex& c) {
  if (c.objects.empty() || c.maps.size() + 1 != c.objects.size())
    throw Error(ErrorKind::PreconditionViolated, "complex needs one map between each pair of objects");
  for (std::size_t k = 0; k < c.objects.size(); ++k)
    require_group(c.objects[k], "object in degree " + std::to_string(c.low + static_cast<int>(k)));
  for (std::size_t k = 0; k < c.maps.size(); ++k) {
    const GammaModule& src = c.cochain ? c.objects[k] : c.objects[k + 1];
    const GammaModule& dst = c.cochain ? c.objects[k + 1] : c.objects[k];
    const HomMap& f = c.maps[k];
    bool fits = f.size() == src.size();
    for (Elem y : f) fits = fits && y < dst.size();
    if (!fits || (src.size() * src.size() <= (std::size_t{1} << 22) && !is_hom(src, dst, f)))
      throw Error(ErrorKind::PreconditionViolated,
                  "map " + std::to_string(k) + " is not a hom between its endpoints");
  }
  for (std::size_t k = 0; k + 1 < c.maps.size(); ++k) {
    const HomMap& first = c.cochain ? c.maps[k] : c.maps[k + 1];
    const HomMap& second = c.cochain ? c.maps[k + 1] : c.maps[k];
    for (Elem x = 0; x < first.size(); ++x)
      if (second[first[x]] != 0)
        throw Error(ErrorKind::PreconditionViolated,
                    "d.d is nonzero at map " + std::to_string(k) + " on element " + std::to_string(x));
  }
}

AbelianGroup homology(const Complex& c, int degree) {
  if (!c.has_degree(degree)) return {};
  auto [z, b] = cycles_boundaries(c, degree);
  return subquotient(c.at(degree), z, b);
}

AbelianGroup CohomologyResult::at(int degree) const {
  if (degree < low || degree >= low + static_cast<int>(groups.size())) return {};
  return groups[static_cast<std::size_t>(degree - low)];
}

CohomologyResult homology_all(const Complex& c) {
  CohomologyResult out;
  out.low = c.low;
  for (int d = c.low; d <= c.high(); ++d) out.groups.push_back(homology(c, d));
  return out;
}

std::vector<PointSet> cover_of(const SheafData& sheaf, const std::vector<Elem>& elements) {
  std::vector<PointSet> out;
  for (Elem a : elements) {
    if (a >= sheaf.base.order())
      throw Error(ErrorKind::IndexOutOfRange, "cover element " + std::to_string(a));
    out.push_back(basic_open(sheaf.spectrum, a));
  }
  return out;
}

namespace {

using Tuple = std::vector<std::size_t>;

std::vector<Tuple> tuples_of(std::size_t k, std::size_t len) {
  std::vector<Tuple> out;
  Tuple t(len);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t from) -> void {
    if (pos == len) {
      out.push_back(t);
      return;
    }
    for (std::size_t i = from; i < k; ++i) {
      t[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  rec(rec, 0, 0);
  return out;
}

PointSet meet(const std::vector<PointSet>& cover, const Tuple& t) {
  PointSet u = ~PointSet{0};
  for (std::size_t i : t) u &= cover[i];
  return u;
}

// Product of section modules, first factor most significant.
struct Layout {
  std::vector<Tuple> tuples;
  std::vector<PointSet> opens;
  std::vector<std::size_t> sizes;
  std::size_t total = 1;

  std::vector<Elem> decode(std::size_t x) const {
    std::vector<Elem> d(sizes.size());
    for (std::size_t i = sizes.size(); i-- > 0;) {
      d[i] = static_cast<Elem>(x % sizes[i]);
      x /= sizes[i];
    }
    return d;
  }
  Elem encode(const std::vector<Elem>& d) const {
    std::size_t x = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) x = x * sizes[i] + d[i];
    return static_cast<Elem>(x);
  }
};

Layout layout(const SheafData& sh, const std::vector<PointSet>& cover, std::size_t p) {
  Layout l;
  l.tuples = tuples_of(cover.size(), p + 1);
  for (const Tuple& t : l.tuples) {
    PointSet u = meet(cover, t);
    l.opens.push_back(u);
    l.sizes.push_back(sh.section_count(u));
    l.total *= l.sizes.back();
    enforce_guard(l.total, std::size_t{1} << 12, "Cech cochain group size");
  }
  return l;
}

void check_cover(const SheafData& sh, const std::vector<PointSet>& cover) {
  PointSet uni = 0;
  for (PointSet u : cover) {
    sh.index_of(u);
    uni |= u;
  }
  if (uni != sh.spectrum.all())
    throw Error(ErrorKind::NotACover, "cover reaches only " + format_subset(uni));
}

}  // namespace

Complex cech_complex(const SheafData& sheaf, const std::vector<PointSet>& cover) {
  if (!sheaf.is_module_sheaf())
    return cech_complex(tilde_module(regular_module(sheaf.base), sheaf.options), cover);
  check_cover(sheaf, cover);
  Complex c;
  c.low = 0;
  c.cochain = true;
  if (cover.empty()) {
    c.objects.push_back(zero_module(sheaf.base));
    return c;
  }
  std::vector<Layout> ls;
  for (std::size_t p = 0; p < cover.size(); ++p) {
    Layout l = layout(sheaf, cover, p);
    std::optional<GammaModule> sum;
    for (PointSet u : l.opens) {
      const GammaModule& m = sheaf.modules[sheaf.index_of(u)];
      require_group(m, "sections over " + format_subset(u));
      sum = sum ? direct_sum(*sum, m) : m;
    }
    c.objects.push_back(*sum);
    ls.push_back(std::move(l));
  }
  for (std::size_t p = 0; p + 1 < cover.size(); ++p) {
    const Layout& src = ls[p];
    const Layout& dst = ls[p + 1];
    std::map<Tuple, std::size_t> index;
    for (std::size_t i = 0; i < src.tuples.size(); ++i) index[src.tuples[i]] = i;
    // faces[t][j]: (source slot, restriction) for the face omitting position j.
    std::vector<std::vector<std::pair<std::size_t, std::vector<Elem>>>> faces(dst.tuples.size());
    for (std::size_t t = 0; t < dst.tuples.size(); ++t)
      for (std::size_t j = 0; j < dst.tuples[t].size(); ++j) {
        Tuple face = dst.tuples[t];
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(j));
        std::size_t s = index.at(face);
        faces[t].emplace_back(s, sheaf.restriction(src.opens[s], dst.opens[t]));
      }
    HomMap d(src.total);
    for (std::size_t x = 0; x < src.total; ++x) {
      auto digits = src.decode(x);
      std::vector<Elem> out(dst.tuples.size(), 0);
      for (std::size_t t = 0; t < dst.tuples.size(); ++t) {
        const GammaModule& m = sheaf.modules[sheaf.index_of(dst.opens[t])];
        Elem acc = 0;
        for (std::size_t j = 0; j < faces[t].size(); ++j) {
          Elem v = faces[t][j].second[digits[faces[t][j].first]];
          acc = m.add(acc, j % 2 ? m.negate(v) : v);
        }
        out[t] = acc;
      }
      d[x] = dst.encode(out);
    }
    c.maps.push_back(std::move(d));
  }
  validate_complex(c);
  return c;
}

CohomologyResult cech_cohomology(const SheafData& sheaf, const std::vector<PointSet>& cover) {
  return homology_all(cech_complex(sheaf, cover));
}

std::vector<HomMap> cech_map(const SheafData& from, const SheafData& to, const HomMap& f,
                             const std::vector<PointSet>& cover) {
  if (!from.is_module_sheaf() || !to.is_module_sheaf() || from.opens != to.opens)
    throw Error(ErrorKind::PreconditionViolated, "cech_map needs module sheaves on one spectrum");
  check_cover(from, cover);
  std::vector<HomMap> out;
  if (cover.empty()) {
    out.push_back(HomMap{0});
    return out;
  }
  for (std::size_t p = 0; p < cover.size(); ++p) {
    Layout src = layout(from, cover, p), dst = layout(to, cover, p);
    std::vector<std::vector<Elem>> section_maps;
    for (PointSet u : src.opens) {
      const Sections& a = from.over(u);
      const Sections& b = to.over(u);
      std::vector<Elem> m(from.section_count(u), 0);
      if (!a.members.empty())
        for (std::size_t c = 0; c < m.size(); ++c)
          m[c] = b.class_of(f[a.representative[c].first], a.representative[c].second);
      section_maps.push_back(std::move(m));
    }
    HomMap h(src.total);
    for (std::size_t x = 0; x < src.total; ++x) {
      auto digits = src.decode(x);
      for (std::size_t i = 0; i < digits.size(); ++i) digits[i] = section_maps[i][digits[i]];
      h[x] = dst.encode(digits);
    }
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<Elem> greedy_generators(const GammaModule& m, GeneratorOrder order) {
  std::vector<Elem> gens;
  std::vector<char> in = span(m, gens);
  for (std::size_t i = 1; i < m.size(); ++i) {
    Elem x = order == GeneratorOrder::Ascending ? static_cast<Elem>(i)
                                                : static_cast<Elem>(m.size() - i);
    if (in[x]) continue;
    gens.push_back(x);
    in = span(m, gens);
  }
  return gens;
}

Resolution free_resolution(const GammaModule& m, std::size_t length, GeneratorOrder order) {
  require_group(m, "resolved module");
  Resolution out;
  out.complex.low = 0;
  out.complex.cochain = false;
  GammaModule target = m;
  HomMap embed = identity_hom(m);
  for (std::size_t k = 0; k <= length; ++k) {
    std::vector<Elem> gens = greedy_generators(target, order);
    FreeModule free = [&] {
      try {
        return free_module(m.base(), gens.size());
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::SizeGuardExceeded) throw;
        throw Error(ErrorKind::ResolutionFailed, std::string("no free cover: ") + e.what());
      }
    }();
    HomMap phi;
    try {
      phi = extend_from_generators(free, target, gens);
    } catch (const Error& e) {
      throw Error(ErrorKind::ResolutionFailed,
                  "degree " + std::to_string(k) + " generators do not lift: " + e.what());
    }
    std::vector<char> hit(target.size(), 0);
    for (Elem y : phi) hit[y] = 1;
    if (count(hit) != target.size())
      throw Error(ErrorKind::ResolutionFailed,
                  "degree " + std::to_string(k) + " free cover is not surjective");
    HomMap d(phi.size());
    for (std::size_t x = 0; x < phi.size(); ++x) d[x] = embed[phi[x]];
    if (k == 0) out.augmentation = d;
    else out.complex.maps.push_back(d);
    out.complex.objects.push_back(free.module);
    Submodule ker = kernel(free.module, target, phi);
    embed = ker.embedding;
    target = ker.module;
    if (target.size() == 1) {
      out.complete = true;
      break;
    }
  }
  // Exactness at M and at every interior degree.
  const Complex& c = out.complex;
  for (std::size_t k = 0; k < c.objects.size(); ++k) {
    const HomMap& down = k == 0 ? out.augmentation : c.maps[k - 1];
    std::vector<char> ker(c.objects[k].size(), 0), im(c.objects[k].size(), 0);
    for (Elem x = 0; x < down.size(); ++x) ker[x] = down[x] == 0;
    if (k < c.maps.size()) {
      for (Elem y : c.maps[k]) im[y] = 1;
    } else if (out.complete) {
      im[0] = 1;
    } else {
      continue;
    }
    if (ker != im)
      throw Error(ErrorKind::ResolutionFailed, "resolution is not exact at F_" + std::to_string(k));
  }
  return out;
}

std::optional<std::size_t> pd_upper_bound(const GammaModule& m, std::size_t max_depth) {
  Resolution r = free_resolution(m, max_depth);
  if (!r.complete) return std::nullopt;
  return r.complex.objects.size() - 1;
}

Complex tor_complex(const Resolution& r, const GammaModule& n) {
  Complex c;
  c.low = 0;
  c.cochain = false;
  std::vector<TensorProduct> ts;
  for (const GammaModule& f : r.complex.objects) ts.push_back(tensor(f, n));
  for (const auto& t : ts) c.objects.push_back(t.module);
  for (std::size_t k = 0; k < r.complex.maps.size(); ++k)
    c.maps.push_back(tensor_map(ts[k + 1], ts[k], r.complex.maps[k], n.size()));
  validate_complex(c);
  return c;
}

Complex ext_complex(const Resolution& r, const GammaModule& n) {
  Complex c;
  c.low = 0;
  c.cochain = true;
  std::vector<HomModule> hs;
  for (const GammaModule& f : r.complex.objects) hs.push_back(hom_module(f, n));
  for (const auto& h : hs) c.objects.push_back(h.module);
  for (std::size_t k = 0; k < r.complex.maps.size(); ++k) {
    const HomMap& d = r.complex.maps[k];
    const auto& next = hs[k + 1].homs;
    HomMap pre;
    for (const HomMap& phi : hs[k].homs) {
      HomMap composed = compose(phi, d);
      auto it = std::lower_bound(next.begin(), next.end(), composed);
      if (it == next.end() || *it != composed)
        throw Error(ErrorKind::NotWellDefined, "precomposition leaves the hom set");
      pre.push_back(static_cast<Elem>(it - next.begin()));
    }
    c.maps.push_back(std::move(pre));
  }
  validate_complex(c);
  return c;
}

AbelianGroup tor(const GammaModule& m, const GammaModule& n, std::size_t i, GeneratorOrder order) {
  require_group(n, "second argument");
  return homology(tor_complex(free_resolution(m, i + 1, order), n), static_cast<int>(i));
}

AbelianGroup ext(const GammaModule& m, const GammaModule& n, std::size_t i, GeneratorOrder order) {
  require_group(n, "second argument");
  return homology(ext_complex(free_resolution(m, i + 1, order), n), static_cast<int>(i));
}

Ratio euler_characteristic(const CohomologyResult& r, EulerMode mode) {
  Ratio out{mode == EulerMode::Generators ? 0 : 1, 1};
  for (std::size_t k = 0; k < r.groups.size(); ++k) {
    const bool odd = (r.low + static_cast<int>(k)) % 2 != 0;
    const AbelianGroup& g = r.groups[k];
    if (mode == EulerMode::Generators) {
      long long v = static_cast<long long>(g.generator_count());
      out.num += odd ? -v : v;
    } else {
      (odd ? out.den : out.num) *= static_cast<long long>(g.order);
      long long d = std::gcd(out.num, out.den);
      out.num /= d;
      out.den /= d;
    }
  }
  return out;
}

bool quasi_isomorphic(const Complex& a, const Complex& b) {
  const int lo = std::min(a.low, b.low), hi = std::max(a.high(), b.high());
  for (int d = lo; d <= hi; ++d)
    if (!(homology(a, d) == homology(b, d))) return false;
  return true;
}

namespace {

// Classes of Z/B at one degree: label per cycle (npos elsewhere).
struct ClassData {
  std::vector<std::size_t> label;
  std::vector<Elem> rep;  // one cycle per class
  AbelianGroup group;
};

ClassData classes_at(const Complex& c, int d) {
  ClassData out;
  auto [z, b] = cycles_boundaries(c, d);
  const GammaModule& m = c.at(d);
  UnionFind uf(m.size());
  std::vector<Elem> gens;
  {
    std::vector<char> in(m.size(), 0);
    in[0] = 1;
    for (Elem x = 1; x < m.size(); ++x)
      if (b[x] && !in[x]) {
        gens.push_back(x);
        in = span(m, gens);
      }
  }
  for (Elem x = 0; x < m.size(); ++x)
    if (z[x])
      for (Elem g : gens) uf.unite(x, m.add(x, g));
  out.label.assign(m.size(), UnionFind::npos);
  std::map<std::size_t, std::size_t> ids;
  for (Elem x = 0; x < m.size(); ++x)
    if (z[x]) {
      auto [it, fresh] = ids.try_emplace(uf.find(x), ids.size());
      out.label[x] = it->second;
      if (fresh) out.rep.push_back(x);
    }
  out.group = subquotient(m, z, b);
  return out;
}

}  // namespace

LongExactReport long_exact_sequence(const Complex& a, const Complex& b, const Complex& c,
                                    const std::vector<HomMap>& f, const std::vector<HomMap>& g) {
  if (!a.cochain || !b.cochain || !c.cochain || a.low != b.low || b.low != c.low ||
      a.objects.size() != b.objects.size() || b.objects.size() != c.objects.size() ||
      f.size() != a.objects.size() || g.size() != a.objects.size())
    throw Error(ErrorKind::PreconditionViolated, "complexes and maps must share one degree range");
  for (const Complex* x : {&a, &b, &c}) validate_complex(*x);

  auto inexact = [](const std::string& node, int d, const std::string& why) {
    throw Error(ErrorKind::NotExactInput, node + "^" + std::to_string(d) + ": " + why);
  };
  for (int d = a.low; d <= a.high(); ++d) {
    const std::size_t k = static_cast<std::size_t>(d - a.low);
    const GammaModule &am = a.at(d), &bm = b.at(d), &cm = c.at(d);
    if (!is_hom(am, bm, f[k])) inexact("A", d, "f is not a hom");
    if (!is_hom(bm, cm, g[k])) inexact("B", d, "g is not a hom");
    std::vector<char> seen(bm.size(), 0), hit(cm.size(), 0);
    for (Elem x = 0; x < am.size(); ++x) {
      if (seen[f[k][x]]) inexact("A", d, "f is not injective at " + std::to_string(x));
      seen[f[k][x]] = 1;
    }
    for (Elem y = 0; y < bm.size(); ++y) {
      hit[g[k][y]] = 1;
      if (seen[y] != (g[k][y] == 0))
        inexact("B", d, "image of f differs from kernel of g at " + std::to_string(y));
    }
    if (count(hit) != cm.size()) inexact("C", d, "g is not surjective");
    if (d < a.high()) {
      for (Elem x = 0; x < am.size(); ++x)
        if (b.maps[k][f[k][x]] != f[k + 1][a.maps[k][x]])
          inexact("A", d, "f does not commute with d at " + std::to_string(x));
      for (Elem y = 0; y < bm.size(); ++y)
        if (c.maps[k][g[k][y]] != g[k + 1][b.maps[k][y]])
          inexact("B", d, "g does not commute with d at " + std::to_string(y));
    }
  }

  // Nodes A^d, B^d, C^d in order with the maps f*, g*, delta between them.
  struct Node {
    std::string name;
    ClassData data;
  };
  std::vector<Node> nodes;
  std::vector<std::vector<std::size_t>> next_map;  // node i -> node i + 1 on class labels
  for (int d = a.low; d <= a.high(); ++d) {
    nodes.push_back({"H^" + std::to_string(d) + "(A)", classes_at(a, d)});
    nodes.push_back({"H^" + std::to_string(d) + "(B)", classes_at(b, d)});
    nodes.push_back({"H^" + std::to_string(d) + "(C)", classes_at(c, d)});
  }
  const std::size_t n = nodes.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const int d = a.low + static_cast<int>(i / 3);
    const std::size_t k = static_cast<std::size_t>(d - a.low);
    const ClassData& src = nodes[i].data;
    const ClassData& dst = nodes[i + 1].data;
    std::vector<std::size_t> m;
    for (Elem z : src.rep) {
      Elem image = 0;
      if (i % 3 == 0) {
        image = f[k][z];
      } else if (i % 3 == 1) {
        image = g[k][z];
      } else {
        // delta: lift z to B^d, apply d, pull back along f.
        const GammaModule& bm = b.at(d);
        Elem lift = 0;
        while (lift < bm.size() && g[k][lift] != z) ++lift;
        Elem db = b.maps[k][lift];
        Elem pre = 0;
        while (pre < f[k + 1].size() && f[k + 1][pre] != db) ++pre;
        if (pre == f[k + 1].size())
          throw Error(ErrorKind::NotWellDefined, "connecting map leaves the image of f");
        image = pre;
      }
      if (dst.label[image] == UnionFind::npos)
        throw Error(ErrorKind::NotWellDefined, nodes[i].name + " maps a cycle to a non-cycle");
      m.push_back(dst.label[image]);
    }
    next_map.push_back(std::move(m));
  }

  LongExactReport out;
  for (const Node& node : nodes) {
    out.nodes.push_back(node.name);
    out.groups.push_back(node.data.group);
  }
  for (std::size_t i = 0; i < n && out.exact; ++i) {
    const ClassData& here = nodes[i].data;
    const std::size_t zero = here.label[0];
    std::vector<char> in_image(here.rep.size(), 0), in_kernel(here.rep.size(), 0);
    if (i == 0) in_image[zero] = 1;
    else
      for (std::size_t v : next_map[i - 1]) in_image[v] = 1;
    for (std::size_t cl = 0; cl < here.rep.size(); ++cl)
      in_kernel[cl] = i + 1 < n ? next_map[i][cl] == nodes[i + 1].data.label[0] : 1;
    for (std::size_t cl = 0; cl < here.rep.size(); ++cl)
      if (in_image[cl] != in_kernel[cl]) {
        out.exact = false;
        out.first_inexact = nodes[i].name;
        out.witness = "class of element " + std::to_string(here.rep[cl]) +
                      (in_kernel[cl] ? " is in the kernel but not the image"
                                     : " is in the image but not the kernel");
        break;
      }
  }
  return out;
}

LongExactReport long_exact_check(const GammaModule& a, const GammaModule& b, const GammaModule& c,
                                 const HomMap& f, const HomMap& g,
                                 const std::vector<Elem>& cover_elements) {
  if (!is_hom(a, b, f)) throw Error(ErrorKind::NotExactInput, "A: f is not a hom");
  if (!is_hom(b, c, g)) throw Error(ErrorKind::NotExactInput, "B: g is not a hom");
  std::vector<char> seen(b.size(), 0), hit(c.size(), 0);
  for (Elem x = 0; x < a.size(); ++x) {
    if (seen[f[x]]) throw Error(ErrorKind::NotExactInput, "A: f is not injective at " + std::to_string(x));
    seen[f[x]] = 1;
  }
  for (Elem y = 0; y < b.size(); ++y) {
    hit[g[y]] = 1;
    if (seen[y] != (g[y] == 0))
      throw Error(ErrorKind::NotExactInput,
                  "B: image of f differs from kernel of g at " + std::to_string(y));
  }
  if (count(hit) != c.size()) throw Error(ErrorKind::NotExactInput, "C: g is not surjective");

  SheafData sa = tilde_module(a), sb = tilde_module(b), sc = tilde_module(c);
  std::vector<PointSet> cover = cover_of(sb, cover_elements);
  return long_exact_sequence(cech_complex(sa, cover), cech_complex(sb, cover),
                             cech_complex(sc, cover), cech_map(sa, sb, f, cover),
                             cech_map(sb, sc, g, cover));
}

}  // namespace tgs
