#include "tgs/localize.hpp"

#include <algorithm>
#include <sstream>

#include "tgs/union_find.hpp"

namespace tgs {

bool is_multiplicative_system(const GammaSemiring& s, Subset subset) {
  require_subset_carrier(s);
  if ((subset & ~full_set(s.order())) != 0 || contains(subset, 0) || subset == 0) return false;
  if (auto e = s.multiplicative_identity(); e && !contains(subset, *e)) return false;
  const auto m = elements(subset);
  const Elem g = static_cast<Elem>(s.gamma());
  for (Elem a : m)
    for (Elem b : m)
      for (Elem c : m)
        for (Elem al = 0; al < g; ++al)
          for (Elem be = 0; be < g; ++be)
            if (!contains(subset, s.mul(a, al, b, be, c))) return false;
  return true;
}

Elem LocalizedSemiring::class_of(Elem a, Elem s) const {
  auto it = std::lower_bound(members.begin(), members.end(), s);
  if (it == members.end() || *it != s)
    throw Error(ErrorKind::PreconditionViolated,
                "denominator " + std::to_string(s) + " is not in the system");
  return pair_class[a * members.size() + static_cast<std::size_t>(it - members.begin())];
}

namespace {

std::string pair_text(std::pair<Elem, Elem> p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

}  // namespace

LocalizedSemiring localize(const GammaSemiring& s, Subset system,
                           const LocalizeOptions& options) {
  if (!is_multiplicative_system(s, system))
    throw Error(ErrorKind::InvalidSystem, format_subset(system) + " is not a multiplicative system");
  const std::size_t n = s.order(), g = s.gamma();
  const std::vector<Elem> mem = elements(system);
  const std::size_t k = mem.size(), N = n * k;
  enforce_guard(checked_pow(N, 3) * g * g, std::size_t{1} << 24, "localization pair cube");

  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem a = 0; a < n; ++a)
    for (Elem d : mem) pairs.emplace_back(a, d);

  auto related = [&](std::pair<Elem, Elem> p, std::pair<Elem, Elem> q) {
    auto [a, sd] = p;
    auto [b, td] = q;
    for (Elem u : mem) {
      bool all = true;
      for (Elem al = 0; al < g && all; ++al)
        for (Elem be = 0; be < g && all; ++be) {
          Elem lhs, rhs;
          if (options.doubled_relation) {
            lhs = s.mul(u, al, s.mul(a, al, td, be, td), be, td);
            rhs = s.mul(u, al, s.mul(b, al, sd, be, sd), be, sd);
          } else {
            lhs = s.mul(u, al, a, be, td);
            rhs = s.mul(u, al, b, be, sd);
          }
          all = lhs == rhs;
        }
      if (all) return true;
    }
    return false;
  };

  UnionFind uf(N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      if (related(pairs[i], pairs[j])) uf.unite(i, j);

  std::size_t classes = 0;
  auto labels = uf.labels(&classes);
  LocalizedSemiring out;
  out.system = system;
  out.members = mem;
  out.pair_class.assign(labels.begin(), labels.end());
  out.representative.resize(classes);
  for (std::size_t i = N; i-- > 0;) out.representative[labels[i]] = pairs[i];

  auto sum = [&](std::pair<Elem, Elem> p, std::pair<Elem, Elem> q) {
    auto [a, sd] = p;
    auto [b, td] = q;
    Elem right = options.displayed_sum ? s.mul(b, 0, sd, 0, sd) : s.mul(b, 0, sd, 0, td);
    return std::make_pair(s.add(s.mul(a, 0, td, 0, td), right), s.mul(sd, 0, td, 0, td));
  };
  auto index_of = [&](std::pair<Elem, Elem> p) {
    auto it = std::lower_bound(mem.begin(), mem.end(), p.second);
    return labels[p.first * k + static_cast<std::size_t>(it - mem.begin())];
  };

  constexpr Elem unset = ~Elem{0};
  auto fail = [&](const std::string& op, const std::vector<std::size_t>& args,
                  const std::vector<std::size_t>& other) {
    std::ostringstream msg;
    msg << op << " differs on representatives";
    for (auto i : args) msg << " " << pair_text(pairs[i]);
    msg << " versus";
    for (auto i : other) msg << " " << pair_text(pairs[i]);
    throw Error(ErrorKind::NotWellDefined, msg.str());
  };

  std::vector<Elem> add(classes * classes, unset);
  std::vector<std::size_t> add_src(classes * classes * 2);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      std::size_t cell = labels[i] * classes + labels[j];
      Elem value = static_cast<Elem>(index_of(sum(pairs[i], pairs[j])));
      if (add[cell] == unset) {
        add[cell] = value;
        add_src[2 * cell] = i;
        add_src[2 * cell + 1] = j;
      } else if (add[cell] != value) {
        fail("sum", {add_src[2 * cell], add_src[2 * cell + 1]}, {i, j});
      }
    }

  const std::size_t cells = classes * g * classes * g * classes;
  std::vector<Elem> ter(cells, unset);
  std::vector<std::size_t> ter_src(cells * 3);
  for (std::size_t i = 0; i < N; ++i)
    for (Elem al = 0; al < g; ++al)
      for (std::size_t j = 0; j < N; ++j)
        for (Elem be = 0; be < g; ++be)
          for (std::size_t l = 0; l < N; ++l) {
            std::size_t cell = (((labels[i] * g + al) * classes + labels[j]) * g + be) * classes + labels[l];
            auto p = std::make_pair(s.mul(pairs[i].first, al, pairs[j].first, be, pairs[l].first),
                                    s.mul(pairs[i].second, al, pairs[j].second, be, pairs[l].second));
            Elem value = static_cast<Elem>(index_of(p));
            if (ter[cell] == unset) {
              ter[cell] = value;
              ter_src[3 * cell] = i;
              ter_src[3 * cell + 1] = j;
              ter_src[3 * cell + 2] = l;
            } else if (ter[cell] != value) {
              fail("product", {ter_src[3 * cell], ter_src[3 * cell + 1], ter_src[3 * cell + 2]},
                   {i, j, l});
            }
          }

  for (Elem c = 0; c < classes; ++c)
    if (add[c] != c || add[c * classes] != c)
      throw Error(ErrorKind::NotWellDefined,
                  "class of " + pair_text(pairs[0]) + " is not an additive identity");
  out.table = GammaSemiring(classes, g, std::move(add), std::move(ter), s.axioms());
  auto e = s.multiplicative_identity();
  out.unit_denominator = e ? *e : mem.front();
  out.canonical_map.resize(n);
  for (Elem a = 0; a < n; ++a) out.canonical_map[a] = out.class_of(a, out.unit_denominator);
  return out;
}

Subset unit_classes(const GammaSemiring& s) {
  require_subset_carrier(s);
  const Elem n = static_cast<Elem>(s.order()), g = static_cast<Elem>(s.gamma());
  Subset out = 0;
  for (Elem u = 0; u < n; ++u) {
    bool unit = false;
    for (Elem v = 0; v < n && !unit; ++v)
      for (Elem al = 0; al < g && !unit; ++al)
        for (Elem be = 0; be < g && !unit; ++be) {
          bool all = true;
          for (Elem y = 0; y < n && all; ++y) all = s.mul(u, al, v, be, y) == y;
          unit = all;
        }
    if (unit) out |= singleton(u);
  }
  return out;
}

LocalAtPrime localize_at_prime(const GammaSemiring& s, const Ideal& prime,
                               const LocalizeOptions& options) {
  const Subset full = full_set(s.order());
  if (prime.members == full)
    throw Error(ErrorKind::InvalidSystem, "complement of the full carrier is empty");
  if (!is_prime(s, prime).prime)
    throw Error(ErrorKind::PreconditionViolated, format_subset(prime.members) + " is not prime");
  LocalAtPrime out{localize(s, full & ~prime.members, options), prime, Ideal{}};
  const LocalizedSemiring& loc = out.local;

  Subset m = 0;
  for (Elem a : elements(prime.members))
    for (Elem d : loc.members) m |= singleton(loc.class_of(a, d));
  out.maximal = Ideal{m};

  const GammaSemiring& t = loc.table;
  const Subset tfull = full_set(t.order());
  if (m == tfull || !is_ideal(t, m))
    throw Error(ErrorKind::MaximalityFailed,
                "classes with numerator in " + format_subset(prime.members) + " give " +
                    format_subset(m) + ", which is not a proper ideal");
  for (const Ideal& j : all_ideals(t, 64)) {
    if (j.members == tfull) continue;
    if ((j.members & m) != j.members)
      throw Error(ErrorKind::MaximalityFailed,
                  "proper ideal " + format_subset(j.members) + " is not inside " + format_subset(m));
  }
  return out;
}

Subset numerators(const LocalizedSemiring& loc, Subset classes) {
  Subset out = 0;
  const std::size_t k = loc.members.size();
  for (std::size_t i = 0; i < loc.pair_class.size(); ++i)
    if (contains(classes, loc.pair_class[i])) out |= singleton(static_cast<Elem>(i / k));
  return out;
}

std::vector<std::vector<Elem>> universal_lifts(const LocalizedSemiring& loc,
                                               const GammaSemiring& target,
                                               const std::vector<Elem>& f) {
  std::vector<std::vector<Elem>> out;
  for (auto& h : all_morphisms(loc.table, target)) {
    bool ok = true;
    for (std::size_t a = 0; a < f.size() && ok; ++a) ok = h[loc.canonical_map[a]] == f[a];
    if (ok) out.push_back(std::move(h));
  }
  return out;
}

}  // namespace tgs

namespace tgs {

Elem LocalizedModule::class_of(Elem x, Elem s) const {
  auto it = std::lower_bound(members.begin(), members.end(), s);
  if (it == members.end() || *it != s)
    throw Error(ErrorKind::PreconditionViolated,
                "denominator " + std::to_string(s) + " is not in the system");
  return pair_class[x * members.size() + static_cast<std::size_t>(it - members.begin())];
}

LocalizedModule localize_module(const GammaModule& m, Subset system,
                                const LocalizeOptions& options) {
  const GammaSemiring& s = m.base();
  if (!is_multiplicative_system(s, system))
    throw Error(ErrorKind::InvalidSystem, format_subset(system) + " is not a multiplicative system");
  const std::size_t n = s.order(), g = s.gamma(), size = m.size();
  const std::vector<Elem> mem = elements(system);
  const std::size_t k = mem.size(), N = size * k;
  enforce_guard(N * N * k * g * g + N * N * n * n * g * g, std::size_t{1} << 24,
                "module localization pairs");

  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem x = 0; x < size; ++x)
    for (Elem d : mem) pairs.emplace_back(x, d);

  auto related = [&](std::pair<Elem, Elem> p, std::pair<Elem, Elem> q) {
    auto [x, sd] = p;
    auto [y, td] = q;
    for (Elem u : mem) {
      bool all = true;
      for (Elem al = 0; al < g && all; ++al)
        for (Elem be = 0; be < g && all; ++be) {
          if (options.doubled_relation)
            all = m.act(u, al, m.act(td, al, x, be, td), be, td) ==
                  m.act(u, al, m.act(sd, al, y, be, sd), be, sd);
          else
            all = m.act(u, al, x, be, td) == m.act(u, al, y, be, sd);
        }
      if (all) return true;
    }
    return false;
  };

  UnionFind uf(N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      if (related(pairs[i], pairs[j])) uf.unite(i, j);
  std::size_t classes = 0;
  auto labels = uf.labels(&classes);
  auto index_of = [&](std::pair<Elem, Elem> p) {
    auto it = std::lower_bound(mem.begin(), mem.end(), p.second);
    return static_cast<Elem>(labels[p.first * k + static_cast<std::size_t>(it - mem.begin())]);
  };
  auto fail = [&](const std::string& op, std::size_t i, std::size_t j) {
    throw Error(ErrorKind::NotWellDefined, op + " differs on representatives " +
                                               pair_text(pairs[i]) + " and " + pair_text(pairs[j]));
  };

  constexpr Elem unset = ~Elem{0};
  std::vector<Elem> add(classes * classes, unset);
  std::vector<std::size_t> add_src(classes * classes);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      auto [x, sd] = pairs[i];
      auto [y, td] = pairs[j];
      Elem right = options.displayed_sum ? m.act(sd, 0, y, 0, sd) : m.act(sd, 0, y, 0, td);
      Elem value = index_of({m.add(m.act(td, 0, x, 0, td), right), s.mul(sd, 0, td, 0, td)});
      std::size_t cell = labels[i] * classes + labels[j];
      if (add[cell] == unset) {
        add[cell] = value;
        add_src[cell] = i;
      } else if (add[cell] != value) {
        fail("sum", add_src[cell], i);
      }
    }

  std::vector<Elem> act(n * g * classes * g * n, unset);
  std::vector<std::size_t> act_src(act.size());
  for (Elem a = 0; a < n; ++a)
    for (Elem al = 0; al < g; ++al)
      for (std::size_t i = 0; i < N; ++i)
        for (Elem be = 0; be < g; ++be)
          for (Elem b = 0; b < n; ++b) {
            std::size_t cell = (((a * g + al) * classes + labels[i]) * g + be) * n + b;
            Elem value = index_of({m.act(a, al, pairs[i].first, be, b), pairs[i].second});
            if (act[cell] == unset) {
              act[cell] = value;
              act_src[cell] = i;
            } else if (act[cell] != value) {
              fail("action", act_src[cell], i);
            }
          }

  for (Elem c = 0; c < classes; ++c)
    if (add[c] != c || add[c * classes] != c)
      throw Error(ErrorKind::NotWellDefined,
                  "class of " + pair_text(pairs[0]) + " is not an additive identity");

  LocalizedModule out{GammaModule(s, classes, std::move(add), std::move(act)), system, mem,
                      std::vector<Elem>(labels.begin(), labels.end()), {}, 0, {}};
  out.representative.resize(classes);
  for (std::size_t i = N; i-- > 0;) out.representative[labels[i]] = pairs[i];
  auto e = s.multiplicative_identity();
  out.unit_denominator = e ? *e : mem.front();
  out.canonical_map.resize(size);
  for (Elem x = 0; x < size; ++x) out.canonical_map[x] = out.class_of(x, out.unit_denominator);
  return out;
}

}  // namespace tgs
