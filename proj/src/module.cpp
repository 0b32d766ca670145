#include "tgs/module.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <sstream>

#include "tgs/format.hpp"
#include "tgs/union_find.hpp"

namespace tgs {

GammaModule::GammaModule(GammaSemiring base, std::size_t size, std::vector<Elem> add,
                         std::vector<Elem> action)
    : base_(std::move(base)), size_(size), add_(std::move(add)), action_(std::move(action)) {
  const std::size_t n = base_.order(), g = base_.gamma();
  if (size_ == 0) throw Error(ErrorKind::MalformedFile, "module size must be positive");
  if (add_.size() != size_ * size_)
    throw Error(ErrorKind::MalformedFile, "module add table has wrong length");
  if (action_.size() != n * g * size_ * g * n)
    throw Error(ErrorKind::MalformedFile, "module action table has wrong length");
  for (Elem v : add_)
    if (v >= size_) throw Error(ErrorKind::IndexOutOfRange, "module add entry " + std::to_string(v));
  for (Elem v : action_)
    if (v >= size_)
      throw Error(ErrorKind::IndexOutOfRange, "module action entry " + std::to_string(v));
  for (Elem x = 0; x < size_; ++x)
    if (add_[x] != x || add_[x * size_] != x)
      throw Error(ErrorKind::MissingZeroIdentity, "module label 0 is not an additive identity");
  neg_.assign(size_, 0);
  group_based_ = true;
  for (Elem x = 0; x < size_; ++x) {
    auto row = add_.begin() + static_cast<std::ptrdiff_t>(x * size_);
    auto it = std::find(row, row + static_cast<std::ptrdiff_t>(size_), Elem{0});
    if (it == row + static_cast<std::ptrdiff_t>(size_)) {
      group_based_ = false;
      break;
    }
    neg_[x] = static_cast<Elem>(it - row);
  }
}

Elem GammaModule::negate(Elem x) const {
  if (!group_based_) throw Error(ErrorKind::GroupRequired, "module has no additive inverses");
  return neg_[x];
}

GammaModule regular_module(const GammaSemiring& base) {
  const std::size_t n = base.order();
  std::vector<Elem> add(base.add_table().begin(), base.add_table().end());
  std::vector<Elem> action(base.ternary_table().begin(), base.ternary_table().end());
  return GammaModule(base, n, std::move(add), std::move(action));
}

GammaModule zero_module(const GammaSemiring& base) {
  const std::size_t n = base.order(), g = base.gamma();
  return GammaModule(base, 1, {0}, std::vector<Elem>(n * g * g * n, 0));
}

namespace {

class Recorder {
 public:
  Recorder(AxiomReport& r, std::size_t cap) : report_(r), cap_(cap) {}
  void check(bool ok, const char* axiom, std::initializer_list<Elem> witness) {
    ++report_.check_count;
    if (ok) return;
    report_.valid = false;
    ++report_.failure_count;
    if (counts_[axiom]++ < cap_) report_.violations.push_back({axiom, witness});
  }

 private:
  AxiomReport& report_;
  std::size_t cap_;
  std::map<std::string, std::size_t> counts_;
};

}  // namespace

AxiomReport verify_module(const GammaModule& m, std::size_t max_witnesses) {
  const GammaSemiring& t = m.base();
  const Elem n = static_cast<Elem>(t.order()), g = static_cast<Elem>(t.gamma());
  const Elem s = static_cast<Elem>(m.size());
  enforce_guard(checked_pow(std::size_t{n} * g, 6) * s, std::size_t{1} << 26,
                "module associativity check");
  AxiomReport report;
  Recorder rec(report, max_witnesses);

  for (Elem x = 0; x < s; ++x) {
    rec.check(m.add(0, x) == x && m.add(x, 0) == x, "module-add-identity", {x});
    for (Elem y = 0; y < s; ++y) {
      rec.check(m.add(x, y) == m.add(y, x), "module-add-commutativity", {x, y});
      for (Elem z = 0; z < s; ++z)
        rec.check(m.add(m.add(x, y), z) == m.add(x, m.add(y, z)), "module-add-associativity",
                  {x, y, z});
    }
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem al = 0; al < g; ++al)
      for (Elem be = 0; be < g; ++be)
        for (Elem b = 0; b < n; ++b) {
          rec.check(m.act(a, al, 0, be, b) == 0, "action-zero", {a, al, be, b});
          for (Elem x = 0; x < s; ++x) {
            for (Elem y = 0; y < s; ++y)
              rec.check(m.act(a, al, m.add(x, y), be, b) ==
                            m.add(m.act(a, al, x, be, b), m.act(a, al, y, be, b)),
                        "action-distributivity-x", {a, al, x, y, be, b});
            for (Elem c = 0; c < n; ++c) {
              rec.check(m.act(t.add(a, c), al, x, be, b) ==
                            m.add(m.act(a, al, x, be, b), m.act(c, al, x, be, b)),
                        "action-distributivity-a", {a, c, al, x, be, b});
              rec.check(m.act(a, al, x, be, t.add(b, c)) ==
                            m.add(m.act(a, al, x, be, b), m.act(a, al, x, be, c)),
                        "action-distributivity-b", {a, al, x, be, b, c});
            }
          }
        }

  // (a al b be c) ga x de (d ep e ze f) = a al (b be (c ga x de d) ep e) ze f
  std::vector<Elem> w(13, 0);
  const std::size_t radix[13] = {n, g, n, g, n, g, s, g, n, g, n, g, n};
  while (true) {
    Elem a = w[0], al = w[1], b = w[2], be = w[3], c = w[4], ga = w[5], x = w[6], de = w[7],
         d = w[8], ep = w[9], e = w[10], ze = w[11], f = w[12];
    Elem lhs = m.act(t.mul(a, al, b, be, c), ga, x, de, t.mul(d, ep, e, ze, f));
    Elem rhs = m.act(a, al, m.act(b, be, m.act(c, ga, x, de, d), ep, e), ze, f);
    rec.check(lhs == rhs, "action-associativity", {a, al, b, be, c, ga, x, de, d, ep, e, ze, f});
    std::size_t i = 13;
    while (i > 0 && ++w[i - 1] == radix[i - 1]) w[--i] = 0;
    if (i == 0) break;
  }
  return report;
}

bool is_hom(const GammaModule& from, const GammaModule& to, const HomMap& f) {
  if (f.size() != from.size() || !(from.base() == to.base())) return false;
  for (Elem v : f)
    if (v >= to.size()) return false;
  const Elem n = static_cast<Elem>(from.base().order()), g = static_cast<Elem>(from.base().gamma());
  const Elem s = static_cast<Elem>(from.size());
  for (Elem x = 0; x < s; ++x)
    for (Elem y = 0; y < s; ++y)
      if (f[from.add(x, y)] != to.add(f[x], f[y])) return false;
  for (Elem a = 0; a < n; ++a)
    for (Elem al = 0; al < g; ++al)
      for (Elem x = 0; x < s; ++x)
        for (Elem be = 0; be < g; ++be)
          for (Elem b = 0; b < n; ++b)
            if (f[from.act(a, al, x, be, b)] != to.act(a, al, f[x], be, b)) return false;
  return true;
}

std::vector<Elem> additive_generators(const GammaModule& m) {
  std::vector<Elem> gens;
  std::vector<bool> reached(m.size(), false);
  reached[0] = true;
  for (Elem x = 0; x < m.size(); ++x) {
    if (reached[x]) continue;
    gens.push_back(x);
    std::vector<Elem> work;
    for (Elem y = 0; y < m.size(); ++y)
      if (reached[y]) work.push_back(y);
    while (!work.empty()) {
      Elem y = work.back();
      work.pop_back();
      for (Elem gen : gens) {
        Elem z = m.add(y, gen);
        if (!reached[z]) {
          reached[z] = true;
          work.push_back(z);
        }
      }
    }
  }
  return gens;
}

std::vector<HomMap> all_homs(const GammaModule& from, const GammaModule& to) {
  if (!(from.base() == to.base()))
    throw Error(ErrorKind::PreconditionViolated, "modules over different bases");
  const std::vector<Elem> gens = additive_generators(from);
  enforce_guard(checked_pow(to.size(), gens.size()), std::size_t{1} << 20, "hom search");
  std::vector<HomMap> out;
  std::vector<Elem> img(gens.size(), 0);
  constexpr Elem unset = ~Elem{0};
  while (true) {
    HomMap f(from.size(), unset);
    f[0] = 0;
    std::vector<Elem> work{0};
    bool ok = true;
    while (!work.empty() && ok) {
      Elem x = work.back();
      work.pop_back();
      for (std::size_t i = 0; i < gens.size() && ok; ++i) {
        Elem y = from.add(x, gens[i]);
        Elem v = to.add(f[x], img[i]);
        if (f[y] == unset) {
          f[y] = v;
          work.push_back(y);
        } else if (f[y] != v) {
          ok = false;
        }
      }
    }
    if (ok && is_hom(from, to, f)) out.push_back(std::move(f));
    std::size_t i = 0;
    while (i < img.size() && ++img[i] == to.size()) img[i++] = 0;
    if (i == img.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

HomModule hom_module(const GammaModule& from, const GammaModule& to) {
  std::vector<HomMap> homs = all_homs(from, to);
  const GammaSemiring& t = from.base();
  const std::size_t n = t.order(), g = t.gamma(), h = homs.size();
  if (homs.empty() || homs.front() != zero_hom(from))
    throw Error(ErrorKind::ActionNotClosed, "zero map is not a hom");
  std::map<HomMap, Elem> index;
  for (std::size_t i = 0; i < h; ++i) index.emplace(homs[i], static_cast<Elem>(i));

  std::vector<Elem> add(h * h);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      HomMap sum(from.size());
      for (Elem x = 0; x < from.size(); ++x) sum[x] = to.add(homs[i][x], homs[j][x]);
      auto it = index.find(sum);
      if (it == index.end())
        throw Error(ErrorKind::ActionNotClosed,
                    "pointwise sum of homs " + std::to_string(i) + " and " + std::to_string(j) +
                        " is not a hom");
      add[i * h + j] = it->second;
    }
  std::vector<Elem> action(n * g * h * g * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem al = 0; al < g; ++al)
      for (std::size_t i = 0; i < h; ++i)
        for (Elem be = 0; be < g; ++be)
          for (Elem b = 0; b < n; ++b) {
            HomMap v(from.size());
            for (Elem x = 0; x < from.size(); ++x) v[x] = to.act(a, al, homs[i][x], be, b);
            auto it = index.find(v);
            if (it == index.end()) {
              std::ostringstream msg;
              msg << "pointwise action (" << a << "," << al << ",hom " << i << "," << be << ","
                  << b << ") is not a hom";
              throw Error(ErrorKind::ActionNotClosed, msg.str());
            }
            action[(((a * g + al) * h + i) * g + be) * n + b] = it->second;
          }
  GammaModule module(t, h, std::move(add), std::move(action));
  AxiomReport r = verify_module(module, 1);
  if (!r.valid)
    throw Error(ErrorKind::ActionNotClosed,
                "pointwise hom module fails " + r.violations.front().axiom);
  return {std::move(module), std::move(homs)};
}

FreeModule free_module(const GammaSemiring& base, std::size_t k) {
  const std::size_t n = base.order(), g = base.gamma();
  const std::size_t size = checked_pow(n, k);
  enforce_guard(size, std::size_t{1} << 20, "free module size");
  enforce_guard(size * n * n * g * g, std::size_t{1} << 24, "free module action table");
  auto e = base.multiplicative_identity();
  if (k > 0 && !e)
    throw Error(ErrorKind::PreconditionViolated, "free module generators need an identity");

  auto digit = [&](std::size_t x, std::size_t i) { return (x / checked_pow(n, i)) % n; };
  auto pack = [&](const std::vector<Elem>& d) {
    std::size_t x = 0;
    for (std::size_t i = k; i-- > 0;) x = x * n + d[i];
    return static_cast<Elem>(x);
  };
  std::vector<Elem> add(size * size), action(n * g * size * g * n), d(k);
  for (std::size_t x = 0; x < size; ++x)
    for (std::size_t y = 0; y < size; ++y) {
      for (std::size_t i = 0; i < k; ++i)
        d[i] = base.add(static_cast<Elem>(digit(x, i)), static_cast<Elem>(digit(y, i)));
      add[x * size + y] = pack(d);
    }
  for (Elem a = 0; a < n; ++a)
    for (Elem al = 0; al < g; ++al)
      for (std::size_t x = 0; x < size; ++x)
        for (Elem be = 0; be < g; ++be)
          for (Elem b = 0; b < n; ++b) {
            for (std::size_t i = 0; i < k; ++i)
              d[i] = base.mul(a, al, static_cast<Elem>(digit(x, i)), be, b);
            action[(((a * g + al) * size + x) * g + be) * n + b] = pack(d);
          }
  FreeModule out{GammaModule(base, size, std::move(add), std::move(action)), k, {}};
  for (std::size_t i = 0; i < k; ++i) out.generators.push_back(static_cast<Elem>(*e * checked_pow(n, i)));
  return out;
}

HomMap extend_from_generators(const FreeModule& free, const GammaModule& to,
                              const std::vector<Elem>& images) {
  if (images.size() != free.rank)
    throw Error(ErrorKind::PreconditionViolated, "one image per generator is required");
  const GammaSemiring& t = free.module.base();
  const std::size_t n = t.order();
  const Elem e = free.rank ? *t.multiplicative_identity() : 0;
  HomMap f(free.module.size(), 0);
  for (std::size_t x = 0; x < f.size(); ++x) {
    Elem v = 0;
    std::size_t rest = x;
    for (std::size_t i = 0; i < free.rank; ++i, rest /= n)
      v = to.add(v, to.act(static_cast<Elem>(rest % n), 0, images[i], 0, e));
    f[x] = v;
  }
  if (!is_hom(free.module, to, f))
    throw Error(ErrorKind::PreconditionViolated, "generator images do not extend to a hom");
  return f;
}

TensorProduct tensor(const GammaModule& m, const GammaModule& nmod) {
  if (!(m.base() == nmod.base()))
    throw Error(ErrorKind::PreconditionViolated, "modules over different bases");
  const GammaSemiring& t = m.base();
  const Elem bn = static_cast<Elem>(t.order()), g = static_cast<Elem>(t.gamma());
  const std::size_t ms = m.size(), ns = nmod.size();
  // Copies of M indexed by an additive generating set of N: element
  // (x_i) stands for the sum of x_i (tensor) g_i.
  const std::vector<Elem> gens = additive_generators(nmod);
  const std::size_t r = gens.size();
  const std::size_t size = checked_pow(ms, r);
  enforce_guard(size, std::size_t{1} << 12, "tensor presentation size");

  // Coefficients expressing each element of N as a sum of generators.
  std::vector<std::vector<std::size_t>> coeff(ns);
  coeff[0].assign(r, 0);
  std::vector<Elem> order{0};
  for (std::size_t head = 0; head < order.size(); ++head)
    for (std::size_t i = 0; i < r; ++i) {
      Elem y = nmod.add(order[head], gens[i]);
      if (coeff[y].empty()) {
        coeff[y] = coeff[order[head]];
        ++coeff[y][i];
        order.push_back(y);
      }
    }

  std::vector<std::size_t> place(r);
  for (std::size_t i = 0; i < r; ++i) place[i] = checked_pow(ms, i);
  auto comp = [&](std::size_t x, std::size_t i) { return static_cast<Elem>((x / place[i]) % ms); };
  auto plus = [&](std::size_t x, std::size_t y) {
    std::size_t z = 0;
    for (std::size_t i = 0; i < r; ++i) z += m.add(comp(x, i), comp(y, i)) * place[i];
    return z;
  };
  auto acted = [&](Elem a, Elem al, std::size_t x, Elem be, Elem b) {
    std::size_t z = 0;
    for (std::size_t i = 0; i < r; ++i) z += m.act(a, al, comp(x, i), be, b) * place[i];
    return z;
  };
  auto times = [&](std::size_t c, Elem x) {
    Elem v = 0;
    for (std::size_t k = 0; k < c; ++k) v = m.add(v, x);
    return v;
  };
  // x (tensor) y as an element of the presentation.
  auto simple = [&](Elem x, Elem y) {
    std::size_t z = 0;
    for (std::size_t i = 0; i < r; ++i) z += times(coeff[y][i], x) * place[i];
    return z;
  };

  UnionFind uf(size);
  for (Elem x = 0; x < ms; ++x)
    for (Elem y = 0; y < ns; ++y)
      for (Elem y2 = 0; y2 < ns; ++y2)
        uf.unite(plus(simple(x, y), simple(x, y2)), simple(x, nmod.add(y, y2)));
  for (Elem a = 0; a < bn; ++a)
    for (Elem al = 0; al < g; ++al)
      for (Elem x = 0; x < ms; ++x)
        for (Elem be = 0; be < g; ++be)
          for (Elem b = 0; b < bn; ++b)
            for (Elem y = 0; y < ns; ++y)
              uf.unite(simple(m.act(a, al, x, be, b), y), simple(x, nmod.act(a, al, y, be, b)));

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t x = 0; x < size; ++x) {
      std::size_t root = uf.find(x);
      if (root == x) continue;
      for (std::size_t z = 0; z < size; ++z) changed |= uf.unite(plus(x, z), plus(root, z));
      for (Elem a = 0; a < bn; ++a)
        for (Elem al = 0; al < g; ++al)
          for (Elem be = 0; be < g; ++be)
            for (Elem b = 0; b < bn; ++b)
              changed |= uf.unite(acted(a, al, x, be, b), acted(a, al, root, be, b));
    }
  }

  std::size_t classes = 0;
  auto label = uf.labels(&classes);
  std::vector<std::size_t> rep(classes);
  for (std::size_t x = size; x-- > 0;) rep[label[x]] = x;
  std::vector<Elem> add(classes * classes), action(bn * g * classes * g * bn);
  for (std::size_t c = 0; c < classes; ++c)
    for (std::size_t d = 0; d < classes; ++d)
      add[c * classes + d] = static_cast<Elem>(label[plus(rep[c], rep[d])]);
  for (Elem a = 0; a < bn; ++a)
    for (Elem al = 0; al < g; ++al)
      for (std::size_t c = 0; c < classes; ++c)
        for (Elem be = 0; be < g; ++be)
          for (Elem b = 0; b < bn; ++b)
            action[(((a * g + al) * classes + c) * g + be) * bn + b] =
                static_cast<Elem>(label[acted(a, al, rep[c], be, b)]);
  GammaModule out(t, classes, std::move(add), std::move(action));
  AxiomReport report = verify_module(out, 1);
  if (!report.valid)
    throw Error(ErrorKind::QuotientNotWellDefined,
                "tensor quotient fails " + report.violations.front().axiom);
  TensorProduct tp{std::move(out), std::vector<Elem>(ms * ns)};
  for (Elem x = 0; x < ms; ++x)
    for (Elem y = 0; y < ns; ++y) tp.balanced[x * ns + y] = static_cast<Elem>(label[simple(x, y)]);
  return tp;
}

HomMap tensor_map(const TensorProduct& from, const TensorProduct& to, const HomMap& f,
                  std::size_t ns) {
  constexpr Elem unset = ~Elem{0};
  const std::size_t left = from.balanced.size() / ns;
  HomMap h(from.module.size(), unset);
  h[0] = 0;
  std::vector<Elem> work{0};
  while (!work.empty()) {
    Elem c = work.back();
    work.pop_back();
    for (std::size_t x = 0; x < left; ++x)
      for (std::size_t y = 0; y < ns; ++y) {
        Elem d = from.module.add(c, from.balanced[x * ns + y]);
        Elem v = to.module.add(h[c], to.balanced[f[x] * ns + y]);
        if (h[d] == unset) {
          h[d] = v;
          work.push_back(d);
        } else if (h[d] != v) {
          throw Error(ErrorKind::NotWellDefined, "induced tensor map is not well-defined");
        }
      }
  }
  if (std::find(h.begin(), h.end(), unset) != h.end() || !is_hom(from.module, to.module, h))
    throw Error(ErrorKind::NotWellDefined, "induced tensor map is not a hom");
  return h;
}

Submodule submodule(const GammaModule& m, const std::vector<Elem>& members_in) {
  std::vector<Elem> members = members_in;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<Elem> pos(m.size(), ~Elem{0});
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] >= m.size()) throw Error(ErrorKind::NotASubmodule, "label out of range");
    pos[members[i]] = static_cast<Elem>(i);
  }
  if (members.empty() || members[0] != 0)
    throw Error(ErrorKind::NotASubmodule, "subset does not contain 0");
  const std::size_t k = members.size(), n = m.base().order(), g = m.base().gamma();
  std::vector<Elem> add(k * k), action(n * g * k * g * n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Elem v = pos[m.add(members[i], members[j])];
      if (v == ~Elem{0})
        throw Error(ErrorKind::NotASubmodule, "not closed under addition at (" +
                                                  std::to_string(members[i]) + "," +
                                                  std::to_string(members[j]) + ")");
      add[i * k + j] = v;
    }
  for (Elem a = 0; a < n; ++a)
    for (Elem al = 0; al < g; ++al)
      for (std::size_t i = 0; i < k; ++i)
        for (Elem be = 0; be < g; ++be)
          for (Elem b = 0; b < n; ++b) {
            Elem v = pos[m.act(a, al, members[i], be, b)];
            if (v == ~Elem{0})
              throw Error(ErrorKind::NotASubmodule,
                          "not closed under the action at " + std::to_string(members[i]));
            action[(((a * g + al) * k + i) * g + be) * n + b] = v;
          }
  return {GammaModule(m.base(), k, std::move(add), std::move(action)), std::move(members)};
}

namespace {

void require_groups(const GammaModule& a, const GammaModule& b) {
  if (!a.group_based() || !b.group_based())
    throw Error(ErrorKind::GroupRequired, "operation needs group-based modules");
}

}  // namespace

Submodule kernel(const GammaModule& from, const GammaModule& to, const HomMap& f) {
  require_groups(from, to);
  std::vector<Elem> members;
  for (Elem x = 0; x < from.size(); ++x)
    if (f[x] == 0) members.push_back(x);
  return submodule(from, members);
}

Submodule image(const GammaModule& from, const GammaModule& to, const HomMap& f) {
  require_groups(from, to);
  return submodule(to, std::vector<Elem>(f.begin(), f.end()));
}

Quotient quotient(const GammaModule& m, const std::vector<Elem>& members) {
  require_groups(m, m);
  Submodule sub = submodule(m, members);
  const std::size_t size = m.size(), n = m.base().order(), g = m.base().gamma();
  std::vector<Elem> proj(size, ~Elem{0});
  std::vector<Elem> rep;
  for (Elem x = 0; x < size; ++x) {
    if (proj[x] != ~Elem{0}) continue;
    Elem label = static_cast<Elem>(rep.size());
    rep.push_back(x);
    for (Elem s : sub.embedding) proj[m.add(x, s)] = label;
  }
  const std::size_t k = rep.size();
  std::vector<Elem> add(k * k), action(n * g * k * g * n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) add[i * k + j] = proj[m.add(rep[i], rep[j])];
  for (Elem a = 0; a < n; ++a)
    for (Elem al = 0; al < g; ++al)
      for (std::size_t i = 0; i < k; ++i)
        for (Elem be = 0; be < g; ++be)
          for (Elem b = 0; b < n; ++b)
            action[(((a * g + al) * k + i) * g + be) * n + b] = proj[m.act(a, al, rep[i], be, b)];
  // Every representative must give the same cosets.
  for (Elem x = 0; x < size; ++x) {
    for (Elem y = 0; y < size; ++y)
      if (proj[m.add(x, y)] != add[proj[x] * k + proj[y]])
        throw Error(ErrorKind::QuotientNotWellDefined, "sum of cosets depends on representatives");
    for (Elem a = 0; a < n; ++a)
      for (Elem al = 0; al < g; ++al)
        for (Elem be = 0; be < g; ++be)
          for (Elem b = 0; b < n; ++b)
            if (proj[m.act(a, al, x, be, b)] != action[(((a * g + al) * k + proj[x]) * g + be) * n + b])
              throw Error(ErrorKind::QuotientNotWellDefined,
                          "action on cosets depends on representatives");
  }
  return {GammaModule(m.base(), k, std::move(add), std::move(action)), std::move(proj)};
}

GammaModule direct_sum(const GammaModule& m, const GammaModule& nm) {
  if (!(m.base() == nm.base()))
    throw Error(ErrorKind::PreconditionViolated, "modules over different bases");
  const std::size_t a_size = m.size(), b_size = nm.size(), size = a_size * b_size;
  const std::size_t n = m.base().order(), g = m.base().gamma();
  std::vector<Elem> add(size * size), action(n * g * size * g * n);
  for (std::size_t x = 0; x < size; ++x)
    for (std::size_t y = 0; y < size; ++y)
      add[x * size + y] = static_cast<Elem>(
          m.add(static_cast<Elem>(x / b_size), static_cast<Elem>(y / b_size)) * b_size +
          nm.add(static_cast<Elem>(x % b_size), static_cast<Elem>(y % b_size)));
  for (Elem a = 0; a < n; ++a)
    for (Elem al = 0; al < g; ++al)
      for (std::size_t x = 0; x < size; ++x)
        for (Elem be = 0; be < g; ++be)
          for (Elem b = 0; b < n; ++b)
            action[(((a * g + al) * size + x) * g + be) * n + b] = static_cast<Elem>(
                m.act(a, al, static_cast<Elem>(x / b_size), be, b) * b_size +
                nm.act(a, al, static_cast<Elem>(x % b_size), be, b));
  return GammaModule(m.base(), size, std::move(add), std::move(action));
}

HomMap compose(const HomMap& g, const HomMap& f) {
  HomMap out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = g[f[i]];
  return out;
}

HomMap identity_hom(const GammaModule& m) {
  HomMap out(m.size());
  for (Elem x = 0; x < m.size(); ++x) out[x] = x;
  return out;
}

HomMap zero_hom(const GammaModule& from) { return HomMap(from.size(), 0); }

std::optional<HomMap> module_isomorphism(const GammaModule& m, const GammaModule& n) {
  if (m.size() != n.size() || !(m.base() == n.base())) return std::nullopt;
  for (auto& f : all_homs(m, n)) {
    std::vector<bool> hit(n.size(), false);
    bool bijective = true;
    for (Elem v : f) {
      if (hit[v]) bijective = false;
      hit[v] = true;
    }
    if (bijective) return f;
  }
  return std::nullopt;
}

GammaModule parse_module(const std::string& text, const std::string& base_dir) {
  // Lift an inline base block out first, blanking its lines so the
  // remaining line numbers stay accurate.
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
  }
  auto trimmed = [](const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::optional<GammaSemiring> base;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trimmed(lines[i]) != "base-begin") continue;
    std::string block;
    std::size_t j = i + 1;
    while (j < lines.size() && trimmed(lines[j]) != "base-end") block += lines[j++] + "\n";
    if (j == lines.size())
      throw Error(ErrorKind::MalformedFile, "line " + std::to_string(i + 1) + ": base-begin without base-end");
    if (base) throw Error(ErrorKind::MalformedFile, "line " + std::to_string(i + 1) + ": second base block");
    try {
      base = parse_structure(block);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string("inline base: ") + e.what());
    }
    for (std::size_t k = i; k <= j; ++k) lines[k].clear();
    i = j;
  }
  std::string rest;
  for (const auto& l : lines) rest += l + "\n";

  detail::TokenStream ts(rest);
  std::optional<std::size_t> size;
  std::optional<std::string> hash;
  std::vector<Elem> add, action;
  bool action_last = false, have_add = false, have_action = false;
  auto need_dims = [&](const char* key) {
    if (!base || !size) ts.fail(std::string("`") + key + "` needs `size` and the base first");
  };
  auto read_labels = [&](std::size_t count, std::size_t bound, const char* what) {
    std::vector<Elem> v(count);
    for (auto& x : v) {
      std::size_t line = ts.at_end() ? 0 : ts.line();
      std::uint64_t val = ts.next_uint(what);
      if (val >= bound)
        throw Error(ErrorKind::IndexOutOfRange,
                    "line " + std::to_string(line) + ": " + what + " entry " + std::to_string(val) +
                        " out of range");
      x = static_cast<Elem>(val);
    }
    return v;
  };
  while (!ts.at_end()) {
    std::string key = ts.next("key");
    if (key == "size") {
      size = ts.next_uint("size");
    } else if (key == "base-file") {
      if (base) ts.fail("second base");
      std::filesystem::path p = ts.next("base path");
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      base = parse_structure(read_file(p.string()));
    } else if (key == "base-hash") {
      hash = ts.next("hash");
    } else if (key == "add") {
      need_dims("add");
      add = read_labels(*size * *size, *size, "add");
      have_add = true;
    } else if (key == "action" || key == "action-last") {
      need_dims(key.c_str());
      const std::size_t n = base->order(), g = base->gamma(), m = *size;
      action = read_labels(n * g * m * g * n, m, "action");
      action_last = key == "action-last";
      have_action = true;
      if (action_last) {
        // Stored order (((a*g + alpha)*n + b)*g + beta)*m + x.
        std::vector<Elem> reordered(action.size());
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t al = 0; al < g; ++al)
            for (std::size_t b = 0; b < n; ++b)
              for (std::size_t be = 0; be < g; ++be)
                for (std::size_t x = 0; x < m; ++x)
                  reordered[(((a * g + al) * m + x) * g + be) * n + b] =
                      action[(((a * g + al) * n + b) * g + be) * m + x];
        action = std::move(reordered);
      }
    } else {
      ts.fail("unknown key `" + key + "`");
    }
  }
  if (!base) throw Error(ErrorKind::MalformedFile, "module file names no base");
  if (!size || !have_add || !have_action)
    throw Error(ErrorKind::MalformedFile, "module file needs size, add and action");
  if (hash) {
    std::string want = *hash;
    std::transform(want.begin(), want.end(), want.begin(), ::tolower);
    if (want != structure_hash(*base))
      throw Error(ErrorKind::MalformedFile,
                  "base-hash " + *hash + " does not match base " + structure_hash(*base));
  }
  return GammaModule(*base, *size, std::move(add), std::move(action));
}

std::string serialize_module(const GammaModule& m) {
  std::ostringstream out;
  const std::size_t s = m.size(), n = m.base().order();
  out << "base-begin\n" << serialize_structure(m.base()) << "base-end\n";
  out << "base-hash " << structure_hash(m.base()) << "\n";
  out << "size " << s << "\n";
  out << "add\n";
  for (std::size_t x = 0; x < s; ++x) {
    for (std::size_t y = 0; y < s; ++y) out << (y ? " " : "") << m.add_table()[x * s + y];
    out << "\n";
  }
  out << "action\n";
  const auto& act = m.action_table();
  for (std::size_t i = 0; i < act.size(); i += n) {
    for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << act[i + j];
    out << "\n";
  }
  return out.str();
}

}  // namespace tgs
