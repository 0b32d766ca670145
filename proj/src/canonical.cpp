#include "tgs/canonical.hpp"

#include <algorithm>
#include <numeric>

namespace tgs {

Relabeling Relabeling::identity(std::size_t order, std::size_t gamma) {
  Relabeling r;
  r.carrier.resize(order);
  r.gamma.resize(gamma);
  std::iota(r.carrier.begin(), r.carrier.end(), Elem{0});
  std::iota(r.gamma.begin(), r.gamma.end(), Elem{0});
  return r;
}

Relabeling Relabeling::inverse() const {
  Relabeling r;
  r.carrier.resize(carrier.size());
  r.gamma.resize(gamma.size());
  for (std::size_t i = 0; i < carrier.size(); ++i) r.carrier[carrier[i]] = static_cast<Elem>(i);
  for (std::size_t i = 0; i < gamma.size(); ++i) r.gamma[gamma[i]] = static_cast<Elem>(i);
  return r;
}

Relabeling Relabeling::then(const Relabeling& next) const {
  Relabeling r;
  r.carrier.resize(carrier.size());
  r.gamma.resize(gamma.size());
  for (std::size_t i = 0; i < carrier.size(); ++i) r.carrier[i] = next.carrier[carrier[i]];
  for (std::size_t i = 0; i < gamma.size(); ++i) r.gamma[i] = next.gamma[gamma[i]];
  return r;
}

GammaSemiring relabel(const GammaSemiring& s, const Relabeling& r) {
  const std::size_t n = s.order(), g = s.gamma();
  std::vector<Elem> add(n * n), ternary(s.ternary_table().size());
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      add[r.carrier[a] * n + r.carrier[b]] = r.carrier[s.add(a, b)];
  for (Elem a = 0; a < n; ++a)
    for (Elem al = 0; al < g; ++al)
      for (Elem b = 0; b < n; ++b)
        for (Elem be = 0; be < g; ++be)
          for (Elem c = 0; c < n; ++c)
            ternary[s.ternary_index(r.carrier[a], r.gamma[al], r.carrier[b],
                                    r.gamma[be], r.carrier[c])] =
                r.carrier[s.mul(a, al, b, be, c)];
  return GammaSemiring(n, g, std::move(add), std::move(ternary), s.axioms());
}

namespace {

std::size_t factorial(std::size_t k) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= k; ++i) f = f > (std::size_t{1} << 40) ? f : f * i;
  return f;
}

// Compares the relabeled tables (under the inverse permutations, i.e. new
// label -> old label) entry by entry against the current best, stopping at
// the first difference. Returns <0, 0, >0.
int compare_relabeled(const GammaSemiring& s, const std::vector<Elem>& fwd,
                      const std::vector<Elem>& inv, const std::vector<Elem>& ginv,
                      const std::vector<Elem>& best_add,
                      const std::vector<Elem>& best_ternary) {
  const Elem n = static_cast<Elem>(s.order()), g = static_cast<Elem>(s.gamma());
  std::size_t k = 0;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b, ++k) {
      Elem v = fwd[s.add(inv[a], inv[b])];
      if (v != best_add[k]) return v < best_add[k] ? -1 : 1;
    }
  k = 0;
  for (Elem a = 0; a < n; ++a)
    for (Elem al = 0; al < g; ++al)
      for (Elem b = 0; b < n; ++b)
        for (Elem be = 0; be < g; ++be)
          for (Elem c = 0; c < n; ++c, ++k) {
            Elem v = fwd[s.mul(inv[a], ginv[al], inv[b], ginv[be], inv[c])];
            if (v != best_ternary[k]) return v < best_ternary[k] ? -1 : 1;
          }
  return 0;
}

}  // namespace

CanonicalForm canonical_form(const GammaSemiring& s) {
  const std::size_t n = s.order(), g = s.gamma();
  enforce_guard(factorial(n - 1) * factorial(g), 5'000'000, "canonical form search");

  Relabeling best = Relabeling::identity(n, g);
  std::vector<Elem> best_add(s.add_table().begin(), s.add_table().end());
  std::vector<Elem> best_ternary(s.ternary_table().begin(), s.ternary_table().end());

  // inv = new label -> old label; iterate all permutations of 1..n-1.
  std::vector<Elem> inv(n), ginv(g);
  std::iota(inv.begin(), inv.end(), Elem{0});
  std::vector<Elem> fwd(n);
  do {
    for (std::size_t i = 0; i < n; ++i) fwd[inv[i]] = static_cast<Elem>(i);
    std::iota(ginv.begin(), ginv.end(), Elem{0});
    do {
      if (compare_relabeled(s, fwd, inv, ginv, best_add, best_ternary) < 0) {
        Relabeling r;
        r.carrier = fwd;
        r.gamma.resize(g);
        for (std::size_t i = 0; i < g; ++i) r.gamma[ginv[i]] = static_cast<Elem>(i);
        GammaSemiring t = relabel(s, r);
        best_add.assign(t.add_table().begin(), t.add_table().end());
        best_ternary.assign(t.ternary_table().begin(), t.ternary_table().end());
        best = std::move(r);
      }
    } while (std::next_permutation(ginv.begin(), ginv.end()));
  } while (n > 1 && std::next_permutation(inv.begin() + 1, inv.end()));

  return {GammaSemiring(n, g, std::move(best_add), std::move(best_ternary), s.axioms()),
          std::move(best)};
}

std::optional<Relabeling> isomorphic(const GammaSemiring& s1,
                                     const GammaSemiring& s2) {
  if (s1.order() != s2.order() || s1.gamma() != s2.gamma()) return std::nullopt;
  CanonicalForm c1 = canonical_form(s1);
  CanonicalForm c2 = canonical_form(s2);
  if (c1.table.add_table().size() != c2.table.add_table().size() ||
      !std::equal(c1.table.add_table().begin(), c1.table.add_table().end(),
                  c2.table.add_table().begin()) ||
      !std::equal(c1.table.ternary_table().begin(), c1.table.ternary_table().end(),
                  c2.table.ternary_table().begin()))
    return std::nullopt;
  return c1.relabeling.then(c2.relabeling.inverse());
}

}  // namespace tgs
