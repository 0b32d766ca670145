#include "tgs/ideal.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "tgs/spectrum.hpp"

namespace tgs {

Subset subset_of(std::initializer_list<Elem> elems) {
  Subset s = 0;
  for (Elem e : elems) s |= singleton(e);
  return s;
}

std::vector<Elem> elements(Subset s) {
  std::vector<Elem> out;
  while (s) {
    out.push_back(static_cast<Elem>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

std::string format_subset(Subset s) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (Elem e : elements(s)) {
    out << (first ? "" : ",") << e;
    first = false;
  }
  out << "}";
  return out.str();
}

void require_subset_carrier(const GammaSemiring& s) {
  if (s.order() > 64)
    throw Error(ErrorKind::SizeGuardExceeded,
                "subset operations support at most 64 carrier elements");
}

namespace {

void require_ideal(const GammaSemiring& s, const Ideal& i) {
  if (!is_ideal(s, i.members))
    throw Error(ErrorKind::NotAnIdeal, format_subset(i.members));
}

}  // namespace

bool is_ideal(const GammaSemiring& s, Subset m) {
  require_subset_carrier(s);
  const Elem n = static_cast<Elem>(s.order()), g = static_cast<Elem>(s.gamma());
  if (!contains(m, 0) || (m & ~full_set(n)) != 0) return false;
  for (Elem a : elements(m))
    for (Elem b : elements(m))
      if (!contains(m, s.add(a, b))) return false;
  for (Elem a : elements(m))
    for (Elem al = 0; al < g; ++al)
      for (Elem be = 0; be < g; ++be)
        for (Elem x = 0; x < n; ++x)
          for (Elem y = 0; y < n; ++y)
            if (!contains(m, s.mul(a, al, x, be, y)) ||
                !contains(m, s.mul(x, al, a, be, y)) ||
                !contains(m, s.mul(x, al, y, be, a)))
              return false;
  return true;
}

Ideal generated_ideal(const GammaSemiring& s, Subset seed) {
  require_subset_carrier(s);
  const Elem n = static_cast<Elem>(s.order()), g = static_cast<Elem>(s.gamma());
  Subset m = (seed & full_set(n)) | 1u;
  std::vector<Elem> work = elements(m);
  auto push = [&](Elem v) {
    if (!contains(m, v)) {
      m |= singleton(v);
      work.push_back(v);
    }
  };
  while (!work.empty()) {
    Elem a = work.back();
    work.pop_back();
    for (Elem b : elements(m)) push(s.add(a, b));
    for (Elem al = 0; al < g; ++al)
      for (Elem be = 0; be < g; ++be)
        for (Elem x = 0; x < n; ++x)
          for (Elem y = 0; y < n; ++y) {
            push(s.mul(a, al, x, be, y));
            push(s.mul(x, al, a, be, y));
            push(s.mul(x, al, y, be, a));
          }
  }
  return Ideal{m};
}

std::vector<Ideal> all_ideals(const GammaSemiring& s, std::size_t max_order) {
  enforce_guard(s.order(), max_order, "all_ideals carrier size");
  require_subset_carrier(s);
  // Every ideal J is reached from {0} by repeatedly adjoining an element of J
  // and closing, so a breadth-first walk over the lattice finds them all.
  std::set<Subset> seen;
  std::vector<Subset> frontier{generated_ideal(s, 0).members};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<Subset> next;
    for (Subset m : frontier)
      for (Elem a = 0; a < s.order(); ++a)
        if (!contains(m, a)) {
          Subset j = generated_ideal(s, m | singleton(a)).members;
          if (seen.insert(j).second) next.push_back(j);
        }
    frontier = std::move(next);
  }
  std::vector<Ideal> out;
  for (Subset m : seen) out.push_back(Ideal{m});
  std::sort(out.begin(), out.end(), [](const Ideal& x, const Ideal& y) {
    int px = std::popcount(x.members), py = std::popcount(y.members);
    return px != py ? px < py : x.members < y.members;
  });
  return out;
}

PrimeCheck is_prime(const GammaSemiring& s, const Ideal& ideal) {
  require_ideal(s, ideal);
  const Elem n = static_cast<Elem>(s.order()), g = static_cast<Elem>(s.gamma());
  if (ideal.members == full_set(n)) return {false, {}};
  const Subset m = ideal.members;
  for (Elem a = 0; a < n; ++a) {
    if (contains(m, a)) continue;
    for (Elem al = 0; al < g; ++al)
      for (Elem b = 0; b < n; ++b) {
        if (contains(m, b)) continue;
        for (Elem be = 0; be < g; ++be)
          for (Elem c = 0; c < n; ++c)
            if (!contains(m, c) && contains(m, s.mul(a, al, b, be, c)))
              return {false, {a, al, b, be, c}};
      }
  }
  return {true, {}};
}

bool is_semiprime(const GammaSemiring& s, const Ideal& ideal) {
  require_ideal(s, ideal);
  const Elem n = static_cast<Elem>(s.order()), g = static_cast<Elem>(s.gamma());
  for (Elem a = 0; a < n; ++a) {
    if (contains(ideal.members, a)) continue;
    for (Elem al = 0; al < g; ++al)
      for (Elem be = 0; be < g; ++be)
        if (contains(ideal.members, s.mul(a, al, a, be, a))) return false;
  }
  return true;
}

bool is_maximal(const GammaSemiring& s, const Ideal& ideal) {
  require_ideal(s, ideal);
  const Subset full = full_set(s.order());
  if (ideal.members == full)
    throw Error(ErrorKind::PreconditionViolated,
                "is_maximal requires a proper ideal");
  for (const Ideal& j : all_ideals(s))
    if (j.members != full && j.members != ideal.members &&
        (j.members & ideal.members) == ideal.members)
      return false;
  return true;
}

Ideal radical(const GammaSemiring& s, const Ideal& ideal) {
  require_ideal(s, ideal);
  Subset acc = full_set(s.order());
  for (const Ideal& p : spec(s).points)
    if ((ideal.members & p.members) == ideal.members) acc &= p.members;
  return Ideal{acc};
}

Ideal ideal_sum(const GammaSemiring& s, const Ideal& i, const Ideal& j) {
  return generated_ideal(s, i.members | j.members);
}

Ideal ideal_intersection(const Ideal& i, const Ideal& j) {
  return Ideal{i.members & j.members};
}

}  // namespace tgs
