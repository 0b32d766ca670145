#pragma once

#include <optional>
#include <vector>

#include "tgs/ideal.hpp"
#include "tgs/module.hpp"

namespace tgs {

/// 0 is excluded, the multiplicative identity (when one exists) is included,
/// and the set is closed under ternary products of members for all gammas.
bool is_multiplicative_system(const GammaSemiring& s, Subset subset);

struct LocalizeOptions {
  /// Relation (a,s) ~ (b,t) iff some u in S has, for every alpha and beta,
  /// u.(a.t.t).t = u.(b.s.s).s when true, u.a.t = u.b.s when false.
  bool doubled_relation = true;
  /// Sum (a,s)+(b,t) = (a.t.t + b.s.s, s.t.t) when true; otherwise the
  /// balanced (a.t.t + b.s.t, s.t.t). Both use gamma label 0.
  bool displayed_sum = false;
};

/// S^{-1}T. Class 0 is the class of (0, s). Classes are labeled in order of
/// the first pair (a ascending, then s ascending) that reaches them.
struct LocalizedSemiring {
  GammaSemiring table = trivial_semiring();
  Subset system = 0;
  std::vector<Elem> members;                        // system members, ascending
  std::vector<Elem> pair_class;                     // indexed a * |members| + k
  std::vector<std::pair<Elem, Elem>> representative;  // first pair per class
  Elem unit_denominator = 0;   // e when T has an identity, else least member
  std::vector<Elem> canonical_map;  // a -> class of (a, unit_denominator)

  Elem class_of(Elem a, Elem s) const;
  std::size_t size() const noexcept { return table.order(); }
};

/// Throws InvalidSystem or NotWellDefined (with representatives).
LocalizedSemiring localize(const GammaSemiring& s, Subset system,
                           const LocalizeOptions& options = {});

/// Classes u with some v, alpha, beta such that u.alpha.v.beta.y = y for all y.
Subset unit_classes(const GammaSemiring& s);

struct LocalAtPrime {
  LocalizedSemiring local;
  Ideal prime;
  Ideal maximal;  // classes (a, s) with a in the prime
};

/// Localization at T \ P, checking that the classes with numerator in P form
/// the unique maximal ideal (MaximalityFailed otherwise).
LocalAtPrime localize_at_prime(const GammaSemiring& s, const Ideal& prime,
                               const LocalizeOptions& options = {});

/// Numerators a of pairs (a, s) lying in the given classes.
Subset numerators(const LocalizedSemiring& loc, Subset classes);

/// Morphisms g from the localization to `target` with g o canonical_map = f.
std::vector<std::vector<Elem>> universal_lifts(const LocalizedSemiring& loc,
                                               const GammaSemiring& target,
                                               const std::vector<Elem>& f);

/// S^{-1}M as a module over T, with a.alpha.(x, s).beta.b = (a.alpha.x.beta.b, s).
/// The relation and sum mirror LocalizeOptions with x in the middle slot:
/// u.(t.x.t).t = u.(s.y.s).s (doubled) or u.x.t = u.y.s, and
/// (x,s) + (y,t) = (t.x.t + s.y.t, s.t.t) (balanced) or (t.x.t + s.y.s, s.t.t).
struct LocalizedModule {
  GammaModule module;
  Subset system = 0;
  std::vector<Elem> members;
  std::vector<Elem> pair_class;  // indexed x * |members| + k
  std::vector<std::pair<Elem, Elem>> representative;
  Elem unit_denominator = 0;
  std::vector<Elem> canonical_map;  // x -> class of (x, unit_denominator)

  Elem class_of(Elem x, Elem s) const;
  std::size_t size() const noexcept { return module.size(); }
};

LocalizedModule localize_module(const GammaModule& m, Subset system,
                                const LocalizeOptions& options = {});

}  // namespace tgs
