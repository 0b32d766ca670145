#pragma once

#include <optional>
#include <vector>

#include "tgs/localize.hpp"
#include "tgs/module.hpp"
#include "tgs/spectrum.hpp"

namespace tgs {

/// T \ (union of the points of U); the system whose fractions give the
/// sections over a nonempty open U.
Subset saturated_system(const GammaSemiring& s, const PrimeSpectrum& sp, PointSet u);

/// Closure of {a} (and the identity, when there is one) under ternary products.
Subset power_system(const GammaSemiring& s, Elem a);

/// Fractions over one open. Empty `members` marks the empty open, whose
/// single section is 0.
struct Sections {
  PointSet open = 0;
  Subset system = 0;
  std::vector<Elem> members;
  std::vector<Elem> pair_class;  // numerator * |members| + k
  std::vector<std::pair<Elem, Elem>> representative;

  Elem class_of(Elem x, Elem s) const;
};

struct GluingReport {
  PointSet open = 0;
  std::vector<PointSet> cover;
  std::size_t sections = 0;
  std::size_t families = 0;  // compatible tuples over the cover
  bool injective = false;
  bool surjective = false;
  bool checked = false;  // false when skipped by the size guard

  bool ok() const noexcept { return checked && injective && surjective; }
};

/// Sections of the structure sheaf or of a module sheaf over every open set.
/// Exactly one of `rings` and `modules` is filled, parallel to `opens`.
struct SheafData {
  GammaSemiring base = trivial_semiring();
  PrimeSpectrum spectrum;
  std::vector<PointSet> opens;        // all open sets, ascending
  std::vector<PointSet> basic_opens;  // distinct D(a), ascending
  LocalizeOptions options;
  std::vector<Sections> sections;
  std::vector<GammaSemiring> rings;
  std::vector<GammaModule> modules;
  bool restrictions_compose = true;
  std::vector<GluingReport> gluing;  // one per open, when the spectrum is small

  bool is_module_sheaf() const noexcept { return !modules.empty(); }
  std::size_t index_of(PointSet u) const;  // PreconditionViolated if u is not open
  const Sections& over(PointSet u) const { return sections[index_of(u)]; }
  std::size_t section_count(PointSet u) const;
  Elem add(PointSet u, Elem x, Elem y) const;
  /// Restriction from u to v, v a subset of u, as a class map.
  std::vector<Elem> restriction(PointSet u, PointSet v) const;
};

/// Gluing checks run at construction for spectra of at most this many points.
inline constexpr std::size_t kGluingCheckPoints = 4;

SheafData structure_sheaf(const GammaSemiring& s, const LocalizeOptions& options = {});
SheafData tilde_module(const GammaModule& m, const LocalizeOptions& options = {});

/// Compatible families over `cover` against the sections over `u`. Throws
/// NotACover unless the cover consists of opens inside u whose
/// union is u.
GluingReport check_gluing(const SheafData& sheaf, PointSet u, const std::vector<PointSet>& cover);

/// Nonempty basic opens inside u.
std::vector<PointSet> basic_cover(const SheafData& sheaf, PointSet u);

/// Colimit of the sections over the basic opens containing a point.
struct Stalk {
  std::size_t point = 0;
  PointSet smallest = 0;           // intersection of those basic opens
  std::vector<Elem> from_smallest;  // section over `smallest` -> stalk element
  std::optional<GammaSemiring> ring;
  std::optional<GammaModule> module;

  std::size_t size() const noexcept { return ring ? ring->order() : module->size(); }
};

Stalk stalk(const SheafData& sheaf, std::size_t point);

/// For f: from -> to, the point map Spec(to) -> Spec(from), Q -> f^-1(Q),
/// as indices into spec(from). Empty when some preimage is not prime.
std::optional<std::vector<std::size_t>> spec_map(const GammaSemiring& from,
                                                 const GammaSemiring& to,
                                                 const std::vector<Elem>& f);

/// The map on global sections (a, s) -> (f(a), f(s)). PreconditionViolated
/// when f sends a global denominator outside the target's global system.
std::vector<Elem> global_sections_map(const SheafData& from, const SheafData& to,
                                      const std::vector<Elem>& f);

}  // namespace tgs
