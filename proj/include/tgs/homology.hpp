#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tgs/module.hpp"
#include "tgs/sheaf.hpp"

namespace tgs {

/// A finite abelian group by its invariant factors d1 | d2 | ... (each > 1).
struct AbelianGroup {
  std::size_t order = 1;
  std::vector<std::size_t> invariant_factors;

  std::size_t generator_count() const noexcept { return invariant_factors.size(); }
  bool trivial() const noexcept { return order == 1; }
  bool operator==(const AbelianGroup& o) const {
    return order == o.order && invariant_factors == o.invariant_factors;
  }
};

/// "0", or factors joined as "Z2 x Z6".
std::string format_group(const AbelianGroup& g);

/// Z / B for additive subgroups Z containing B of a group-based module.
AbelianGroup subquotient(const GammaModule& m, const std::vector<char>& cycles,
                         const std::vector<char>& boundaries);
AbelianGroup additive_group(const GammaModule& m);

/// objects[k] sits in degree low + k. maps[k] joins objects[k] and
/// objects[k + 1]: k -> k + 1 for cochain complexes, k + 1 -> k otherwise.
struct Complex {
  int low = 0;
  bool cochain = true;
  std::vector<GammaModule> objects;
  std::vector<HomMap> maps;

  int high() const noexcept { return low + static_cast<int>(objects.size()) - 1; }
  bool has_degree(int d) const noexcept { return d >= low && d <= high(); }
  const GammaModule& at(int d) const { return objects[static_cast<std::size_t>(d - low)]; }
};

/// Endpoints, hom property and d.d = 0. PreconditionViolated with a witness;
/// GroupRequired when an object has no negation.
void validate_complex(const Complex& c);

/// Zero outside the stored degrees.
AbelianGroup homology(const Complex& c, int degree);

struct CohomologyResult {
  int low = 0;
  std::vector<AbelianGroup> groups;  // per degree from low

  AbelianGroup at(int degree) const;
};

CohomologyResult homology_all(const Complex& c);

/// D(a) for each listed element.
std::vector<PointSet> cover_of(const SheafData& sheaf, const std::vector<Elem>& elements);

/// Alternating Cech complex over the cover, using the module sheaf of the
/// regular module for the structure sheaf. Products over p + 1 fold
/// intersections of strictly increasing index tuples; the first tuple is the
/// most significant digit of an element label.
Complex cech_complex(const SheafData& sheaf, const std::vector<PointSet>& cover);
CohomologyResult cech_cohomology(const SheafData& sheaf, const std::vector<PointSet>& cover);

/// Cochain map between the Cech complexes of two module sheaves on the same
/// base induced by a hom f: (x, s) -> (f(x), s) on every section.
std::vector<HomMap> cech_map(const SheafData& from, const SheafData& to, const HomMap& f,
                             const std::vector<PointSet>& cover);

enum class GeneratorOrder { Ascending, Descending };

/// Greedy additive generating set scanning labels in the given order.
std::vector<Elem> greedy_generators(const GammaModule& m, GeneratorOrder order);

struct Resolution {
  Complex complex;        // chain complex F_0 <- F_1 <- ..., degrees from 0
  HomMap augmentation;    // F_0 -> M
  bool complete = false;  // the last kernel was zero
};

/// Free modules on greedy additive generators of each successive kernel, up
/// to F_length. ResolutionFailed when generators do not extend to a
/// surjective hom (non-unital modules).
Resolution free_resolution(const GammaModule& m, std::size_t length = 2,
                           GeneratorOrder order = GeneratorOrder::Ascending);

/// Smallest k <= max_depth with a zero kernel after F_k.
std::optional<std::size_t> pd_upper_bound(const GammaModule& m, std::size_t max_depth = 2);

/// H_i(F . (tensor) N) and H^i(Hom(F., N)).
Complex tor_complex(const Resolution& r, const GammaModule& n);
Complex ext_complex(const Resolution& r, const GammaModule& n);
AbelianGroup tor(const GammaModule& m, const GammaModule& n, std::size_t i,
                 GeneratorOrder order = GeneratorOrder::Ascending);
AbelianGroup ext(const GammaModule& m, const GammaModule& n, std::size_t i,
                 GeneratorOrder order = GeneratorOrder::Ascending);

enum class EulerMode { Generators, Multiplicative };

/// num / den in lowest terms; den = 1 in generator mode.
struct Ratio {
  long long num = 0;
  long long den = 1;
  bool operator==(const Ratio& o) const { return num == o.num && den == o.den; }
};

Ratio euler_characteristic(const CohomologyResult& r, EulerMode mode = EulerMode::Generators);

/// Per-degree homology agreement (zero outside each stored range).
bool quasi_isomorphic(const Complex& a, const Complex& b);

struct LongExactReport {
  bool exact = true;
  std::vector<std::string> nodes;      // H^i(A), H^i(B), H^i(C), ... in order
  std::vector<AbelianGroup> groups;    // parallel to nodes
  std::string first_inexact;           // empty when exact
  std::string witness;
};

/// Long sequence of a degreewise short exact sequence 0 -> A -> B -> C -> 0
/// of cochain complexes with the same degree range. NotExactInput names the
/// degree and node where the short sequence fails.
LongExactReport long_exact_sequence(const Complex& a, const Complex& b, const Complex& c,
                                    const std::vector<HomMap>& f, const std::vector<HomMap>& g);

/// 0 -> A -f-> B -g-> C -> 0 of modules, pushed to Cech complexes of the
/// module sheaves over the cover D(a_i).
LongExactReport long_exact_check(const GammaModule& a, const GammaModule& b, const GammaModule& c,
                                 const HomMap& f, const HomMap& g,
                                 const std::vector<Elem>& cover_elements);

}  // namespace tgs
