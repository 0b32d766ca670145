#pragma once

#include <optional>
#include <vector>

#include "tgs/semiring.hpp"

namespace tgs {

/// A relabeling maps old carrier labels to new ones (fixing 0) and old gamma
/// labels to new ones.
struct Relabeling {
  std::vector<Elem> carrier;
  std::vector<Elem> gamma;

  static Relabeling identity(std::size_t order, std::size_t gamma);
  Relabeling inverse() const;
  /// Apply `this` first, then `next`.
  Relabeling then(const Relabeling& next) const;
  bool operator==(const Relabeling&) const = default;
};

/// Transports both tables along `r`: the result satisfies
/// result.add(r(a), r(b)) = r(add(a, b)) and likewise for the ternary table.
GammaSemiring relabel(const GammaSemiring& s, const Relabeling& r);

struct CanonicalForm {
  GammaSemiring table;
  Relabeling relabeling;  // s relabeled along this equals `table`
};

/// Lexicographically least (add, ternary) table pair over all carrier
/// permutations fixing 0 and all gamma permutations. Exhaustive, so guarded
/// by (order-1)! * gamma!.
CanonicalForm canonical_form(const GammaSemiring& s);

/// A relabeling transporting s1's tables onto s2's, if one exists.
std::optional<Relabeling> isomorphic(const GammaSemiring& s1,
                                     const GammaSemiring& s2);

}  // namespace tgs
