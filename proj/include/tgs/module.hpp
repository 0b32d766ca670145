#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tgs/semiring.hpp"

namespace tgs {

/// A finite Gamma-module M over a base structure T, with action
/// (a, alpha, x, beta, b) -> a.alpha.x.beta.b for a, b in T and x in M.
/// The action table is flat in the order (((a*g + alpha)*m + x)*g + beta)*n + b.
class GammaModule {
 public:
  GammaModule(GammaSemiring base, std::size_t size, std::vector<Elem> add,
              std::vector<Elem> action);

  const GammaSemiring& base() const noexcept { return base_; }
  std::size_t size() const noexcept { return size_; }
  bool group_based() const noexcept { return group_based_; }

  Elem add(Elem x, Elem y) const noexcept { return add_[x * size_ + y]; }
  Elem act(Elem a, Elem alpha, Elem x, Elem beta, Elem b) const noexcept {
    return action_[action_index(a, alpha, x, beta, b)];
  }
  std::size_t action_index(Elem a, Elem alpha, Elem x, Elem beta, Elem b) const noexcept {
    const std::size_t n = base_.order(), g = base_.gamma();
    return (((a * g + alpha) * size_ + x) * g + beta) * n + b;
  }
  /// Additive inverse; requires group_based().
  Elem negate(Elem x) const;

  const std::vector<Elem>& add_table() const noexcept { return add_; }
  const std::vector<Elem>& action_table() const noexcept { return action_; }

  bool operator==(const GammaModule& o) const {
    return base_ == o.base_ && size_ == o.size_ && add_ == o.add_ && action_ == o.action_;
  }

 private:
  GammaSemiring base_;
  std::size_t size_;
  std::vector<Elem> add_;
  std::vector<Elem> action_;
  std::vector<Elem> neg_;
  bool group_based_ = false;
};

/// T acting on itself through its ternary product.
GammaModule regular_module(const GammaSemiring& base);
GammaModule zero_module(const GammaSemiring& base);
/// Z_m under addition with action given by `rule(a, alpha, x, beta, b)`.
template <class Rule>
GammaModule cyclic_module(const GammaSemiring& base, std::size_t m, Rule rule) {
  const std::size_t n = base.order(), g = base.gamma();
  std::vector<Elem> add(m * m), action(n * g * m * g * n);
  for (Elem x = 0; x < m; ++x)
    for (Elem y = 0; y < m; ++y) add[x * m + y] = static_cast<Elem>((x + y) % m);
  for (Elem a = 0; a < n; ++a)
    for (Elem al = 0; al < g; ++al)
      for (Elem x = 0; x < m; ++x)
        for (Elem be = 0; be < g; ++be)
          for (Elem b = 0; b < n; ++b)
            action[(((a * g + al) * m + x) * g + be) * n + b] =
                static_cast<Elem>(rule(a, al, x, be, b) % m);
  return GammaModule(base, m, std::move(add), std::move(action));
}

/// Exhaustive module-axiom check. Witness layouts:
///   module-add-associativity   (x, y, z)
///   module-add-commutativity   (x, y)
///   module-add-identity        (x)
///   action-distributivity-x    (a, alpha, x, y, beta, b)
///   action-distributivity-a    (a, a2, alpha, x, beta, b)
///   action-distributivity-b    (a, alpha, x, beta, b, b2)
///   action-zero                (a, alpha, beta, b)
///   action-associativity       (a, alpha, b, beta, c, gamma, x, delta, d, eps, e, zeta, f)
AxiomReport verify_module(const GammaModule& m, std::size_t max_witnesses_per_axiom = 16);

/// A hom is stored as its value list over the source carrier.
using HomMap = std::vector<Elem>;

bool is_hom(const GammaModule& from, const GammaModule& to, const HomMap& f);

/// Smallest-first greedy additive generating set.
std::vector<Elem> additive_generators(const GammaModule& m);

/// Every hom, in lexicographic order of value lists. Guarded by
/// |to|^(generator count) <= 2^20 (scaled).
std::vector<HomMap> all_homs(const GammaModule& from, const GammaModule& to);

struct HomModule {
  GammaModule module;
  std::vector<HomMap> homs;  // element i of the module is homs[i]
};

/// Homs under pointwise addition and action. ActionNotClosed when the
/// pointwise action leaves the hom set or the result fails verify_module.
HomModule hom_module(const GammaModule& from, const GammaModule& to);

struct FreeModule {
  GammaModule module;
  std::size_t rank = 0;
  /// Element i is the function with value f_i at slot i; digit i of an
  /// element's base-n expansion is its value at slot i.
  std::vector<Elem> generators;
};

/// Functions {0..k-1} -> T with pointwise operations. Generators use the
/// multiplicative identity; PreconditionViolated without one (k > 0).
FreeModule free_module(const GammaSemiring& base, std::size_t k);

/// The unique hom out of a free module sending generator i to images[i].
HomMap extend_from_generators(const FreeModule& free, const GammaModule& to,
                              const std::vector<Elem>& images);

struct TensorProduct {
  GammaModule module;
  /// balanced[x * |N| + y] is the class of x (tensor) y.
  std::vector<Elem> balanced;
};

/// M (tensor) N: one copy of M per additive generator of N, quotiented by
/// the smallest congruence for addition and action making the slot map
/// additive in the second argument and balanced. Additivity in the first
/// argument holds by construction. Guarded by |M|^(generators of N) <= 2^12.
TensorProduct tensor(const GammaModule& m, const GammaModule& n);

/// f (tensor) N between two tensor products with the same right factor N:
/// the hom sending x (tensor) y to f(x) (tensor) y.
HomMap tensor_map(const TensorProduct& from, const TensorProduct& to, const HomMap& f,
                  std::size_t right_size);

struct Submodule {
  GammaModule module;
  std::vector<Elem> embedding;  // ascending member labels of the parent
};

struct Quotient {
  GammaModule module;
  std::vector<Elem> projection;  // parent element -> coset label
};

Submodule kernel(const GammaModule& from, const GammaModule& to, const HomMap& f);
Submodule image(const GammaModule& from, const GammaModule& to, const HomMap& f);
Submodule submodule(const GammaModule& m, const std::vector<Elem>& members);
Quotient quotient(const GammaModule& m, const std::vector<Elem>& members);

/// (x, y) has label x * |N| + y.
GammaModule direct_sum(const GammaModule& m, const GammaModule& n);

HomMap compose(const HomMap& g, const HomMap& f);  // g after f
HomMap identity_hom(const GammaModule& m);
HomMap zero_hom(const GammaModule& from);

/// A bijective hom, if one exists.
std::optional<HomMap> module_isomorphism(const GammaModule& m, const GammaModule& n);

/// Module files: `size`, `add`, `action` (or `action-last`), and the base as
/// `base-file PATH` or an inline `base-begin ... base-end` block, optionally
/// pinned by `base-hash HEX`. Relative paths resolve against `base_dir`.
GammaModule parse_module(const std::string& text, const std::string& base_dir = ".");
std::string serialize_module(const GammaModule& m);

}  // namespace tgs
