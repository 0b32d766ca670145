#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tgs/error.hpp"

namespace tgs {

enum class Commutativity { Swap12, FullSymmetric, Off };
enum class ZeroAbsorption { Middle, AllSlots };

/// Which identities verify_axioms treats as defining axioms.
struct AxiomConfig {
  Commutativity commutativity = Commutativity::Swap12;
  ZeroAbsorption zero_absorption = ZeroAbsorption::AllSlots;
  bool require_add_commutative = true;
  bool require_add_associative = true;

  bool operator==(const AxiomConfig&) const = default;
};

/// Renders the config as space-separated `key=value` tokens, in a fixed order.
std::string to_string(const AxiomConfig& config);

/// Parses one `key=value` token into `config`; returns false on an unknown
/// key or value.
bool apply_axiom_token(AxiomConfig& config, const std::string& token);

/// A finite ternary Gamma-semiring given by explicit tables.
///
/// Carrier labels are 0..order-1 and label 0 is the additive identity.
/// Gamma labels are 0..gamma-1. The ternary table is indexed by
/// (a, alpha, b, beta, c) in the flat order
/// (((a*g + alpha)*n + b)*g + beta)*n + c.
class GammaSemiring {
 public:
  GammaSemiring(std::size_t order, std::size_t gamma, std::vector<Elem> add,
                std::vector<Elem> ternary, AxiomConfig config = {});

  std::size_t order() const noexcept { return order_; }
  std::size_t gamma() const noexcept { return gamma_; }
  const AxiomConfig& axioms() const noexcept { return config_; }

  Elem add(Elem a, Elem b) const noexcept { return add_[a * order_ + b]; }
  Elem mul(Elem a, Elem alpha, Elem b, Elem beta, Elem c) const noexcept {
    return ternary_[ternary_index(a, alpha, b, beta, c)];
  }
  std::size_t ternary_index(Elem a, Elem alpha, Elem b, Elem beta,
                            Elem c) const noexcept {
    return (((a * gamma_ + alpha) * order_ + b) * gamma_ + beta) * order_ + c;
  }

  std::span<const Elem> add_table() const noexcept { return add_; }
  std::span<const Elem> ternary_table() const noexcept { return ternary_; }

  /// An element e with e.alpha.e.beta.a = a for every a, alpha, beta, if any
  /// (the least such label).
  std::optional<Elem> multiplicative_identity() const;

  /// Additive inverse of every element exists.
  bool additive_group() const;

  GammaSemiring with_axioms(AxiomConfig config) const;

  bool operator==(const GammaSemiring& other) const {
    return order_ == other.order_ && gamma_ == other.gamma_ &&
           add_ == other.add_ && ternary_ == other.ternary_ &&
           config_ == other.config_;
  }

 private:
  std::size_t order_;
  std::size_t gamma_;
  std::vector<Elem> add_;
  std::vector<Elem> ternary_;
  AxiomConfig config_;
};

/// The one-element structure.
GammaSemiring trivial_semiring(std::size_t gamma = 1);

/// Z_n with addition mod n and the given g=1 ternary rule.
GammaSemiring cyclic_semiring(std::size_t n, bool multiplicative,
                              AxiomConfig config = {});

struct Violation {
  std::string axiom;
  std::vector<Elem> witness;
};

struct AxiomReport {
  bool valid = true;
  std::vector<Violation> violations;
  std::size_t check_count = 0;
  std::size_t failure_count = 0;
};

/// Exhaustively checks every configured axiom.
///
/// Witness layouts, by axiom name:
///   add-associativity       (a, b, c)
///   add-commutativity       (a, b)
///   distributivity-left     (a, a2, alpha, b, beta, c)
///   distributivity-middle   (a, alpha, b, b2, beta, c)
///   distributivity-right    (a, alpha, b, beta, c, c2)
///   associativity           (a, alpha, b, beta, c, gamma, d, delta, e)
///   zero-absorption         (a, alpha, b, beta, c)
///   commutativity           (a, alpha, b, beta, c)
/// At most `max_witnesses_per_axiom` witnesses are stored per axiom;
/// failure_count counts all of them.
AxiomReport verify_axioms(const GammaSemiring& s,
                          std::size_t max_witnesses_per_axiom = 16);

/// Structure-preserving maps between semirings with the same gamma set:
/// f(0)=0, f(a+b)=f(a)+f(b), f(a.alpha.b.beta.c)=f(a).alpha.f(b).beta.f(c).
std::vector<std::vector<Elem>> all_morphisms(const GammaSemiring& from,
                                             const GammaSemiring& to);

bool is_morphism(const GammaSemiring& from, const GammaSemiring& to,
                 std::span<const Elem> map);

}  // namespace tgs
