#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tgs/semiring.hpp"

namespace tgs {

/// Subsets of carriers up to 64 elements, as bitmasks (bit i = label i).
using Subset = std::uint64_t;

constexpr Subset singleton(Elem a) { return Subset{1} << a; }
constexpr bool contains(Subset s, Elem a) { return (s >> a) & 1u; }
inline Subset full_set(std::size_t n) {
  return n >= 64 ? ~Subset{0} : (Subset{1} << n) - 1;
}
Subset subset_of(std::initializer_list<Elem> elems);
std::vector<Elem> elements(Subset s);
std::string format_subset(Subset s);

/// An ideal: contains 0, closed under +, absorbing for the ternary product
/// in every carrier slot. Always interpreted relative to one GammaSemiring.
struct Ideal {
  Subset members = 1;

  bool operator==(const Ideal&) const = default;
  auto operator<=>(const Ideal&) const = default;
};

/// Throws SizeGuardExceeded when the carrier exceeds 64 elements.
void require_subset_carrier(const GammaSemiring& s);

bool is_ideal(const GammaSemiring& s, Subset candidate);

/// Smallest ideal containing `seed`.
Ideal generated_ideal(const GammaSemiring& s, Subset seed);

/// Every ideal, sorted by (size, bitset value). Guarded by `max_order`
/// (default 16, scaled by TGS_GUARD).
std::vector<Ideal> all_ideals(const GammaSemiring& s, std::size_t max_order = 16);

struct PrimeCheck {
  bool prime = false;
  /// (a, alpha, b, beta, c) whose product lies in the ideal while no factor
  /// does; empty when the ideal is the whole carrier.
  std::vector<Elem> witness;
};

PrimeCheck is_prime(const GammaSemiring& s, const Ideal& ideal);
bool is_semiprime(const GammaSemiring& s, const Ideal& ideal);
/// Proper ideal with no ideal strictly between it and the carrier.
bool is_maximal(const GammaSemiring& s, const Ideal& ideal);
/// Intersection of the prime ideals containing `ideal` (the carrier if none).
Ideal radical(const GammaSemiring& s, const Ideal& ideal);

Ideal ideal_sum(const GammaSemiring& s, const Ideal& i, const Ideal& j);
Ideal ideal_intersection(const Ideal& i, const Ideal& j);

}  // namespace tgs
