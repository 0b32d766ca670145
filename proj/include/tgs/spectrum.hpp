#pragma once

#include <vector>

#include "tgs/ideal.hpp"

namespace tgs {

/// Sets of spectrum points, as bitmasks over the point list.
using PointSet = std::uint64_t;

struct PrimeSpectrum {
  std::vector<Ideal> points;  // sorted by bitset value, duplicate free

  std::size_t size() const noexcept { return points.size(); }
  PointSet all() const noexcept { return full_set(points.size()); }
  /// Index of the point equal to `p`, if it is one.
  std::optional<std::size_t> index_of(const Ideal& p) const;
};

/// The prime ideals of `s`. Throws SizeGuardExceeded past 64 points.
PrimeSpectrum spec(const GammaSemiring& s);

/// V(I): points containing I.
PointSet vanishing_set(const GammaSemiring& s, const PrimeSpectrum& sp,
                       const Ideal& ideal);

/// D(a): points not containing a.
PointSet basic_open(const PrimeSpectrum& sp, Elem a);

struct TopologyReport {
  std::size_t closed_set_count = 0;
  bool is_t0 = true;
  bool is_discrete = true;
  std::vector<PointSet> closed_sets;  // sorted
  /// First pair of points no closed set separates, when not T0.
  std::optional<std::pair<std::size_t, std::size_t>> t0_counterexample;
};

TopologyReport topology_report(const GammaSemiring& s, const PrimeSpectrum& sp);

/// Complements of the closed sets.
std::vector<PointSet> open_sets(const TopologyReport& report, const PrimeSpectrum& sp);

}  // namespace tgs
