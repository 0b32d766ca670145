#include "tgs/spectrum.hpp"

#include <algorithm>
#include <set>

namespace tgs {

std::optional<std::size_t> PrimeSpectrum::index_of(const Ideal& p) const {
  auto it = std::lower_bound(points.begin(), points.end(), p,
                             [](const Ideal& x, const Ideal& y) { return x.members < y.members; });
  if (it == points.end() || it->members != p.members) return std::nullopt;
  return static_cast<std::size_t>(it - points.begin());
}

PrimeSpectrum spec(const GammaSemiring& s) {
  PrimeSpectrum sp;
  for (const Ideal& i : all_ideals(s))
    if (is_prime(s, i).prime) sp.points.push_back(i);
  std::sort(sp.points.begin(), sp.points.end(),
            [](const Ideal& x, const Ideal& y) { return x.members < y.members; });
  if (sp.points.size() > 64)
    throw Error(ErrorKind::SizeGuardExceeded, "spectrum has more than 64 points");
  return sp;
}

PointSet vanishing_set(const GammaSemiring& s, const PrimeSpectrum& sp,
                       const Ideal& ideal) {
  if (!is_ideal(s, ideal.members))
    throw Error(ErrorKind::NotAnIdeal, format_subset(ideal.members));
  PointSet out = 0;
  for (std::size_t i = 0; i < sp.size(); ++i)
    if ((ideal.members & sp.points[i].members) == ideal.members) out |= PointSet{1} << i;
  return out;
}

PointSet basic_open(const PrimeSpectrum& sp, Elem a) {
  PointSet out = 0;
  for (std::size_t i = 0; i < sp.size(); ++i)
    if (!contains(sp.points[i].members, a)) out |= PointSet{1} << i;
  return out;
}

TopologyReport topology_report(const GammaSemiring& s, const PrimeSpectrum& sp) {
  std::set<PointSet> closed;
  for (const Ideal& i : all_ideals(s)) closed.insert(vanishing_set(s, sp, i));
  // Close under pairwise union and intersection until stable.
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<PointSet> current(closed.begin(), closed.end());
    for (PointSet x : current)
      for (PointSet y : current) {
        grew |= closed.insert(x | y).second;
        grew |= closed.insert(x & y).second;
      }
  }

  TopologyReport report;
  report.closed_sets.assign(closed.begin(), closed.end());
  report.closed_set_count = closed.size();
  const std::size_t n = sp.size();
  for (std::size_t i = 0; i < n && report.is_t0; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      bool separated = false;
      for (PointSet c : closed) {
        bool ci = (c >> i) & 1u, cj = (c >> j) & 1u;
        if (ci != cj) {
          separated = true;
          break;
        }
      }
      if (!separated) {
        report.is_t0 = false;
        report.t0_counterexample = std::make_pair(i, j);
        break;
      }
    }
  const PointSet all = sp.all();
  for (std::size_t i = 0; i < n; ++i)
    if (!closed.count(all & ~(PointSet{1} << i))) report.is_discrete = false;
  return report;
}

std::vector<PointSet> open_sets(const TopologyReport& report, const PrimeSpectrum& sp) {
  std::vector<PointSet> out;
  for (PointSet c : report.closed_sets) out.push_back(sp.all() & ~c);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tgs
