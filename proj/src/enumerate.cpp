#include "tgs/enumerate.hpp"

#include <atomic>
#include <mutex>
#include <set>
#include <thread>

#include "tgs/canonical.hpp"

namespace tgs {

namespace {

constexpr Elem kUnset = ~Elem{0};

bool add_table_ok_partial(const std::vector<Elem>& t, std::size_t n,
                          const AxiomConfig& cfg) {
  auto at = [&](Elem a, Elem b) { return t[a * n + b]; };
  if (cfg.require_add_commutative)
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (at(a, b) != kUnset && at(b, a) != kUnset && at(a, b) != at(b, a))
          return false;
  if (cfg.require_add_associative)
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        Elem ab = at(a, b);
        if (ab == kUnset) continue;
        for (Elem c = 0; c < n; ++c) {
          Elem bc = at(b, c);
          if (bc == kUnset) continue;
          Elem l = at(ab, c), r = at(a, bc);
          if (l != kUnset && r != kUnset && l != r) return false;
        }
      }
  return true;
}

void add_tables_rec(std::vector<Elem>& t, std::size_t n, std::size_t cell,
                    const AxiomConfig& cfg,
                    std::vector<std::vector<Elem>>& out) {
  if (cell == n * n) {
    out.push_back(t);
    return;
  }
  if (t[cell] != kUnset) {
    add_tables_rec(t, n, cell + 1, cfg, out);
    return;
  }
  for (Elem v = 0; v < n; ++v) {
    t[cell] = v;
    if (add_table_ok_partial(t, n, cfg)) add_tables_rec(t, n, cell + 1, cfg, out);
  }
  t[cell] = kUnset;
}

class Searcher {
 public:
  Searcher(const EnumerationTask& task, const std::vector<Elem>& add)
      : n_(static_cast<Elem>(task.order)),
        g_(static_cast<Elem>(task.gamma)),
        cfg_(task.axioms),
        swap12_(task.axioms.commutativity != Commutativity::Off ||
                task.commutative_only),
        full_sym_(task.axioms.commutativity == Commutativity::FullSymmetric),
        add_(add),
        cells_(std::size_t{n_} * g_ * n_ * g_ * n_, kUnset) {}

  std::size_t cell_count() const { return cells_.size(); }
  std::vector<Elem>& cells() { return cells_; }
  const std::vector<Elem>& add() const { return add_; }

  /// Checks every identity that involves cell k and is fully instantiated.
  bool consistent(std::size_t k) const {
    Elem p, pi, q, rho, r;
    decode(k, p, pi, q, rho, r);
    const Elem v = cells_[k];

    bool zero_slot = q == 0;
    if (cfg_.zero_absorption == ZeroAbsorption::AllSlots)
      zero_slot = zero_slot || p == 0 || r == 0;
    if (zero_slot && v != 0) return false;

    if (swap12_) {
      Elem w = get(q, pi, p, rho, r);
      if (w != kUnset && w != v) return false;
    }
    if (full_sym_) {
      Elem w = get(p, pi, r, rho, q);
      if (w != kUnset && w != v) return false;
    }

    // Distributivity: the varying slot holds x, y or x+y.
    for (Elem x = 0; x < n_; ++x)
      for (Elem y = 0; y < n_; ++y) {
        Elem xy = plus(x, y);
        if (p == x || p == y || p == xy)
          if (!distributes(get(xy, pi, q, rho, r), get(x, pi, q, rho, r),
                           get(y, pi, q, rho, r)))
            return false;
        if (q == x || q == y || q == xy)
          if (!distributes(get(p, pi, xy, rho, r), get(p, pi, x, rho, r),
                           get(p, pi, y, rho, r)))
            return false;
        if (r == x || r == y || r == xy)
          if (!distributes(get(p, pi, q, rho, xy), get(p, pi, q, rho, x),
                           get(p, pi, q, rho, y)))
            return false;
      }

    return associativity_ok(p, pi, q, rho, r);
  }

 private:
  Elem plus(Elem a, Elem b) const { return add_[a * n_ + b]; }

  Elem get(Elem a, Elem al, Elem b, Elem be, Elem c) const {
    if (a == kUnset || b == kUnset || c == kUnset) return kUnset;
    return cells_[(((std::size_t{a} * g_ + al) * n_ + b) * g_ + be) * n_ + c];
  }

  void decode(std::size_t k, Elem& a, Elem& al, Elem& b, Elem& be, Elem& c) const {
    c = static_cast<Elem>(k % n_); k /= n_;
    be = static_cast<Elem>(k % g_); k /= g_;
    b = static_cast<Elem>(k % n_); k /= n_;
    al = static_cast<Elem>(k % g_); k /= g_;
    a = static_cast<Elem>(k);
  }

  bool distributes(Elem whole, Elem x, Elem y) const {
    if (whole == kUnset || x == kUnset || y == kUnset) return true;
    return whole == plus(x, y);
  }

  bool instance_ok(Elem a, Elem al, Elem b, Elem be, Elem c, Elem ga, Elem d,
                   Elem de, Elem e) const {
    Elem left = get(get(a, al, b, be, c), ga, d, de, e);
    Elem middle = get(a, al, get(b, be, c, ga, d), de, e);
    Elem right = get(a, al, b, be, get(c, ga, d, de, e));
    auto clash = [](Elem x, Elem y) { return x != kUnset && y != kUnset && x != y; };
    return !clash(left, middle) && !clash(middle, right) && !clash(left, right);
  }

  // Instances of the three-way associativity identity in which cell
  // (p, pi, q, rho, r) is read, either as an inner or an outer product.
  bool associativity_ok(Elem p, Elem pi, Elem q, Elem rho, Elem r) const {
    for (Elem x = 0; x < n_; ++x)
      for (Elem xg = 0; xg < g_; ++xg)
        for (Elem y = 0; y < n_; ++y)
          for (Elem yg = 0; yg < g_; ++yg) {
            // Inner positions: (pqr) xg x yg y, x xg (p q r) yg y, x xg y yg (pqr).
            if (!instance_ok(p, pi, q, rho, r, xg, x, yg, y)) return false;
            if (!instance_ok(x, xg, p, pi, q, rho, r, yg, y)) return false;
            if (!instance_ok(x, xg, y, yg, p, pi, q, rho, r)) return false;
          }
    // Outer positions: the cell is read with an inner product as one slot.
    for (Elem a = 0; a < n_; ++a)
      for (Elem al = 0; al < g_; ++al)
        for (Elem b = 0; b < n_; ++b)
          for (Elem be = 0; be < g_; ++be)
            for (Elem c = 0; c < n_; ++c) {
              Elem inner = get(a, al, b, be, c);
              if (inner == kUnset) continue;
              if (inner == p && !instance_ok(a, al, b, be, c, pi, q, rho, r))
                return false;
              if (inner == q && !instance_ok(p, pi, a, al, b, be, c, rho, r))
                return false;
              if (inner == r && !instance_ok(p, pi, q, rho, a, al, b, be, c))
                return false;
            }
    return true;
  }

  Elem n_, g_;
  AxiomConfig cfg_;
  bool swap12_, full_sym_;
  std::vector<Elem> add_;
  std::vector<Elem> cells_;
};

struct SharedState {
  const EnumerationTask& task;
  const std::function<void(const GammaSemiring&)>& sink;
  std::mutex sink_mutex;
  std::atomic<std::size_t> emitted{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> budget_hit{false};
  std::chrono::steady_clock::time_point deadline;
  bool has_deadline = false;
};

void emit(SharedState& st, Searcher& s) {
  GammaSemiring candidate(st.task.order, st.task.gamma, s.add(), s.cells(),
                          st.task.axioms);
  // The incremental checks cover every identity; this is the final gate.
  if (!verify_axioms(candidate, 1).valid) return;
  std::lock_guard<std::mutex> lock(st.sink_mutex);
  if (st.stop.load()) return;
  st.sink(candidate);
  std::size_t count = ++st.emitted;
  if (st.task.max_results && count >= *st.task.max_results) {
    st.stop = true;
    st.budget_hit = true;
  }
}

void search(SharedState& st, Searcher& s, std::size_t cell, std::size_t& ticks) {
  if (st.stop.load(std::memory_order_relaxed)) return;
  if (st.has_deadline && (++ticks & 1023u) == 0 &&
      std::chrono::steady_clock::now() > st.deadline) {
    st.stop = true;
    st.budget_hit = true;
    return;
  }
  if (cell == s.cell_count()) {
    emit(st, s);
    return;
  }
  auto& cells = s.cells();
  for (Elem v = 0; v < st.task.order; ++v) {
    cells[cell] = v;
    if (s.consistent(cell)) search(st, s, cell + 1, ticks);
    if (st.stop.load(std::memory_order_relaxed)) break;
  }
  cells[cell] = kUnset;
}

// Collects consistent assignments of the first `depth` cells.
void prefixes(Searcher& s, std::size_t cell, std::size_t depth, Elem n,
              std::vector<std::vector<Elem>>& out) {
  auto& cells = s.cells();
  if (cell == depth) {
    out.emplace_back(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(depth));
    return;
  }
  for (Elem v = 0; v < n; ++v) {
    cells[cell] = v;
    if (s.consistent(cell)) prefixes(s, cell + 1, depth, n, out);
  }
  cells[cell] = kUnset;
}

}  // namespace

std::vector<std::vector<Elem>> candidate_add_tables(std::size_t order,
                                                   const AxiomConfig& config) {
  std::vector<Elem> t(order * order, kUnset);
  for (Elem a = 0; a < order; ++a) {
    t[a] = a;
    t[a * order] = a;
  }
  std::vector<std::vector<Elem>> out;
  add_tables_rec(t, order, 0, config, out);
  return out;
}

void check_enumeration_guard(const EnumerationTask& task) {
  if (task.order == 0 || task.gamma == 0)
    throw Error(ErrorKind::PreconditionViolated, "order and gamma must be positive");
  std::size_t cells = checked_pow(task.order, 3);
  cells = checked_pow(task.gamma, 2) > (std::size_t{1} << 40) ? cells * (std::size_t{1} << 40)
                                                            : cells * checked_pow(task.gamma, 2);
  enforce_guard(cells, std::size_t{1} << 20, "enumeration ternary cells");
}

EnumerationStatus enumerate_structures(
    const EnumerationTask& task,
    const std::function<void(const GammaSemiring&)>& sink) {
  check_enumeration_guard(task);
  std::vector<std::vector<Elem>> add_tables;
  if (task.fixed_add) {
    // Validated through the GammaSemiring constructor on first emission;
    // reject shape errors up front.
    GammaSemiring probe(task.order, task.gamma, *task.fixed_add,
                        std::vector<Elem>(task.order * task.gamma * task.order *
                                              task.gamma * task.order,
                                          0));
    (void)probe;
    add_tables.push_back(*task.fixed_add);
  } else {
    add_tables = candidate_add_tables(task.order, task.axioms);
  }

  SharedState st{task, sink, {}, {}, {}, {}, {}, false};
  if (task.time_budget) {
    st.has_deadline = true;
    st.deadline = std::chrono::steady_clock::now() + *task.time_budget;
  }

  if (task.workers <= 1) {
    std::size_t ticks = 0;
    for (const auto& add : add_tables) {
      Searcher s(task, add);
      search(st, s, 0, ticks);
      if (st.stop) break;
    }
  } else {
    struct Job {
      std::size_t add_index;
      std::vector<Elem> prefix;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < add_tables.size(); ++i) {
      Searcher s(task, add_tables[i]);
      std::size_t depth = 0, fan = 1;
      while (depth < s.cell_count() && fan < 4u * task.workers) {
        ++depth;
        fan *= task.order;
      }
      std::vector<std::vector<Elem>> pre;
      prefixes(s, 0, depth, static_cast<Elem>(task.order), pre);
      for (auto& p : pre) jobs.push_back({i, std::move(p)});
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      std::size_t ticks = 0;
      while (!st.stop) {
        std::size_t j = next++;
        if (j >= jobs.size()) break;
        Searcher s(task, add_tables[jobs[j].add_index]);
        std::copy(jobs[j].prefix.begin(), jobs[j].prefix.end(), s.cells().begin());
        search(st, s, jobs[j].prefix.size(), ticks);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < task.workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  return {st.emitted.load(), !st.budget_hit.load()};
}

EnumerationResult enumerate_all(const EnumerationTask& task) {
  EnumerationResult result;
  result.status = enumerate_structures(
      task, [&](const GammaSemiring& s) { result.structures.push_back(s); });
  return result;
}

IsoCount count_up_to_iso(const EnumerationTask& task) {
  std::set<std::pair<std::vector<Elem>, std::vector<Elem>>> forms;
  IsoCount count;
  auto status = enumerate_structures(task, [&](const GammaSemiring& s) {
    ++count.labeled;
    CanonicalForm c = canonical_form(s);
    forms.emplace(std::vector<Elem>(c.table.add_table().begin(), c.table.add_table().end()),
                  std::vector<Elem>(c.table.ternary_table().begin(),
                                    c.table.ternary_table().end()));
  });
  count.iso_classes = forms.size();
  count.complete = status.complete;
  return count;
}

}  // namespace tgs
