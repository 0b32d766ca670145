#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "tgs/semiring.hpp"

namespace tgs {

struct EnumerationTask {
  std::size_t order = 1;
  std::size_t gamma = 1;
  AxiomConfig axioms;
  bool commutative_only = false;
  std::optional<std::vector<Elem>> fixed_add;
  std::optional<std::size_t> max_results;
  std::optional<std::chrono::milliseconds> time_budget;
  /// 0 or 1 runs sequentially in canonical order; more partitions the search
  /// tree by a prefix of ternary cells.
  unsigned workers = 1;
};

struct EnumerationStatus {
  std::size_t emitted = 0;
  bool complete = true;  // false when a result or time budget cut the search
};

/// Throws SizeGuardExceeded unless order^3 * gamma^2 <= 2^20 (scaled).
void check_enumeration_guard(const EnumerationTask& task);

/// Streams every valid labeled structure exactly once. With one worker the
/// order is deterministic (add tables, then ternary cells in flat order,
/// each cell trying labels ascending). With several workers the emitted set
/// is the same but the order may differ; the sink is called under a lock.
EnumerationStatus enumerate_structures(
    const EnumerationTask& task,
    const std::function<void(const GammaSemiring&)>& sink);

struct EnumerationResult {
  std::vector<GammaSemiring> structures;
  EnumerationStatus status;
};

EnumerationResult enumerate_all(const EnumerationTask& task);

struct IsoCount {
  std::size_t labeled = 0;
  std::size_t iso_classes = 0;
  bool complete = true;
};

IsoCount count_up_to_iso(const EnumerationTask& task);

/// Every add table on `order` labels with 0 as identity, commutative and/or
/// associative as the config requires.
std::vector<std::vector<Elem>> candidate_add_tables(std::size_t order,
                                                   const AxiomConfig& config);

}  // namespace tgs
