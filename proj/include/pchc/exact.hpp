#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "pchc/ec_graph.hpp"

namespace pchc {

/// Limits for the exponential searches. Exhaustion is reported separately
/// from a definitive "does not exist".
struct SearchBudget {
  std::uint64_t node_limit = 200'000'000;
  std::chrono::milliseconds time_limit{60'000};

  /// Default budget, with node_limit overridden by PCH_BUDGET_NODES if set.
  static SearchBudget defaults();
};

enum class SearchStatus { Found, NotExists, BudgetExhausted };

const char* to_string(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::NotExists;
  Certificate certificate;  // meaningful only when status == Found
  std::uint64_t nodes = 0;
};

/// Backtracking over vertex orders starting at vertex 0, second vertex below
/// the last one, with dead-state memoisation on (visited set, end, end colour).
/// Requires n >= 3 and n <= 32.
SearchResult exact_pc_ham_cycle(const ColouredComplete& g,
                                SearchBudget budget = SearchBudget::defaults());

/// Same search without the closing edge. Requires 2 <= n <= 32.
SearchResult exact_pc_ham_path(const ColouredComplete& g,
                               SearchBudget budget = SearchBudget::defaults());

/// Cycle covers in canonical form: each cycle starts at its smallest vertex,
/// cycles appear in increasing order of that vertex. Requires 3 <= n <= 32.
SearchResult exact_pc_two_factor(const ColouredComplete& g,
                                 SearchBudget budget = SearchBudget::defaults());

struct LongestResult {
  std::size_t value = 0;        // cycle length or path order
  std::vector<Vertex> witness;  // empty when value == 0
  bool exhaustive = true;       // false: budget ran out, value is a lower bound
  std::uint64_t nodes = 0;
};

/// Longest PC cycle length (0 when there is none). Requires n >= 3.
LongestResult longest_pc_cycle(const ColouredComplete& g,
                               SearchBudget budget = SearchBudget::defaults());

/// Largest order of a PC path. Requires n >= 2.
LongestResult longest_pc_path(const ColouredComplete& g,
                              SearchBudget budget = SearchBudget::defaults());

/// All PC cycles, each in canonical form (smallest vertex first, then the
/// smaller of its two neighbours), sorted. Only pairs present in the
/// colouring are used as edges.
std::vector<std::vector<Vertex>> enumerate_pc_cycles(const PartialColouring& g);
std::vector<std::vector<Vertex>> enumerate_pc_cycles(const ColouredComplete& g);

/// Rotation/reflection normal form used by enumerate_pc_cycles.
std::vector<Vertex> canonical_cycle(std::vector<Vertex> cycle);

}  // namespace pchc
