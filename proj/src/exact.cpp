#include "pchc/exact.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace pchc {

SearchBudget SearchBudget::defaults() {
  SearchBudget b;
  if (const char* env = std::getenv("PCH_BUDGET_NODES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) b.node_limit = v;
  }
  return b;
}

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "Found";
    case SearchStatus::NotExists: return "NotExists";
    case SearchStatus::BudgetExhausted: return "BudgetExhausted";
  }
  return "?";
}

namespace {

struct BudgetExceeded {};

class Meter {
 public:
  explicit Meter(const SearchBudget& b)
      : budget_(b), start_(std::chrono::steady_clock::now()) {}

  void tick() {
    ++nodes_;
    if (nodes_ > budget_.node_limit) throw BudgetExceeded{};
    if ((nodes_ & 0x3ff) == 0 && std::chrono::steady_clock::now() - start_ > budget_.time_limit) {
      throw BudgetExceeded{};
    }
  }
  std::uint64_t nodes() const { return nodes_; }

 private:
  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t nodes_ = 0;
};

// rank[v*n+u] = index of c(v,u) among the distinct colours at v.
std::vector<std::uint8_t> colour_ranks(const ColouredComplete& g) {
  const std::size_t n = g.order();
  std::vector<std::uint8_t> rank(n * n, 0);
  std::vector<Colour> seen;
  for (Vertex v = 0; v < n; ++v) {
    seen.clear();
    for (Vertex u = 0; u < n; ++u) {
      if (u == v) continue;
      const Colour c = g(v, u);
      auto it = std::find(seen.begin(), seen.end(), c);
      if (it == seen.end()) {
        rank[v * n + u] = static_cast<std::uint8_t>(seen.size());
        seen.push_back(c);
      } else {
        rank[v * n + u] = static_cast<std::uint8_t>(it - seen.begin());
      }
    }
  }
  return rank;
}

void require_range(const ColouredComplete& g, std::size_t lo, const char* what) {
  if (g.order() < lo) {
    throw std::domain_error(std::string(what) + " needs n >= " + std::to_string(lo));
  }
  if (g.order() > 32) throw std::domain_error(std::string(what) + " supports n <= 32");
}

std::uint64_t state_key(std::uint32_t mask, Vertex last, std::uint8_t rank) {
  return static_cast<std::uint64_t>(mask) | (static_cast<std::uint64_t>(last) << 32) |
         (static_cast<std::uint64_t>(rank) << 40);
}

// Shared machinery for Hamiltonian path/cycle backtracking.
class HamSearch {
 public:
  HamSearch(const ColouredComplete& g, const SearchBudget& budget)
      : g_(g), n_(g.order()), full_((n_ == 32) ? 0xffffffffu : ((1u << n_) - 1)),
        rank_(colour_ranks(g)), meter_(budget) {}

  // Cycle: start at 0, fixed second vertex, closing vertex > second.
  bool cycle_from(Vertex second) {
    dead_.clear();
    path_ = {0, second};
    return extend((1u << 0) | (1u << second), /*cycle=*/true);
  }

  bool path_from(Vertex start) {
    path_ = {start};
    return extend(1u << start, /*cycle=*/false);
  }

  const std::vector<Vertex>& path() const { return path_; }
  std::uint64_t nodes() const { return meter_.nodes(); }

 private:
  bool closes(Vertex last) const {
    const Vertex prev = path_[path_.size() - 2];
    const Vertex second = path_[1];
    if (last <= second) return false;
    const Colour wrap = g_(last, 0);
    return wrap != g_(prev, last) && wrap != g_(0, second);
  }

  bool extend(std::uint32_t mask, bool cycle) {
    meter_.tick();
    const Vertex last = path_.back();
    if (mask == full_) return cycle ? closes(last) : true;
    const bool has_prev = path_.size() >= 2;
    const std::uint8_t r = has_prev ? rank_[last * n_ + path_[path_.size() - 2]] : 0xff;
    const std::uint64_t key = state_key(mask, last, r);
    if (dead_.count(key)) return false;
    const Colour in = has_prev ? g_(path_[path_.size() - 2], last) : 0;
    for (Vertex v = 0; v < n_; ++v) {
      if (mask & (1u << v)) continue;
      if (has_prev && g_(last, v) == in) continue;
      path_.push_back(v);
      if (extend(mask | (1u << v), cycle)) return true;
      path_.pop_back();
    }
    dead_.insert(key);
    return false;
  }

  const ColouredComplete& g_;
  std::size_t n_;
  std::uint32_t full_;
  std::vector<std::uint8_t> rank_;
  Meter meter_;
  std::vector<Vertex> path_;
  std::unordered_set<std::uint64_t> dead_;
};

}  // namespace

SearchResult exact_pc_ham_cycle(const ColouredComplete& g, SearchBudget budget) {
  require_range(g, 3, "exact_pc_ham_cycle");
  HamSearch search(g, budget);
  SearchResult result;
  try {
    for (Vertex second = 1; second < g.order(); ++second) {
      if (search.cycle_from(second)) {
        result.status = SearchStatus::Found;
        result.certificate.kind = CertificateKind::HamCycle;
        result.certificate.cycles = {search.path()};
        result.certificate = verify_certificate(g, result.certificate);
        break;
      }
    }
  } catch (const BudgetExceeded&) {
    result.status = SearchStatus::BudgetExhausted;
  }
  result.nodes = search.nodes();
  return result;
}

SearchResult exact_pc_ham_path(const ColouredComplete& g, SearchBudget budget) {
  require_range(g, 2, "exact_pc_ham_path");
  HamSearch search(g, budget);
  SearchResult result;
  try {
    for (Vertex start = 0; start < g.order(); ++start) {
      if (search.path_from(start)) {
        result.status = SearchStatus::Found;
        result.certificate.kind = CertificateKind::HamPath;
        result.certificate.path = search.path();
        result.certificate = verify_certificate(g, result.certificate);
        break;
      }
    }
  } catch (const BudgetExceeded&) {
    result.status = SearchStatus::BudgetExhausted;
  }
  result.nodes = search.nodes();
  return result;
}

namespace {

class TwoFactorSearch {
 public:
  TwoFactorSearch(const ColouredComplete& g, const SearchBudget& budget)
      : g_(g), n_(g.order()), full_((n_ == 32) ? 0xffffffffu : ((1u << n_) - 1)),
        rank_(colour_ranks(g)), meter_(budget) {
    // in_cycle holds a reference to cycles_.back() across nested pushes.
    cycles_.reserve(n_ / 3 + 1);
  }

  bool run() { return between_cycles(0); }

  const std::vector<std::vector<Vertex>>& cycles() const { return cycles_; }
  std::uint64_t nodes() const { return meter_.nodes(); }

 private:
  // No open cycle: start the next one at the smallest uncovered vertex.
  bool between_cycles(std::uint32_t mask) {
    meter_.tick();
    if (mask == full_) return true;
    if (dead_closed_.count(mask)) return false;
    Vertex start = 0;
    while (mask & (1u << start)) ++start;
    const std::uint32_t rest = full_ & ~mask;
    if (__builtin_popcount(rest) >= 3) {
      cycles_.push_back({start});
      for (Vertex second = start + 1; second < n_; ++second) {
        if (mask & (1u << second)) continue;
        cycles_.back().push_back(second);
        if (in_cycle(mask | (1u << start) | (1u << second))) return true;
        cycles_.back().pop_back();
      }
      cycles_.pop_back();
    }
    dead_closed_.insert(mask);
    return false;
  }

  bool in_cycle(std::uint32_t mask) {
    meter_.tick();
    auto& cyc = cycles_.back();
    const Vertex start = cyc[0];
    const Vertex second = cyc[1];
    const Vertex last = cyc.back();
    const Vertex prev = cyc[cyc.size() - 2];
    const std::uint64_t key = state_key(mask, last, rank_[last * n_ + prev]) |
                              (static_cast<std::uint64_t>(second) << 48) |
                              (static_cast<std::uint64_t>(start) << 56);
    if (dead_open_.count(key)) return false;
    const Colour in = g_(prev, last);

    // Close here.
    if (cyc.size() >= 3 && last > second) {
      const Colour wrap = g_(last, start);
      if (wrap != in && wrap != g_(start, second) && between_cycles(mask)) return true;
    }
    // Only vertices above the start may join (canonical form).
    for (Vertex v = start + 1; v < n_; ++v) {
      if (mask & (1u << v)) continue;
      if (g_(last, v) == in) continue;
      cyc.push_back(v);
      if (in_cycle(mask | (1u << v))) return true;
      cyc.pop_back();
    }
    dead_open_.insert(key);
    return false;
  }

  const ColouredComplete& g_;
  std::size_t n_;
  std::uint32_t full_;
  std::vector<std::uint8_t> rank_;
  Meter meter_;
  std::vector<std::vector<Vertex>> cycles_;
  std::unordered_set<std::uint64_t> dead_open_;
  std::unordered_set<std::uint32_t> dead_closed_;
};

}  // namespace

SearchResult exact_pc_two_factor(const ColouredComplete& g, SearchBudget budget) {
  require_range(g, 3, "exact_pc_two_factor");
  TwoFactorSearch search(g, budget);
  SearchResult result;
  try {
    if (search.run()) {
      result.status = SearchStatus::Found;
      result.certificate.kind = CertificateKind::TwoFactor;
      result.certificate.cycles = search.cycles();
      result.certificate = verify_certificate(g, result.certificate);
    }
  } catch (const BudgetExceeded&) {
    result.status = SearchStatus::BudgetExhausted;
  }
  result.nodes = search.nodes();
  return result;
}

// ---- longest structures -----------------------------------------------------

LongestResult longest_pc_cycle(const ColouredComplete& g, SearchBudget budget) {
  if (g.order() < 3) throw std::domain_error("longest_pc_cycle needs n >= 3");
  const std::size_t n = g.order();
  Meter meter(budget);
  LongestResult best;
  std::vector<Vertex> path;
  std::vector<char> used(n, 0);

  std::function<void(Vertex)> dfs = [&](Vertex start) {
    meter.tick();
    const Vertex last = path.back();
    const Colour in = g(path[path.size() - 2], last);
    if (path.size() >= 3 && path.size() > best.value) {
      const Colour wrap = g(last, start);
      if (wrap != in && wrap != g(start, path[1])) {
        best.value = path.size();
        best.witness = path;
      }
    }
    std::size_t available = 0;
    for (Vertex v = start + 1; v < n; ++v) available += !used[v];
    if (path.size() + available <= best.value) return;
    for (Vertex v = start + 1; v < n; ++v) {
      if (used[v] || g(last, v) == in) continue;
      used[v] = 1;
      path.push_back(v);
      dfs(start);
      path.pop_back();
      used[v] = 0;
    }
  };

  try {
    for (Vertex start = 0; start + 2 < n; ++start) {
      if (n - start <= best.value) break;
      for (Vertex second = start + 1; second < n; ++second) {
        path = {start, second};
        used.assign(n, 0);
        used[start] = used[second] = 1;
        dfs(start);
      }
    }
  } catch (const BudgetExceeded&) {
    best.exhaustive = false;
  }
  best.nodes = meter.nodes();
  return best;
}

LongestResult longest_pc_path(const ColouredComplete& g, SearchBudget budget) {
  if (g.order() < 2) throw std::domain_error("longest_pc_path needs n >= 2");
  const std::size_t n = g.order();
  Meter meter(budget);
  LongestResult best;
  best.value = 2;
  best.witness = {0, 1};
  std::vector<Vertex> path;
  std::vector<char> used(n, 0);

  std::function<void()> dfs = [&]() {
    meter.tick();
    if (path.size() > best.value) {
      best.value = path.size();
      best.witness = path;
    }
    if (path.size() + (n - path.size()) <= best.value) return;
    const Vertex last = path.back();
    const Colour in = g(path[path.size() - 2], last);
    for (Vertex v = 0; v < n; ++v) {
      if (used[v] || g(last, v) == in) continue;
      used[v] = 1;
      path.push_back(v);
      dfs();
      path.pop_back();
      used[v] = 0;
    }
  };

  try {
    for (Vertex a = 0; a < n && best.value < n; ++a) {
      for (Vertex b = 0; b < n && best.value < n; ++b) {
        if (a == b) continue;
        path = {a, b};
        used.assign(n, 0);
        used[a] = used[b] = 1;
        dfs();
      }
    }
  } catch (const BudgetExceeded&) {
    best.exhaustive = false;
  }
  best.nodes = meter.nodes();
  return best;
}

// ---- cycle enumeration ------------------------------------------------------

std::vector<Vertex> canonical_cycle(std::vector<Vertex> cycle) {
  if (cycle.size() < 3) return cycle;
  auto it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), it, cycle.end());
  if (cycle[1] > cycle.back()) std::reverse(cycle.begin() + 1, cycle.end());
  return cycle;
}

namespace {

using Lookup = std::function<std::optional<Colour>(Vertex, Vertex)>;

std::vector<std::vector<Vertex>> enumerate_with(std::size_t n, const Lookup& colour) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> path;
  std::vector<char> used(n, 0);

  std::function<void(Vertex)> dfs = [&](Vertex start) {
    const Vertex last = path.back();
    const Colour in = *colour(path[path.size() - 2], last);
    if (path.size() >= 3 && path[1] < last) {
      auto wrap = colour(last, start);
      if (wrap && *wrap != in && *wrap != *colour(start, path[1])) out.push_back(path);
    }
    for (Vertex v = start + 1; v < n; ++v) {
      if (used[v]) continue;
      auto c = colour(last, v);
      if (!c || *c == in) continue;
      used[v] = 1;
      path.push_back(v);
      dfs(start);
      path.pop_back();
      used[v] = 0;
    }
  };

  for (Vertex start = 0; start < n; ++start) {
    for (Vertex second = start + 1; second < n; ++second) {
      if (!colour(start, second)) continue;
      path = {start, second};
      used.assign(n, 0);
      used[start] = used[second] = 1;
      dfs(start);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::vector<Vertex>> enumerate_pc_cycles(const PartialColouring& g) {
  return enumerate_with(g.order(), [&g](Vertex u, Vertex v) { return g.find(u, v); });
}

std::vector<std::vector<Vertex>> enumerate_pc_cycles(const ColouredComplete& g) {
  return enumerate_with(g.order(),
                        [&g](Vertex u, Vertex v) { return std::optional<Colour>(g(u, v)); });
}

}  // namespace pchc
