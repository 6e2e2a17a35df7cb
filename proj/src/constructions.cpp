#include "pchc/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace pchc {

OrientedGraph::OrientedGraph(std::size_t n) : n_(n), adj_(n * n, 0) {}

void OrientedGraph::add_arc(Vertex from, Vertex to) {
  if (from >= n_ || to >= n_) throw std::invalid_argument("arc endpoint out of range");
  if (from == to) throw std::invalid_argument("loops are not allowed");
  if (adj_[from * n_ + to]) throw std::invalid_argument("arc already present");
  if (adj_[to * n_ + from]) throw std::invalid_argument("reverse arc present");
  adj_[from * n_ + to] = 1;
}

bool OrientedGraph::has_arc(Vertex from, Vertex to) const {
  if (from >= n_ || to >= n_) return false;
  return adj_[from * n_ + to] != 0;
}

std::size_t OrientedGraph::in_degree(Vertex v) const {
  std::size_t d = 0;
  for (Vertex u = 0; u < n_; ++u) d += adj_[u * n_ + v];
  return d;
}

std::size_t OrientedGraph::out_degree(Vertex v) const {
  std::size_t d = 0;
  for (Vertex u = 0; u < n_; ++u) d += adj_[v * n_ + u];
  return d;
}

std::size_t OrientedGraph::max_in_degree() const {
  std::size_t best = 0;
  for (Vertex v = 0; v < n_; ++v) best = std::max(best, in_degree(v));
  return best;
}

bool OrientedGraph::is_tournament() const {
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v = u + 1; v < n_; ++v) {
      if (!has_arc(u, v) && !has_arc(v, u)) return false;
    }
  }
  return true;
}

std::vector<std::pair<Vertex, Vertex>> OrientedGraph::arcs() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v = 0; v < n_; ++v) {
      if (adj_[u * n_ + v]) out.emplace_back(u, v);
    }
  }
  return out;
}

ColouredComplete bollobas_erdos(std::size_t k) {
  if (k == 0) throw std::domain_error("bollobas_erdos needs k >= 1");
  const std::size_t n = 4 * k + 1;
  std::vector<Colour> table;
  table.reserve(n * (n - 1) / 2);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const std::size_t gap = std::min(v - u, n - (v - u));
      table.push_back(gap <= k ? 0 : 1);
    }
  }
  return ColouredComplete(n, 2, std::move(table));
}

PartialColouring from_oriented(const OrientedGraph& og) {
  PartialColouring out(og.order());
  for (auto [from, to] : og.arcs()) out.set(from, to, to);
  return out;
}

ColouredComplete complete_with(const PartialColouring& partial, CompletionPolicy policy) {
  const std::size_t n = partial.order();
  // Fresh colours start above every vertex-derived colour so they never clash.
  Colour next = static_cast<Colour>(std::max(partial.colour_count(), n));
  std::vector<Colour> table;
  table.reserve(n * (n - 1) / 2);
  bool used_extra = false;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (auto c = partial.find(u, v)) {
        table.push_back(*c);
      } else if (policy == CompletionPolicy::FreshRainbow) {
        table.push_back(next++);
      } else {
        table.push_back(next);
        used_extra = true;
      }
    }
  }
  const std::size_t k = static_cast<std::size_t>(next) + (used_extra ? 1 : 0);
  return ColouredComplete(n, std::max<std::size_t>(k, 1), std::move(table));
}

OrientedGraph tournament_t2m(std::size_t m) {
  if (m < 2) throw std::domain_error("tournament_t2m needs m >= 2");
  const std::size_t core = 2 * m - 1;
  OrientedGraph t(2 * m);
  for (std::size_t i = 0; i < core; ++i) {
    for (std::size_t j = 1; j < m; ++j) {
      t.add_arc(static_cast<Vertex>(i), static_cast<Vertex>((i + j) % core));
    }
  }
  const auto source = static_cast<Vertex>(core);
  for (Vertex v = 0; v < core; ++v) t.add_arc(source, v);
  return t;
}

ColouredComplete layered_xy(std::size_t n, std::size_t l) {
  if (l < 1 || 2 * l > n) {
    throw std::domain_error("layered_xy needs 1 <= l <= n/2 (n = " + std::to_string(n) +
                            ", l = " + std::to_string(l) + ")");
  }
  std::vector<Colour> table;
  table.reserve(n * (n - 1) / 2);
  Colour fresh = static_cast<Colour>(l + 1);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (v < l) {
        table.push_back(fresh++);                   // inside X: rainbow
      } else if (u < l) {
        table.push_back(static_cast<Colour>(u + 1));  // X-Y: index of the X end
      } else {
        table.push_back(1);                          // inside Y
      }
    }
  }
  return ColouredComplete(n, fresh, std::move(table));
}

std::size_t default_palette(std::size_t n, std::size_t dmax) {
  if (dmax == 0) throw std::domain_error("dmax must be positive");
  return (n - 1 + dmax - 1) / dmax + 1;
}

ColouredComplete random_bounded_mono(std::size_t n, std::size_t dmax, std::uint64_t seed,
                                     std::optional<std::size_t> palette,
                                     RandomColouringStats* stats) {
  constexpr std::size_t kRestartBudget = 100;
  if (n < 3) throw std::domain_error("random_bounded_mono needs n >= 3");
  if (dmax == 0) throw std::domain_error("random_bounded_mono needs dmax >= 1");
  const std::size_t k = palette.value_or(default_palette(n, dmax));
  if (k == 0 || k * dmax < n - 1) {
    throw GenerationError("infeasible: " + std::to_string(k) + " colours x dmax " +
                          std::to_string(dmax) + " < n-1 = " + std::to_string(n - 1));
  }

  std::mt19937_64 rng(seed);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }

  std::vector<std::size_t> load(n * k);
  std::vector<Colour> choices;
  for (std::size_t attempt = 0; attempt <= kRestartBudget; ++attempt) {
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::fill(load.begin(), load.end(), 0);
    PartialColouring partial(n);
    bool dead_end = false;
    for (auto [u, v] : pairs) {
      choices.clear();
      for (Colour c = 0; c < k; ++c) {
        if (load[u * k + c] < dmax && load[v * k + c] < dmax) choices.push_back(c);
      }
      if (choices.empty()) {
        dead_end = true;
        break;
      }
      const Colour c = choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)];
      ++load[u * k + c];
      ++load[v * k + c];
      partial.set(u, v, c);
    }
    if (!dead_end) {
      if (stats) stats->restarts = attempt;
      auto table = partial.to_complete().pair_colours();
      return ColouredComplete(n, k, std::move(table));
    }
  }
  throw GenerationError("random_bounded_mono: retry budget of " + std::to_string(kRestartBudget) +
                        " restarts exhausted");
}

}  // namespace pchc
