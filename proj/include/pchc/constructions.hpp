#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pchc/ec_graph.hpp"

namespace pchc {

/// Raised when a randomized generator exhausts its retry budget or the
/// requested parameters admit no colouring. Distinct from std::domain_error,
/// which signals parameters outside an operation's domain.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Antisymmetric digraph: at most one of (u,v), (v,u) is an arc.
class OrientedGraph {
 public:
  explicit OrientedGraph(std::size_t n);

  std::size_t order() const noexcept { return n_; }
  /// Throws std::invalid_argument on loops, repeats or the reverse arc.
  void add_arc(Vertex from, Vertex to);
  bool has_arc(Vertex from, Vertex to) const;

  std::size_t in_degree(Vertex v) const;
  std::size_t out_degree(Vertex v) const;
  std::size_t max_in_degree() const;
  bool is_tournament() const;
  std::vector<std::pair<Vertex, Vertex>> arcs() const;

 private:
  std::size_t n_;
  std::vector<char> adj_;  // adj_[u*n+v] = 1 iff u -> v
};

/// 2-colouring of K_{4k+1}: colour 0 on the circulant joining each vertex to
/// its k nearest neighbours on either side, colour 1 elsewhere. Both classes
/// are 2k-regular. Throws std::domain_error for k == 0.
ColouredComplete bollobas_erdos(std::size_t k);

/// Colours arc u -> v with colour v. Pairs without an arc stay uncoloured.
PartialColouring from_oriented(const OrientedGraph& og);

enum class CompletionPolicy {
  FreshRainbow,  // each missing pair gets its own new colour
  SingleExtra,   // all missing pairs share one new colour
};

/// Colours the pairs of `partial` that are still missing.
ColouredComplete complete_with(const PartialColouring& partial, CompletionPolicy policy);

/// Regular circulant tournament on 2m-1 vertices (i -> i+j, j = 1..m-1) plus
/// a source vertex 2m-1 beating everyone. Throws std::domain_error if m < 2.
OrientedGraph tournament_t2m(std::size_t m);

/// Vertices 0..l-1 form X, the rest Y. c(x_i, y) = i+1, c(y, y') = 1 and X is
/// rainbow on colours l+1, l+2, ... Throws std::domain_error unless 1 <= l <= n/2.
ColouredComplete layered_xy(std::size_t n, std::size_t l);

/// Smallest palette that can hold the per-vertex degree n-1 under the bound,
/// plus one colour of slack.
std::size_t default_palette(std::size_t n, std::size_t dmax);

struct RandomColouringStats {
  std::size_t restarts = 0;
};

/// Random colouring with delta_mon <= dmax. Edges are visited in random order
/// and each picks uniformly among palette colours still below dmax at both
/// ends; a dead end restarts the whole colouring (at most 100 restarts).
/// Deterministic in `seed`. Throws std::domain_error for n < 3 or dmax == 0
/// and GenerationError when infeasible or out of restarts.
ColouredComplete random_bounded_mono(std::size_t n, std::size_t dmax, std::uint64_t seed,
                                     std::optional<std::size_t> palette = std::nullopt,
                                     RandomColouringStats* stats = nullptr);

}  // namespace pchc
