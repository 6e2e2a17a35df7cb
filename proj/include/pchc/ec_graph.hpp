#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pchc {

using Vertex = std::uint32_t;
using Colour = std::uint32_t;

/// Edge-coloured complete graph on vertices 0..n-1 with colours 0..k-1.
///
/// Colours live in a flat table with one entry per unordered pair, so the
/// graph is symmetric by construction. Instances are immutable once built.
class ColouredComplete {
 public:
  ColouredComplete() = default;

  /// `pair_colours` lists c(u,v) for u < v in row-major order
  /// (u = 0 first, then v = u+1..n-1). Throws std::invalid_argument when the
  /// table has the wrong size or a colour is >= `colour_count`.
  ColouredComplete(std::size_t n, std::size_t colour_count, std::vector<Colour> pair_colours);

  /// Every edge gets `colour`.
  static ColouredComplete monochromatic(std::size_t n, Colour colour = 0);
  /// Every edge gets its own colour, numbered in canonical pair order.
  static ColouredComplete rainbow(std::size_t n);

  std::size_t order() const noexcept { return n_; }
  std::size_t colour_count() const noexcept { return k_; }

  /// Checked lookup. Throws std::domain_error for u == v or ids out of range.
  Colour colour(Vertex u, Vertex v) const;

  /// Unchecked lookup for hot loops; requires u != v, both < n.
  Colour operator()(Vertex u, Vertex v) const noexcept { return table_[pair_index(u, v)]; }

  const std::vector<Colour>& pair_colours() const noexcept { return table_; }

  /// Induced subgraph on `keep` (in the given order). Vertex i of the result
  /// is keep[i]. Colour ids are preserved.
  ColouredComplete induced(std::span<const Vertex> keep) const;

  bool operator==(const ColouredComplete&) const = default;

 private:
  std::size_t pair_index(Vertex u, Vertex v) const noexcept {
    if (u > v) std::swap(u, v);
    return static_cast<std::size_t>(u) * (2 * n_ - u - 1) / 2 + (v - u - 1);
  }

  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<Colour> table_;
};

/// Edge-coloured graph that need not be complete. Absent pairs carry no
/// colour. Used for colourings derived from oriented graphs.
class PartialColouring {
 public:
  PartialColouring() = default;
  explicit PartialColouring(std::size_t n);

  std::size_t order() const noexcept { return n_; }
  /// Largest colour id in use plus one.
  std::size_t colour_count() const noexcept { return k_; }

  void set(Vertex u, Vertex v, Colour c);
  bool has_edge(Vertex u, Vertex v) const;
  /// Throws std::domain_error when the pair is absent.
  Colour colour(Vertex u, Vertex v) const;
  std::optional<Colour> find(Vertex u, Vertex v) const;

  bool is_complete() const;
  /// Throws std::domain_error unless every pair is coloured.
  ColouredComplete to_complete() const;

 private:
  std::size_t index(Vertex u, Vertex v) const;

  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<std::optional<Colour>> table_;
};

/// Ordered vertex sequence; v1..vl and vl..v1 are different paths.
struct DirectedPath {
  std::vector<Vertex> vertices;
  std::size_t order() const noexcept { return vertices.size(); }
  bool operator==(const DirectedPath&) const = default;
};

/// Cyclic vertex sequence of length >= 3; vertices[i+1] is the successor
/// of vertices[i], wrapping around.
struct DirectedCycle {
  std::vector<Vertex> vertices;
  std::size_t order() const noexcept { return vertices.size(); }
  bool operator==(const DirectedCycle&) const = default;
};

DirectedPath reversed(DirectedPath p);
DirectedCycle reversed(DirectedCycle c);

// ---- degree statistics ----------------------------------------------------

/// Largest number of same-coloured edges at a single vertex. Requires n >= 2.
std::size_t delta_mon(const ColouredComplete& g);
std::size_t delta_mon(const PartialColouring& g);

/// Number of distinct colours at v.
std::size_t colour_degree(const ColouredComplete& g, Vertex v);
std::size_t colour_degree(const PartialColouring& g, Vertex v);

/// Largest same-colour multiplicity at v.
std::size_t mono_degree(const ColouredComplete& g, Vertex v);

/// Minimum colour degree over all vertices. Requires n >= 2.
std::size_t min_colour_degree(const ColouredComplete& g);
std::size_t min_colour_degree(const PartialColouring& g);

// ---- properness predicates --------------------------------------------------

/// True iff consecutive edge colours differ. Paths of order <= 2 are proper.
/// Returns false (never throws) if the path repeats a vertex or leaves the graph.
bool is_properly_coloured_path(const ColouredComplete& g, std::span<const Vertex> path);
inline bool is_properly_coloured_path(const ColouredComplete& g, const DirectedPath& p) {
  return is_properly_coloured_path(g, std::span<const Vertex>(p.vertices));
}

/// True iff the two cycle edges at every vertex differ in colour, wrap-around
/// included. Cycles shorter than 3 or with repeated vertices are rejected.
bool is_properly_coloured_cycle(const ColouredComplete& g, std::span<const Vertex> cycle);
inline bool is_properly_coloured_cycle(const ColouredComplete& g, const DirectedCycle& c) {
  return is_properly_coloured_cycle(g, std::span<const Vertex>(c.vertices));
}

// ---- certificates -----------------------------------------------------------

enum class CertificateKind { HamCycle, HamPath, TwoFactor, PathCycleSystem };

struct Verdict {
  bool valid = false;
  std::string reason;  // empty when valid
  bool operator==(const Verdict&) const = default;
};

/// A claimed structure plus the verdict of the last verification.
struct Certificate {
  CertificateKind kind = CertificateKind::HamCycle;
  std::vector<std::vector<Vertex>> cycles;
  std::vector<Vertex> path;
  Verdict verdict;
  bool operator==(const Certificate&) const = default;
};

const char* to_string(CertificateKind kind);
std::optional<CertificateKind> parse_certificate_kind(const std::string& name);

/// Recomputes the verdict. Never throws on malformed structures.
///  - HamCycle: one PC cycle through all n vertices, no path.
///  - HamPath: one PC path through all n vertices, no cycles.
///  - TwoFactor: vertex-disjoint PC cycles covering every vertex, no path.
///  - PathCycleSystem: PC 1-path-cycle (path order >= 2 if present).
Certificate verify_certificate(const ColouredComplete& g, Certificate cert);

}  // namespace pchc
