#include "pchc/ec_graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace pchc {

namespace {

std::size_t pair_count(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

template <typename Graph>
void require_order_two(const Graph& g) {
  if (g.order() < 2) throw std::domain_error("degree statistics need n >= 2");
}

}  // namespace

ColouredComplete::ColouredComplete(std::size_t n, std::size_t colour_count,
                                   std::vector<Colour> pair_colours)
    : n_(n), k_(colour_count), table_(std::move(pair_colours)) {
  if (n == 0) throw std::invalid_argument("coloured complete graph needs n >= 1");
  if (table_.size() != pair_count(n)) {
    throw std::invalid_argument("colour table has " + std::to_string(table_.size()) +
                                " entries, expected " + std::to_string(pair_count(n)));
  }
  for (Colour c : table_) {
    if (c >= k_) {
      throw std::invalid_argument("colour " + std::to_string(c) + " not below colour count " +
                                  std::to_string(k_));
    }
  }
}

ColouredComplete ColouredComplete::monochromatic(std::size_t n, Colour colour) {
  return ColouredComplete(n, static_cast<std::size_t>(colour) + 1,
                          std::vector<Colour>(pair_count(n), colour));
}

ColouredComplete ColouredComplete::rainbow(std::size_t n) {
  std::vector<Colour> table(pair_count(n));
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = static_cast<Colour>(i);
  const std::size_t k = std::max<std::size_t>(table.size(), 1);
  return ColouredComplete(n, k, std::move(table));
}

Colour ColouredComplete::colour(Vertex u, Vertex v) const {
  if (u == v) throw std::domain_error("colour_of: loop at vertex " + std::to_string(u));
  if (u >= n_ || v >= n_) {
    throw std::domain_error("colour_of: vertex out of range (n = " + std::to_string(n_) + ")");
  }
  return (*this)(u, v);
}

ColouredComplete ColouredComplete::induced(std::span<const Vertex> keep) const {
  const std::size_t m = keep.size();
  std::vector<Colour> table;
  table.reserve(pair_count(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) table.push_back(colour(keep[i], keep[j]));
  }
  return ColouredComplete(m, k_, std::move(table));
}

PartialColouring::PartialColouring(std::size_t n) : n_(n), table_(pair_count(n)) {}

std::size_t PartialColouring::index(Vertex u, Vertex v) const {
  if (u == v || u >= n_ || v >= n_) throw std::domain_error("invalid vertex pair");
  if (u > v) std::swap(u, v);
  return static_cast<std::size_t>(u) * (2 * n_ - u - 1) / 2 + (v - u - 1);
}

void PartialColouring::set(Vertex u, Vertex v, Colour c) {
  table_[index(u, v)] = c;
  k_ = std::max<std::size_t>(k_, static_cast<std::size_t>(c) + 1);
}

bool PartialColouring::has_edge(Vertex u, Vertex v) const {
  return table_[index(u, v)].has_value();
}

Colour PartialColouring::colour(Vertex u, Vertex v) const {
  const auto& entry = table_[index(u, v)];
  if (!entry) throw std::domain_error("pair is not an edge");
  return *entry;
}

std::optional<Colour> PartialColouring::find(Vertex u, Vertex v) const {
  return table_[index(u, v)];
}

bool PartialColouring::is_complete() const {
  return std::all_of(table_.begin(), table_.end(), [](const auto& e) { return e.has_value(); });
}

ColouredComplete PartialColouring::to_complete() const {
  if (!is_complete()) throw std::domain_error("colouring is not complete");
  std::vector<Colour> table;
  table.reserve(table_.size());
  for (const auto& e : table_) table.push_back(*e);
  return ColouredComplete(n_, std::max<std::size_t>(k_, 1), std::move(table));
}

DirectedPath reversed(DirectedPath p) {
  std::reverse(p.vertices.begin(), p.vertices.end());
  return p;
}

DirectedCycle reversed(DirectedCycle c) {
  std::reverse(c.vertices.begin(), c.vertices.end());
  return c;
}

// ---- degree statistics ------------------------------------------------------

namespace {

// Colour histogram at v over present edges.
template <typename Graph, typename Lookup>
std::unordered_map<Colour, std::size_t> histogram(const Graph& g, Vertex v, Lookup lookup) {
  std::unordered_map<Colour, std::size_t> h;
  for (Vertex u = 0; u < g.order(); ++u) {
    if (u == v) continue;
    if (auto c = lookup(u, v)) ++h[*c];
  }
  return h;
}

auto complete_lookup(const ColouredComplete& g) {
  return [&g](Vertex u, Vertex v) { return std::optional<Colour>(g(u, v)); };
}

auto partial_lookup(const PartialColouring& g) {
  return [&g](Vertex u, Vertex v) { return g.find(u, v); };
}

std::size_t max_count(const std::unordered_map<Colour, std::size_t>& h) {
  std::size_t best = 0;
  for (const auto& [c, count] : h) best = std::max(best, count);
  return best;
}

}  // namespace

std::size_t mono_degree(const ColouredComplete& g, Vertex v) {
  return max_count(histogram(g, v, complete_lookup(g)));
}

std::size_t colour_degree(const ColouredComplete& g, Vertex v) {
  return histogram(g, v, complete_lookup(g)).size();
}

std::size_t colour_degree(const PartialColouring& g, Vertex v) {
  return histogram(g, v, partial_lookup(g)).size();
}

std::size_t delta_mon(const ColouredComplete& g) {
  require_order_two(g);
  std::size_t best = 0;
  for (Vertex v = 0; v < g.order(); ++v) best = std::max(best, mono_degree(g, v));
  return best;
}

std::size_t delta_mon(const PartialColouring& g) {
  require_order_two(g);
  std::size_t best = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    best = std::max(best, max_count(histogram(g, v, partial_lookup(g))));
  }
  return best;
}

std::size_t min_colour_degree(const ColouredComplete& g) {
  require_order_two(g);
  std::size_t best = g.order();
  for (Vertex v = 0; v < g.order(); ++v) best = std::min(best, colour_degree(g, v));
  return best;
}

std::size_t min_colour_degree(const PartialColouring& g) {
  require_order_two(g);
  std::size_t best = g.order();
  for (Vertex v = 0; v < g.order(); ++v) best = std::min(best, colour_degree(g, v));
  return best;
}

// ---- properness -------------------------------------------------------------

namespace {

bool distinct_in_range(const ColouredComplete& g, std::span<const Vertex> vs) {
  std::vector<char> seen(g.order(), 0);
  for (Vertex v : vs) {
    if (v >= g.order() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

}  // namespace

bool is_properly_coloured_path(const ColouredComplete& g, std::span<const Vertex> path) {
  if (path.empty() || !distinct_in_range(g, path)) return false;
  for (std::size_t i = 2; i < path.size(); ++i) {
    if (g(path[i - 2], path[i - 1]) == g(path[i - 1], path[i])) return false;
  }
  return true;
}

bool is_properly_coloured_cycle(const ColouredComplete& g, std::span<const Vertex> cycle) {
  const std::size_t m = cycle.size();
  if (m < 3 || !distinct_in_range(g, cycle)) return false;
  for (std::size_t i = 0; i < m; ++i) {
    const Vertex prev = cycle[(i + m - 1) % m];
    const Vertex next = cycle[(i + 1) % m];
    if (g(prev, cycle[i]) == g(cycle[i], next)) return false;
  }
  return true;
}

// ---- certificates -----------------------------------------------------------

const char* to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::HamCycle: return "HamCycle";
    case CertificateKind::HamPath: return "HamPath";
    case CertificateKind::TwoFactor: return "TwoFactor";
    case CertificateKind::PathCycleSystem: return "PathCycleSystem";
  }
  return "?";
}

std::optional<CertificateKind> parse_certificate_kind(const std::string& name) {
  for (auto k : {CertificateKind::HamCycle, CertificateKind::HamPath, CertificateKind::TwoFactor,
                 CertificateKind::PathCycleSystem}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

namespace {

Verdict invalid(std::string reason) { return Verdict{false, std::move(reason)}; }

// Vertex-disjointness and range for all pieces; returns the covered count.
std::optional<std::string> check_pieces(const ColouredComplete& g, const Certificate& cert,
                                        std::size_t& covered) {
  std::vector<char> seen(g.order(), 0);
  covered = 0;
  auto mark = [&](const std::vector<Vertex>& piece) -> std::optional<std::string> {
    for (Vertex v : piece) {
      if (v >= g.order()) return "vertex " + std::to_string(v) + " out of range";
      if (seen[v]) return "vertex " + std::to_string(v) + " used twice";
      seen[v] = 1;
      ++covered;
    }
    return std::nullopt;
  };
  if (auto err = mark(cert.path)) return err;
  for (const auto& c : cert.cycles) {
    if (auto err = mark(c)) return err;
  }
  return std::nullopt;
}

Verdict check_cycle(const ColouredComplete& g, const std::vector<Vertex>& cyc, std::size_t idx) {
  if (cyc.size() < 3) return invalid("cycle " + std::to_string(idx) + " has fewer than 3 vertices");
  if (!is_properly_coloured_cycle(g, cyc)) {
    return invalid("cycle " + std::to_string(idx) + " has adjacent edges of the same colour");
  }
  return {true, {}};
}

}  // namespace

Certificate verify_certificate(const ColouredComplete& g, Certificate cert) {
  std::size_t covered = 0;
  if (auto err = check_pieces(g, cert, covered)) {
    cert.verdict = invalid(*err);
    return cert;
  }
  const std::size_t n = g.order();
  auto finish = [&](Verdict v) {
    cert.verdict = std::move(v);
    return cert;
  };

  switch (cert.kind) {
    case CertificateKind::HamCycle: {
      if (!cert.path.empty()) return finish(invalid("Hamiltonian cycle must not carry a path"));
      if (cert.cycles.size() != 1) return finish(invalid("expected exactly one cycle"));
      if (covered != n) return finish(invalid("cycle does not span all vertices"));
      return finish(check_cycle(g, cert.cycles[0], 0));
    }
    case CertificateKind::HamPath: {
      if (!cert.cycles.empty()) return finish(invalid("Hamiltonian path must not carry cycles"));
      if (covered != n) return finish(invalid("path does not span all vertices"));
      if (!is_properly_coloured_path(g, cert.path)) {
        return finish(invalid("path has adjacent edges of the same colour"));
      }
      return finish({true, {}});
    }
    case CertificateKind::TwoFactor: {
      if (!cert.path.empty()) return finish(invalid("2-factor must not carry a path"));
      if (cert.cycles.empty()) return finish(invalid("2-factor has no cycles"));
      if (covered != n) return finish(invalid("cycles do not cover all vertices"));
      for (std::size_t i = 0; i < cert.cycles.size(); ++i) {
        auto v = check_cycle(g, cert.cycles[i], i);
        if (!v.valid) return finish(v);
      }
      return finish({true, {}});
    }
    case CertificateKind::PathCycleSystem: {
      if (cert.path.size() == 1) return finish(invalid("path of order 1"));
      if (!cert.path.empty() && !is_properly_coloured_path(g, cert.path)) {
        return finish(invalid("path has adjacent edges of the same colour"));
      }
      for (std::size_t i = 0; i < cert.cycles.size(); ++i) {
        auto v = check_cycle(g, cert.cycles[i], i);
        if (!v.valid) return finish(v);
      }
      return finish({true, {}});
    }
  }
  return finish(invalid("unknown certificate kind"));
}

}  // namespace pchc
