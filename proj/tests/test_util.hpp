#pragma once

#include <functional>
#include <vector>

#include "pchc/ec_graph.hpp"

namespace pchc::test {

inline ColouredComplete from_rule(std::size_t n, std::size_t k,
                                  const std::function<Colour(Vertex, Vertex)>& rule) {
  std::vector<Colour> t;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) t.push_back(rule(u, v));
  }
  return ColouredComplete(n, k, std::move(t));
}

// c(u, v) = (u + v) mod m
inline ColouredComplete modular(std::size_t n, std::size_t m) {
  return from_rule(n, m, [m](Vertex u, Vertex v) { return static_cast<Colour>((u + v) % m); });
}

// c(u, v) = (uv + u + v) mod m
inline ColouredComplete product(std::size_t n, std::size_t m) {
  return from_rule(n, m,
                   [m](Vertex u, Vertex v) { return static_cast<Colour>((u * v + u + v) % m); });
}

}  // namespace pchc::test
