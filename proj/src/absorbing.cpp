#include "pchc/absorbing.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace pchc {

namespace {

bool distinct(std::span<const Vertex> vs, std::size_t n) {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i] >= n) return false;
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (vs[i] == vs[j]) return false;
    }
  }
  return true;
}

void require_quad(const ColouredComplete& g, const Quad& q) {
  if (!distinct(q, g.order())) throw std::domain_error("quad needs four distinct vertices in range");
}

}  // namespace

bool is_absorbing(const ColouredComplete& g, const Quad& quad, const Path4& path) {
  std::array<Vertex, 8> all{};
  std::copy(quad.begin(), quad.end(), all.begin());
  std::copy(path.begin(), path.end(), all.begin() + 4);
  if (!distinct(all, g.order())) return false;
  const auto [x1, x2, y1, y2] = quad;
  const auto [z1, z2, z3, z4] = path;
  if (g(z1, z2) == g(z2, z3) || g(z2, z3) == g(z3, z4)) return false;
  if (g(z1, z2) == g(z2, x1) || g(z2, x1) == g(x1, x2)) return false;
  if (g(y1, y2) == g(y2, z3) || g(y2, z3) == g(z3, z4)) return false;
  return true;
}

std::uint64_t count_absorbing(const ColouredComplete& g, const Quad& quad) {
  const std::size_t n = g.order();
  if (n < 9) throw std::domain_error("count_absorbing needs n >= 9");
  require_quad(g, quad);
  const auto [x1, x2, y1, y2] = quad;
  std::vector<char> in_quad(n, 0);
  for (Vertex v : quad) in_quad[v] = 1;

  std::uint64_t total = 0;
  std::vector<char> ok_a(n), ok_b(n);
  for (Vertex z2 = 0; z2 < n; ++z2) {
    if (in_quad[z2] || g(z2, x1) == g(x1, x2)) continue;
    const Colour c_side = g(z2, x1);
    for (Vertex z3 = 0; z3 < n; ++z3) {
      if (z3 == z2 || in_quad[z3] || g(y1, y2) == g(y2, z3)) continue;
      const Colour c_mid = g(z2, z3);
      const Colour c_tail = g(y2, z3);
      std::uint64_t a = 0, b = 0, both = 0;
      for (Vertex v = 0; v < n; ++v) {
        if (in_quad[v] || v == z2 || v == z3) continue;
        const Colour cz2 = g(z2, v);
        const Colour cz3 = g(z3, v);
        const bool fa = cz2 != c_mid && cz2 != c_side;
        const bool fb = cz3 != c_mid && cz3 != c_tail;
        a += fa;
        b += fb;
        both += fa && fb;
      }
      total += a * b - both;
    }
  }
  return total;
}

std::uint64_t for_each_absorbing(const ColouredComplete& g, const Quad& quad,
                                 const std::function<bool(const Path4&)>& visit) {
  require_quad(g, quad);
  const std::size_t n = g.order();
  std::uint64_t seen = 0;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = 0; b < n; ++b) {
      for (Vertex c = 0; c < n; ++c) {
        for (Vertex d = 0; d < n; ++d) {
          const Path4 p{a, b, c, d};
          if (!is_absorbing(g, quad, p)) continue;
          ++seen;
          if (!visit(p)) return seen;
        }
      }
    }
  }
  return seen;
}

std::vector<Path4> enumerate_absorbing(const ColouredComplete& g, const Quad& quad) {
  std::vector<Path4> out;
  for_each_absorbing(g, quad, [&](const Path4& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

// ---- family sampling ----------------------------------------------------------

Coverage family_coverage(const ColouredComplete& g, const std::vector<Path4>& family,
                         const std::vector<Vertex>& pool, std::uint64_t seed,
                         const UniversalityCheck& check) {
  Coverage cov;
  const std::size_t s = pool.size();
  if (s < 4) return cov;
  const std::size_t words = std::max<std::size_t>(1, (family.size() + 63) / 64);
  // Member j is usable on the x-side of (a, b) and on the y-side of (a, b).
  std::vector<std::uint64_t> left(s * s * words, 0), right(s * s * words, 0);
  for (std::size_t j = 0; j < family.size(); ++j) {
    const auto [z1, z2, z3, z4] = family[j];
    const std::uint64_t bit = std::uint64_t{1} << (j % 64);
    for (std::size_t a = 0; a < s; ++a) {
      for (std::size_t b = 0; b < s; ++b) {
        if (a == b) continue;
        const Vertex u = pool[a], v = pool[b];
        if (g(z1, z2) != g(z2, u) && g(z2, u) != g(u, v)) left[(a * s + b) * words + j / 64] |= bit;
        if (g(u, v) != g(v, z3) && g(v, z3) != g(z3, z4)) right[(a * s + b) * words + j / 64] |= bit;
      }
    }
  }
  auto covered = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    const std::uint64_t* l = &left[(a * s + b) * words];
    const std::uint64_t* r = &right[(c * s + d) * words];
    for (std::size_t w = 0; w < words; ++w) {
      if (l[w] & r[w]) return true;
    }
    return false;
  };
  auto record = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    ++cov.checked;
    if (covered(a, b, c, d)) {
      ++cov.covered;
    } else if (!cov.first_miss) {
      cov.first_miss = Quad{pool[a], pool[b], pool[c], pool[d]};
    }
  };

  const double quads = static_cast<double>(s) * (s - 1) * (s - 2) * (s - 3);
  if (quads <= static_cast<double>(check.exhaustive_limit)) {
    for (std::size_t a = 0; a < s; ++a) {
      for (std::size_t b = 0; b < s; ++b) {
        if (b == a) continue;
        for (std::size_t c = 0; c < s; ++c) {
          if (c == a || c == b) continue;
          for (std::size_t d = 0; d < s; ++d) {
            if (d == a || d == b || d == c) continue;
            record(a, b, c, d);
          }
        }
      }
    }
    return cov;
  }
  cov.exhaustive = false;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, s - 1);
  for (std::uint64_t t = 0; t < check.samples; ++t) {
    std::size_t q[4];
    for (int i = 0; i < 4; ++i) {
      do {
        q[i] = pick(rng);
      } while (std::find(q, q + i, q[i]) != q + i);
    }
    record(q[0], q[1], q[2], q[3]);
  }
  return cov;
}

namespace {

Path4 decode_tuple(std::uint64_t idx, std::size_t n) {
  // Mixed radix over n, n-1, n-2, n-3 choices among the remaining vertices.
  std::array<std::uint64_t, 4> digit{};
  std::uint64_t rest = idx;
  for (int i = 3; i >= 0; --i) {
    const std::uint64_t base = n - static_cast<std::uint64_t>(i);
    digit[i] = rest % base;
    rest /= base;
  }
  Path4 out{};
  std::vector<Vertex> left(n);
  for (std::size_t v = 0; v < n; ++v) left[v] = static_cast<Vertex>(v);
  for (int i = 0; i < 4; ++i) {
    out[i] = left[digit[i]];
    left.erase(left.begin() + static_cast<std::ptrdiff_t>(digit[i]));
  }
  return out;
}

std::vector<Path4> sample_once(const ColouredComplete& g, double p, std::mt19937_64& rng) {
  const std::size_t n = g.order();
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) * (n - 2) * (n - 3);
  std::vector<Path4> sampled;
  if (p >= 1.0) {
    for (std::uint64_t i = 0; i < total; ++i) sampled.push_back(decode_tuple(i, n));
  } else if (p > 0.0) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double log_q = std::log1p(-p);
    std::uint64_t i = 0;
    while (true) {
      const double u = 1.0 - unif(rng);  // (0, 1]
      const double skip = std::floor(std::log(u) / log_q);
      if (skip >= static_cast<double>(total - i)) break;
      i += static_cast<std::uint64_t>(skip);
      sampled.push_back(decode_tuple(i, n));
      if (++i >= total) break;
    }
  }
  // Independent sampling has no inherent order; a shuffle fixes one.
  std::shuffle(sampled.begin(), sampled.end(), rng);

  std::vector<char> dropped(sampled.size(), 0);
  for (std::size_t a = 0; a < sampled.size(); ++a) {
    for (std::size_t b = a + 1; b < sampled.size(); ++b) {
      const bool meet = std::any_of(sampled[a].begin(), sampled[a].end(), [&](Vertex v) {
        return std::find(sampled[b].begin(), sampled[b].end(), v) != sampled[b].end();
      });
      if (meet) dropped[b] = 1;
    }
  }
  std::vector<Path4> family;
  for (std::size_t a = 0; a < sampled.size(); ++a) {
    if (!dropped[a] && is_properly_coloured_path(g, std::span<const Vertex>(sampled[a]))) {
      family.push_back(sampled[a]);
    }
  }
  return family;
}

std::vector<Vertex> complement(std::size_t n, const std::vector<Vertex>& used) {
  std::vector<char> in(n, 0);
  for (Vertex v : used) in[v] = 1;
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v) {
    if (!in[v]) out.push_back(v);
  }
  return out;
}

std::vector<Vertex> family_vertices(const std::vector<Path4>& family) {
  std::vector<Vertex> out;
  for (const auto& p : family) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

FamilyResult sample_absorbing_family(const ColouredComplete& g, const FamilyParams& params) {
  const std::size_t n = g.order();
  if (n < 8) throw std::domain_error("sample_absorbing_family needs n >= 8");
  const double tuples = static_cast<double>(n) * (n - 1) * (n - 2) * (n - 3);
  const double p = params.probability.value_or(params.target_size / tuples);
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("sampling probability outside [0, 1]");

  FamilyResult best;
  std::mt19937_64 rng(params.seed);
  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(params.retry_budget, 1); ++attempt) {
    std::vector<Path4> family = sample_once(g, p, rng);
    Coverage cov;
    if (!family.empty()) {
      cov = family_coverage(g, family, complement(n, family_vertices(family)), rng(), params.check);
    }
    const bool ok = !family.empty() && cov.checked > 0 && cov.universal();
    if (ok || attempt == 0 || cov.fraction() > best.coverage.fraction()) {
      best.family = std::move(family);
      best.coverage = cov;
    }
    best.attempts = attempt + 1;
    if (ok) {
      best.success = true;
      return best;
    }
  }
  return best;
}

// ---- join_ends ----------------------------------------------------------------

JoinResult join_ends(const ColouredComplete& g, Vertex v1, Vertex v2, Vertex v1p, Vertex v2p,
                     const std::vector<Vertex>& avoid, std::size_t max_len,
                     std::uint64_t node_limit) {
  const std::size_t n = g.order();
  const std::array<Vertex, 4> ends{v1, v2, v1p, v2p};
  if (!distinct(ends, n)) throw std::domain_error("join_ends needs four distinct vertices");
  JoinResult result;
  if (max_len < 2) return result;

  std::vector<char> usable(n, 1);
  for (Vertex v : avoid) {
    if (v < n) usable[v] = 0;
  }
  for (Vertex v : ends) usable[v] = 0;
  const Colour c_in = g(v1, v2);
  const Colour c_out = g(v1p, v2p);

  // reach[r][pred * n + v]: some walk through usable vertices places r more
  // vertices after v (entered from pred) and then meets v1p properly.
  std::vector<std::vector<char>> reach(max_len, std::vector<char>(n * n, 0));
  for (Vertex pred = 0; pred < n; ++pred) {
    for (Vertex v = 0; v < n; ++v) {
      if (!usable[v] || pred == v) continue;
      const Colour c = g(v, v1p);
      reach[0][pred * n + v] = c != g(pred, v) && c != c_out;
    }
  }
  for (std::size_t r = 1; r < max_len; ++r) {
    for (Vertex pred = 0; pred < n; ++pred) {
      for (Vertex v = 0; v < n; ++v) {
        if (!usable[v] || pred == v) continue;
        const Colour c = g(pred, v);
        for (Vertex u = 0; u < n; ++u) {
          if (u != v && usable[u] && g(v, u) != c && reach[r - 1][v * n + u]) {
            reach[r][pred * n + v] = 1;
            break;
          }
        }
      }
    }
  }

  std::vector<Vertex> path;
  std::vector<char> used(n, 0);
  bool out_of_budget = false;
  // Places the remaining `left` vertices after path.back().
  std::function<bool(Vertex, Vertex, std::size_t)> dfs = [&](Vertex pred, Vertex v,
                                                             std::size_t left) -> bool {
    if (left == 0) return true;
    const Colour c = g(pred, v);
    for (Vertex u = 0; u < n; ++u) {
      if (!usable[u] || used[u] || g(v, u) == c || !reach[left - 1][v * n + u]) continue;
      if (++result.nodes > node_limit) {
        out_of_budget = true;
        return false;
      }
      used[u] = 1;
      path.push_back(u);
      if (dfs(v, u, left - 1)) return true;
      path.pop_back();
      used[u] = 0;
      if (out_of_budget) return false;
    }
    return false;
  };

  for (std::size_t order = 2; order <= max_len && !out_of_budget; ++order) {
    for (Vertex u = 0; u < n; ++u) {
      if (!usable[u] || g(v2, u) == c_in || !reach[order - 1][v2 * n + u]) continue;
      ++result.nodes;
      path.assign(1, u);
      std::fill(used.begin(), used.end(), 0);
      used[u] = 1;
      if (dfs(v2, u, order - 1)) {
        std::vector<Vertex> whole{v1, v2};
        whole.insert(whole.end(), path.begin(), path.end());
        whole.push_back(v1p);
        whole.push_back(v2p);
        if (!is_properly_coloured_path(g, whole)) {
          throw std::logic_error("join_ends produced an improper connection");
        }
        result.path = path;
        return result;
      }
      if (out_of_budget) break;
    }
  }
  return result;
}

// ---- absorbing cycle ----------------------------------------------------------

const char* to_string(CycleStage s) {
  switch (s) {
    case CycleStage::Family: return "family";
    case CycleStage::Join: return "join";
    case CycleStage::Verify: return "verify";
  }
  return "?";
}

CycleResult build_absorbing_cycle(const ColouredComplete& g, const CycleParams& params) {
  const std::size_t n = g.order();
  if (n < 8) throw std::domain_error("build_absorbing_cycle needs n >= 8");
  const std::size_t max_order = params.max_order ? params.max_order : n - 4;
  CycleResult result;

  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(params.retry_budget, 1); ++attempt) {
    result.attempts = attempt + 1;
    FamilyParams fp = params.family;
    fp.seed = params.family.seed + 0x9e3779b97f4a7c15ULL * attempt;
    FamilyResult fam = sample_absorbing_family(g, fp);
    if (!fam.success) {
      result.failed_stage = CycleStage::Family;
      result.message = "no universal family (best coverage " +
                       std::to_string(fam.coverage.fraction()) + ")";
      if (fam.family.empty()) break;  // nothing PC to sample from
      continue;
    }

    const auto& family = fam.family;
    std::vector<Vertex> used = family_vertices(family);
    std::vector<std::vector<Vertex>> connectors;
    bool joined = true;
    for (std::size_t j = 0; j < family.size(); ++j) {
      const Path4& a = family[j];
      const Path4& b = family[(j + 1) % family.size()];
      JoinResult q = join_ends(g, a[2], a[3], b[0], b[1], used, params.max_len);
      if (!q.path) {
        joined = false;
        result.failed_stage = CycleStage::Join;
        result.message = "could not join member " + std::to_string(j) + " to the next";
        break;
      }
      used.insert(used.end(), q.path->begin(), q.path->end());
      connectors.push_back(std::move(*q.path));
    }
    if (!joined) continue;

    AbsorbingCycle ac;
    for (std::size_t j = 0; j < family.size(); ++j) {
      ac.cycle.vertices.insert(ac.cycle.vertices.end(), family[j].begin(), family[j].end());
      ac.cycle.vertices.insert(ac.cycle.vertices.end(), connectors[j].begin(), connectors[j].end());
    }
    if (ac.cycle.vertices.size() > max_order) {
      result.failed_stage = CycleStage::Verify;
      result.message = "cycle order " + std::to_string(ac.cycle.vertices.size()) +
                       " exceeds " + std::to_string(max_order);
      continue;
    }
    if (!is_properly_coloured_cycle(g, ac.cycle)) {
      throw std::logic_error("absorbing cycle assembled improperly");
    }
    ac.coverage = family_coverage(g, family, complement(n, ac.cycle.vertices), fp.seed,
                                  params.family.check);
    if (!ac.coverage.universal()) {
      result.failed_stage = CycleStage::Verify;
      result.message = "family not universal outside the cycle";
      continue;
    }
    ac.family = family;
    ac.connectors = std::move(connectors);
    result.cycle = std::move(ac);
    result.message.clear();
    return result;
  }
  return result;
}

DirectedCycle absorb_path(const ColouredComplete& g, const AbsorbingCycle& ac,
                          const DirectedPath& p) {
  const auto& pv = p.vertices;
  if (pv.size() < 4) throw std::domain_error("absorb_path needs a path of order >= 4");
  if (!is_properly_coloured_path(g, p)) throw std::domain_error("path is not properly coloured");
  for (Vertex v : pv) {
    if (std::find(ac.cycle.vertices.begin(), ac.cycle.vertices.end(), v) !=
        ac.cycle.vertices.end()) {
      throw std::domain_error("path meets the absorbing cycle");
    }
  }
  const Quad quad{pv[0], pv[1], pv[pv.size() - 2], pv.back()};
  const auto& cyc = ac.cycle.vertices;
  const std::size_t m = cyc.size();
  for (const Path4& member : ac.family) {
    if (!is_absorbing(g, quad, member)) continue;
    const auto at = std::find(cyc.begin(), cyc.end(), member[2]);
    if (at == cyc.end()) continue;
    const std::size_t i = static_cast<std::size_t>(at - cyc.begin());
    if (cyc[(i + m - 1) % m] != member[1]) continue;
    // Walk from z3 round to z2, then through p back to z3.
    DirectedCycle out;
    for (std::size_t t = 0; t < m; ++t) out.vertices.push_back(cyc[(i + t) % m]);
    out.vertices.insert(out.vertices.end(), pv.begin(), pv.end());
    if (!is_properly_coloured_cycle(g, out)) throw std::logic_error("absorption broke properness");
    return out;
  }
  throw AbsorptionError("no family member is absorbing for the path's end edges");
}

}  // namespace pchc
