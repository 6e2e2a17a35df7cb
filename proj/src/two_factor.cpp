#include <algorithm>
#include <random>
#include <set>

#include "pchc/rotations.hpp"

namespace pchc {

namespace {

using Rng = std::mt19937_64;

bool closable(const PathCycleSystem& sys, const ColouredComplete& g) {
  if (sys.path.size() < 3) return false;
  const Parameters p = parameters(sys, g);
  const Colour c = g(p.x, p.y);
  return c != p.cx && c != p.cy;
}

std::vector<Vertex> outside(const PathCycleSystem& sys, std::size_t n) {
  std::vector<char> in(n, 0);
  for (Vertex v : sys.vertices()) in[v] = 1;
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v) {
    if (!in[v]) out.push_back(v);
  }
  return out;
}

/// Extends an end of the path by one outside vertex; false if none fits.
bool extend_once(PathCycleSystem& sys, const ColouredComplete& g, Rng& rng) {
  auto out = outside(sys, g.order());
  if (out.empty()) return false;
  std::shuffle(out.begin(), out.end(), rng);
  const Parameters p = parameters(sys, g);
  for (Vertex v : out) {
    if (g(p.y, v) != p.cy) {
      sys.path.push_back(v);
      return true;
    }
    if (g(p.x, v) != p.cx) {
      sys.path.insert(sys.path.begin(), v);
      return true;
    }
  }
  return false;
}

/// Starts a new path. Two outside vertices form an edge; a single outside
/// vertex v is joined to a cycle, which is opened into a path starting at v.
bool open_path(PathCycleSystem& sys, const ColouredComplete& g, Rng& rng) {
  auto out = outside(sys, g.order());
  if (out.size() >= 2) {
    std::shuffle(out.begin(), out.end(), rng);
    sys.path = {out[0], out[1]};
    return true;
  }
  if (out.size() != 1 || sys.cycles.empty()) return false;
  const Vertex v = out[0];
  const auto& cyc = sys.cycles.front();
  const std::size_t m = cyc.size();
  // c(v u) differs from one of the two cycle edges at u, since those differ.
  const Vertex u = cyc[0];
  std::vector<Vertex> path{v};
  if (g(v, u) != g(u, cyc[1])) {
    for (std::size_t t = 0; t < m; ++t) path.push_back(cyc[t]);
  } else {
    for (std::size_t t = 0; t < m; ++t) path.push_back(cyc[(m - t) % m]);
  }
  sys.cycles.erase(sys.cycles.begin());
  sys.path = std::move(path);
  return true;
}

void close_path(PathCycleSystem& sys) {
  sys.cycles.push_back(std::move(sys.path));
  sys.path.clear();
}

bool useful(const PathCycleSystem& sys, const ColouredComplete& g) {
  if (closable(sys, g)) return true;
  auto out = outside(sys, g.order());
  const Parameters p = parameters(sys, g);
  return std::any_of(out.begin(), out.end(),
                     [&](Vertex v) { return g(p.y, v) != p.cy || g(p.x, v) != p.cx; });
}

/// Vertices within `radius` of any of `centres` in sys.
std::vector<Vertex> neighbourhood(const PathCycleSystem& sys, std::size_t n,
                                  const std::vector<Vertex>& centres, std::size_t radius) {
  const SystemIndex idx(sys, n);
  std::vector<Vertex> out;
  for (Vertex v : sys.vertices()) {
    for (Vertex c : centres) {
      const std::size_t d = idx.distance(v, c);
      if (d != SystemIndex::kFar && d <= radius) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

class Grower {
 public:
  Grower(const ColouredComplete& g, const TwoFactorConfig& cfg, TwoFactorStats& stats)
      : g_(g), cfg_(cfg), stats_(stats) {}

  /// One rotation-assisted improvement of a stuck, non-closable path.
  bool improve(PathCycleSystem& sys, Rng& rng) {
    if (cfg_.spread_distance > 0 && improve_with(sys, true)) return true;
    if (cfg_.allow_fallback || cfg_.spread_distance == 0) return improve_with(sys, false);
    (void)rng;
    return false;
  }

  bool first_expansion_recorded = false;

 private:
  ExpansionOptions options(bool spread) const {
    return {cfg_.max_depth, cfg_.spread_distance, spread};
  }

  bool adopt_useful(PathCycleSystem& sys, const ExpansionResult& r) {
    if (!cfg_.adopt_extendable) return false;
    for (std::size_t d = 1; d < r.layers.size(); ++d) {
      for (const auto& st : r.layers[d]) {
        if (useful(st.system, g_)) {
          sys = st.system;
          return true;
        }
      }
    }
    return false;
  }

  bool try_pair(PathCycleSystem& sys, const EndState& rs, const EndState& ls, bool spread) {
    const Vertex z = rs.z, w = ls.z;
    if (z == w) return false;
    const Colour czw = g_(z, w);
    if (czw == rs.colour || czw == ls.colour) return false;
    try {
      PathCycleSystem merged = combine_sequences(sys, g_, rs.witness, ls.witness, spread);
      if (!closable(merged, g_)) return false;
      sys = std::move(merged);
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }

  bool improve_with(PathCycleSystem& sys, bool spread) {
    const std::size_t n = g_.order();
    ExpansionResult right = expand_end_colours(sys, g_, Side::Right, {}, options(spread));
    stats_.rotations += right.rotations;
    if (!first_expansion_recorded) {
      first_expansion_recorded = true;
      for (const auto& layer : right.layers) stats_.z_layer_sizes.push_back(layer.size());
    }
    if (adopt_useful(sys, right)) return true;
    ExpansionResult left = expand_end_colours(sys, g_, Side::Left, {}, options(spread));
    stats_.rotations += left.rotations;
    if (adopt_useful(sys, left)) return true;

    if (spread && right.hit) {
      std::vector<Vertex> centres{sys.x(), sys.y()};
      for (const auto* st : {&right.hit->first, &right.hit->second}) {
        for (const auto& c : st->witness.chords) centres.push_back(c.w);
      }
      auto avoid = neighbourhood(sys, n, centres, cfg_.spread_distance);
      avoid.erase(std::remove_if(avoid.begin(), avoid.end(),
                                 [&](Vertex v) { return v == sys.x() || v == sys.y(); }),
                  avoid.end());
      ExpansionResult left2 = expand_end_colours(sys, g_, Side::Left, avoid, options(true));
      stats_.rotations += left2.rotations;
      if (left2.hit) {
        for (const auto* rs : {&right.hit->first, &right.hit->second}) {
          for (const auto* ls : {&left2.hit->first, &left2.hit->second}) {
            if (try_pair(sys, *rs, *ls, true)) {
              ++stats_.spread_closures;
              return true;
            }
          }
        }
      }
    }

    constexpr std::size_t kPairBudget = 4000;
    std::size_t tried = 0;
    for (const auto& rl : right.layers) {
      for (const auto& rs : rl) {
        for (const auto& ll : left.layers) {
          for (const auto& ls : ll) {
            if (rs.witness.chords.empty() && ls.witness.chords.empty()) continue;
            if (++tried > kPairBudget) return false;
            if (try_pair(sys, rs, ls, spread)) {
              if (spread) {
                ++stats_.spread_closures;
              } else {
                ++stats_.fallback_closures;
              }
              return true;
            }
          }
        }
      }
    }
    return false;
  }

  const ColouredComplete& g_;
  const TwoFactorConfig& cfg_;
  TwoFactorStats& stats_;
};

PathCycleSystem greedy_start(const ColouredComplete& g, Rng& rng) {
  PathCycleSystem sys;
  open_path(sys, g, rng);
  while (extend_once(sys, g, rng)) {
  }
  return sys;
}

}  // namespace

PathCycleSystem maximal_path_cycle(const ColouredComplete& g, std::uint64_t seed,
                                   std::size_t restarts) {
  if (g.order() < 2) throw std::domain_error("maximal_path_cycle needs n >= 2");
  Rng rng(seed);
  PathCycleSystem best;
  for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
    PathCycleSystem sys = greedy_start(g, rng);
    if (sys.size() > best.size()) best = std::move(sys);
    if (best.size() == g.order()) break;
  }
  return best;
}

TwoFactorResult find_pc_two_factor(const ColouredComplete& g, const TwoFactorConfig& config) {
  const std::size_t n = g.order();
  if (n < 3) throw std::domain_error("find_pc_two_factor needs n >= 3");
  TwoFactorResult result;
  Rng rng(config.seed);
  Grower grower(g, config, result.stats);

  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(config.restarts, 1); ++attempt) {
    result.stats.restarts_used = attempt + 1;
    PathCycleSystem sys = greedy_start(g, rng);
    const std::size_t guard = 8 * n + 16;
    for (std::size_t round = 0; round < guard; ++round) {
      if (!sys.has_path()) {
        if (sys.size() == n) {
          Certificate cert = to_certificate(sys, CertificateKind::TwoFactor);
          cert = verify_certificate(g, cert);
          if (!cert.verdict.valid) throw std::logic_error("2-factor search built an invalid cover");
          result.success = true;
          result.certificate = std::move(cert);
          result.largest = std::move(sys);
          return result;
        }
        if (!open_path(sys, g, rng)) break;
      }
      while (extend_once(sys, g, rng)) {
      }
      if (sys.size() > result.largest.size() || result.largest.size() == 0) result.largest = sys;
      if (closable(sys, g)) {
        close_path(sys);
        ++result.stats.closures;
        continue;
      }
      if (!grower.improve(sys, rng)) break;
      if (closable(sys, g) && outside(sys, n).empty()) {
        close_path(sys);
        ++result.stats.closures;
      }
    }
  }
  return result;
}

std::optional<std::vector<Vertex>> ham_path_by_rotation(
    const ColouredComplete& g, const std::vector<std::vector<Vertex>>& cycles, std::uint64_t seed,
    std::size_t max_steps) {
  if (cycles.empty()) return std::nullopt;
  Rng rng(seed);
  PathCycleSystem sys;
  sys.path = cycles.front();
  sys.cycles.assign(cycles.begin() + 1, cycles.end());
  if (!is_valid_system(sys, g)) return std::nullopt;

  std::size_t steps = 0;
  while (!sys.cycles.empty()) {
    bool absorbed = false;
    for (Side side : {Side::Right, Side::Left}) {
      const SystemIndex idx(sys, g.order());
      for (const Chord& ch : find_chords(sys, g, side)) {
        if (idx.cycle_of(ch.w) < 0) continue;
        sys = rotate(sys, g, ch);
        absorbed = true;
        break;
      }
      if (absorbed) break;
    }
    if (absorbed) continue;

    if (++steps > max_steps) return std::nullopt;
    std::vector<std::pair<Chord, PathCycleSystem>> moves;
    for (Side side : {Side::Right, Side::Left}) {
      for (const Chord& ch : find_chords(sys, g, side)) {
        try {
          for (auto& o : rotation_outcomes(sys, g, ch)) {
            if (o.cycles.size() == sys.cycles.size()) moves.emplace_back(ch, std::move(o));
          }
        } catch (const std::domain_error&) {
        }
      }
    }
    if (moves.empty()) return std::nullopt;
    sys = std::move(moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)].second);
  }
  return sys.path;
}

}  // namespace pchc
