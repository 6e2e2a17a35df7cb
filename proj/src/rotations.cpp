#include "pchc/rotations.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pchc {

std::size_t PathCycleSystem::size() const {
  std::size_t s = path.size();
  for (const auto& c : cycles) s += c.size();
  return s;
}

std::vector<Vertex> PathCycleSystem::vertices() const {
  std::vector<Vertex> out(path);
  for (const auto& c : cycles) out.insert(out.end(), c.begin(), c.end());
  std::sort(out.begin(), out.end());
  return out;
}

Parameters parameters(const PathCycleSystem& sys, const ColouredComplete& g) {
  if (sys.path.size() < 2) throw std::domain_error("system has no path of order >= 2");
  const auto& p = sys.path;
  return {p.front(), g(p[0], p[1]), p.back(), g(p[p.size() - 1], p[p.size() - 2])};
}

Certificate to_certificate(const PathCycleSystem& sys, CertificateKind kind) {
  Certificate cert;
  cert.kind = kind;
  cert.path = sys.path;
  cert.cycles = sys.cycles;
  return cert;
}

bool is_valid_system(const PathCycleSystem& sys, const ColouredComplete& g) {
  return verify_certificate(g, to_certificate(sys, CertificateKind::PathCycleSystem)).verdict.valid;
}

// ---- SystemIndex --------------------------------------------------------------

SystemIndex::SystemIndex(const PathCycleSystem& sys, std::size_t n)
    : sys_(&sys), piece_(n, -1), pos_(n, 0) {
  for (std::size_t i = 0; i < sys.path.size(); ++i) {
    piece_[sys.path[i]] = 0;
    pos_[sys.path[i]] = i;
  }
  for (std::size_t c = 0; c < sys.cycles.size(); ++c) {
    for (std::size_t i = 0; i < sys.cycles[c].size(); ++i) {
      piece_[sys.cycles[c][i]] = static_cast<int>(c) + 1;
      pos_[sys.cycles[c][i]] = i;
    }
  }
}

std::vector<Vertex> SystemIndex::neighbours(Vertex v) const {
  if (!contains(v)) return {};
  const std::size_t i = pos_[v];
  if (piece_[v] == 0) {
    const auto& p = sys_->path;
    std::vector<Vertex> out;
    if (i > 0) out.push_back(p[i - 1]);
    if (i + 1 < p.size()) out.push_back(p[i + 1]);
    return out;
  }
  const auto& c = sys_->cycles[piece_[v] - 1];
  const std::size_t m = c.size();
  return {c[(i + m - 1) % m], c[(i + 1) % m]};
}

std::size_t SystemIndex::distance(Vertex a, Vertex b) const {
  if (!contains(a) || !contains(b) || piece_[a] != piece_[b]) return kFar;
  const std::size_t i = pos_[a], j = pos_[b];
  const std::size_t d = i > j ? i - j : j - i;
  if (piece_[a] == 0) return d;
  const std::size_t m = sys_->cycles[piece_[a] - 1].size();
  return std::min(d, m - d);
}

const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

SequenceError::SequenceError(std::size_t index, const std::string& what)
    : std::runtime_error("chord " + std::to_string(index) + ": " + what), index_(index) {}

// ---- chords and rotations -----------------------------------------------------

namespace {

PathCycleSystem with_reversed_path(PathCycleSystem sys) {
  std::reverse(sys.path.begin(), sys.path.end());
  return sys;
}

void require_path(const PathCycleSystem& sys) {
  if (sys.path.size() < 2) throw std::domain_error("system has no path");
}

// Right rotation outcomes; the chord is (y, w).
std::vector<PathCycleSystem> right_outcomes(const PathCycleSystem& sys, const ColouredComplete& g,
                                            Vertex w) {
  const auto& p = sys.path;
  const std::size_t len = p.size();
  const Vertex y = p.back();
  const Vertex x = p.front();
  if (w >= g.order() || w == y) throw std::domain_error("chord target must differ from the endpoint");
  const SystemIndex idx(sys, g.order());
  if (!idx.contains(w)) throw std::domain_error("chord target not in the system");
  const Colour cy = g(p[len - 1], p[len - 2]);
  const Colour cyw = g(y, w);
  if (cyw == cy) throw std::domain_error("edge has the endpoint's parameter colour; not a chord");
  if (w == x || idx.distance(w, x) == 1) {
    throw std::domain_error("chord target lies in {x} + N(x)");
  }

  std::vector<PathCycleSystem> out;
  if (const int ci = idx.cycle_of(w); ci >= 0) {
    const auto& cyc = sys.cycles[ci];
    const std::size_t m = cyc.size();
    const std::size_t i = idx.position(w);
    // Walking against the stored orientation: w, w-, w--, ..., w+.
    if (cyw != g(w, cyc[(i + m - 1) % m])) {
      PathCycleSystem next;
      next.path = p;
      for (std::size_t t = 0; t < m; ++t) next.path.push_back(cyc[(i + m - t) % m]);
      for (std::size_t c = 0; c < sys.cycles.size(); ++c) {
        if (static_cast<int>(c) != ci) next.cycles.push_back(sys.cycles[c]);
      }
      out.push_back(std::move(next));
    }
    if (cyw != g(w, cyc[(i + 1) % m])) {
      PathCycleSystem next;
      next.path = p;
      for (std::size_t t = 0; t < m; ++t) next.path.push_back(cyc[(i + t) % m]);
      for (std::size_t c = 0; c < sys.cycles.size(); ++c) {
        if (static_cast<int>(c) != ci) next.cycles.push_back(sys.cycles[c]);
      }
      out.push_back(std::move(next));
    }
  } else {
    const std::size_t j = idx.position(w);
    // w is v_j with 2 <= j <= len-3 (0-based) because w is off {x} + N(x)
    // and c(y v_{len-2}) = c_y.
    if (cyw != g(p[j], p[j - 1])) {
      PathCycleSystem next;
      next.path.assign(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(j) + 1);
      for (std::size_t t = len; t-- > j + 1;) next.path.push_back(p[t]);
      next.cycles = sys.cycles;
      out.push_back(std::move(next));
    }
    if (cyw != g(p[j], p[j + 1])) {
      PathCycleSystem next;
      next.path.assign(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(j));
      next.cycles = sys.cycles;
      next.cycles.emplace_back(p.begin() + static_cast<std::ptrdiff_t>(j), p.end());
      out.push_back(std::move(next));
    }
  }
  if (out.empty()) throw std::logic_error("rotation: neither case applies to a valid chord");
  return out;
}

}  // namespace

std::vector<Chord> find_chords(const PathCycleSystem& sys, const ColouredComplete& g, Side side) {
  require_path(sys);
  const Parameters prm = parameters(sys, g);
  const Vertex end = side == Side::Right ? prm.y : prm.x;
  const Colour ce = side == Side::Right ? prm.cy : prm.cx;
  std::vector<Chord> out;
  for (Vertex w : sys.vertices()) {
    if (w != end && g(end, w) != ce) out.push_back(Chord{side, end, w, std::nullopt});
  }
  return out;
}

std::vector<PathCycleSystem> rotation_outcomes(const PathCycleSystem& sys,
                                               const ColouredComplete& g, const Chord& ch) {
  require_path(sys);
  if (ch.side == Side::Right) {
    if (ch.endpoint != sys.y()) throw std::domain_error("right chord must start at y");
    return right_outcomes(sys, g, ch.w);
  }
  if (ch.endpoint != sys.x()) throw std::domain_error("left chord must start at x");
  auto outs = right_outcomes(with_reversed_path(sys), g, ch.w);
  for (auto& o : outs) std::reverse(o.path.begin(), o.path.end());
  return outs;
}

PathCycleSystem rotate(const PathCycleSystem& sys, const ColouredComplete& g, const Chord& ch) {
  auto outs = rotation_outcomes(sys, g, ch);
  if (!ch.lands_at) return std::move(outs.front());
  for (auto& o : outs) {
    const Vertex end = ch.side == Side::Right ? o.y() : o.x();
    if (end == *ch.lands_at) return std::move(o);
  }
  throw std::domain_error("rotation cannot land at vertex " + std::to_string(*ch.lands_at));
}

bool is_spread_out(const PathCycleSystem& sys, const ChordSequence& seq) {
  if (!sys.has_path()) return false;
  std::size_t n = 0;
  for (Vertex v : sys.vertices()) n = std::max<std::size_t>(n, v + 1);
  for (const auto& c : seq.chords) n = std::max<std::size_t>(n, c.w + 1);
  const SystemIndex idx(sys, n);
  std::vector<Vertex> marks{sys.x(), sys.y()};
  for (const auto& c : seq.chords) marks.push_back(c.w);
  for (std::size_t a = 0; a < marks.size(); ++a) {
    for (std::size_t b = a + 1; b < marks.size(); ++b) {
      if (marks[a] == marks[b]) return false;
      const std::size_t d = idx.distance(marks[a], marks[b]);
      if (d != SystemIndex::kFar && d <= seq.spread_distance) return false;
    }
  }
  return true;
}

namespace {

std::set<Colour> colours_at(const SystemIndex& idx, const ColouredComplete& g, Vertex v) {
  std::set<Colour> out;
  for (Vertex u : idx.neighbours(v)) out.insert(g(u, v));
  return out;
}

void check_sequence_guarantees(const PathCycleSystem& before, const PathCycleSystem& after,
                               const ColouredComplete& g, const ChordSequence& seq) {
  const SystemIndex idx(before, g.order());
  const Parameters p0 = parameters(before, g);
  const Parameters p1 = parameters(after, g);
  if (after.vertices() != before.vertices()) throw std::logic_error("vertex set changed");

  std::set<Vertex> allowed{p0.x, p0.y};
  for (const auto& c : seq.chords) {
    for (Vertex u : idx.neighbours(c.w)) allowed.insert(u);
  }
  if (!allowed.count(p1.x) || !allowed.count(p1.y)) {
    throw std::logic_error("new endpoint outside {x,y} + N(w_i)");
  }
  if (!colours_at(idx, g, p1.x).count(p1.cx) || !colours_at(idx, g, p1.y).count(p1.cy)) {
    throw std::logic_error("new end colour not seen at that vertex before rotating");
  }
  if (seq.chords.empty()) return;
  const auto last_nbrs = idx.neighbours(seq.chords.back().w);
  auto in_last = [&](Vertex v) {
    return std::find(last_nbrs.begin(), last_nbrs.end(), v) != last_nbrs.end();
  };
  const bool all_right = std::all_of(seq.chords.begin(), seq.chords.end(),
                                     [](const Chord& c) { return c.side == Side::Right; });
  const bool all_left = std::all_of(seq.chords.begin(), seq.chords.end(),
                                    [](const Chord& c) { return c.side == Side::Left; });
  if (all_right && (p1.x != p0.x || p1.cx != p0.cx || !in_last(p1.y))) {
    throw std::logic_error("right rotations moved x or left y outside N(w_last)");
  }
  if (all_left && (p1.y != p0.y || p1.cy != p0.cy || !in_last(p1.x))) {
    throw std::logic_error("left rotations moved y or left x outside N(w_last)");
  }
}

}  // namespace

PathCycleSystem apply_sequence(const PathCycleSystem& sys, const ColouredComplete& g,
                               const ChordSequence& seq, bool check_guarantees) {
  PathCycleSystem cur = sys;
  for (std::size_t i = 0; i < seq.chords.size(); ++i) {
    try {
      cur = rotate(cur, g, seq.chords[i]);
    } catch (const std::domain_error& e) {
      throw SequenceError(i, e.what());
    }
  }
  if (check_guarantees && is_spread_out(sys, seq)) check_sequence_guarantees(sys, cur, g, seq);
  return cur;
}

PathCycleSystem combine_sequences(const PathCycleSystem& sys, const ColouredComplete& g,
                                  const ChordSequence& right_seq, const ChordSequence& left_seq,
                                  bool require_spread) {
  for (const auto& c : right_seq.chords) {
    if (c.side != Side::Right) throw std::domain_error("right sequence holds a left chord");
  }
  for (const auto& c : left_seq.chords) {
    if (c.side != Side::Left) throw std::domain_error("left sequence holds a right chord");
  }
  ChordSequence joint{right_seq.chords, right_seq.spread_distance};
  joint.chords.insert(joint.chords.end(), left_seq.chords.begin(), left_seq.chords.end());
  if (require_spread && !is_spread_out(sys, joint)) {
    throw std::domain_error("combined chord sequence is not spread out");
  }

  const Parameters right_end = parameters(apply_sequence(sys, g, right_seq), g);
  const Parameters left_end = parameters(apply_sequence(sys, g, left_seq), g);
  PathCycleSystem combined = apply_sequence(sys, g, joint, require_spread);
  const Parameters got = parameters(combined, g);
  const Parameters want{left_end.x, left_end.cx, right_end.y, right_end.cy};
  if (got != want) {
    throw SequenceError(joint.chords.size() ? joint.chords.size() - 1 : 0,
                        "combined rotations ended at different parameters");
  }
  if (combined.vertices() != sys.vertices()) throw std::logic_error("vertex set changed");
  return combined;
}

// ---- expansion ----------------------------------------------------------------

namespace {

ExpansionResult expand_right(const PathCycleSystem& sys, const ColouredComplete& g,
                             const std::vector<Vertex>& forbidden,
                             const ExpansionOptions& opt) {
  ExpansionResult result;
  const std::size_t n = g.order();
  std::vector<char> banned(n, 0);
  for (Vertex v : forbidden) {
    if (v < n) banned[v] = 1;
  }
  const Parameters p0 = parameters(sys, g);
  const std::vector<Vertex> members = sys.vertices();

  result.layers.push_back({EndState{p0.y, p0.cy, ChordSequence{{}, opt.spread_distance}, sys}});
  for (std::size_t depth = 0; depth < opt.max_depth; ++depth) {
    std::map<std::pair<Vertex, Colour>, EndState> next;
    for (const EndState& st : result.layers.back()) {
      const SystemIndex idx(st.system, n);
      const Vertex x = st.system.x();
      for (Vertex v : members) {
        if (banned[v] || v == st.z || g(st.z, v) == st.colour) continue;
        if (v == x || idx.distance(v, x) == 1) continue;
        Chord ch{Side::Right, st.z, v, std::nullopt};
        ChordSequence seq = st.witness;
        seq.chords.push_back(ch);
        if (opt.enforce_spread && !is_spread_out(sys, seq)) continue;
        auto outs = rotation_outcomes(st.system, g, ch);
        ++result.rotations;
        for (auto& o : outs) {
          const Parameters prm = parameters(o, g);
          if (banned[prm.y]) continue;
          const auto key = std::make_pair(prm.y, prm.cy);
          if (next.count(key)) continue;
          ChordSequence w = seq;
          w.chords.back().lands_at = prm.y;
          next.emplace(key, EndState{prm.y, prm.cy, std::move(w), std::move(o)});
        }
      }
    }
    std::vector<EndState> layer;
    layer.reserve(next.size());
    for (auto& [key, st] : next) layer.push_back(std::move(st));
    result.layers.push_back(std::move(layer));

    const auto& cur = result.layers.back();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      if (cur[i].z == cur[i + 1].z) {  // sorted by (z, colour): distinct colours
        result.hit = TwoColourHit{depth + 1, cur[i].z, cur[i], cur[i + 1]};
        return result;
      }
    }
    if (cur.empty()) break;
  }
  return result;
}

EndState mirror(EndState st) {
  for (auto& c : st.witness.chords) c.side = Side::Left;
  std::reverse(st.system.path.begin(), st.system.path.end());
  return st;
}

}  // namespace

ExpansionResult expand_end_colours(const PathCycleSystem& sys, const ColouredComplete& g,
                                   Side side, const std::vector<Vertex>& forbidden,
                                   const ExpansionOptions& options) {
  require_path(sys);
  if (side == Side::Right) return expand_right(sys, g, forbidden, options);
  ExpansionResult r = expand_right(with_reversed_path(sys), g, forbidden, options);
  for (auto& layer : r.layers) {
    for (auto& st : layer) st = mirror(std::move(st));
  }
  if (r.hit) {
    r.hit->first = mirror(std::move(r.hit->first));
    r.hit->second = mirror(std::move(r.hit->second));
  }
  return r;
}

}  // namespace pchc
