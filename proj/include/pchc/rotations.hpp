#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pchc/ec_graph.hpp"

namespace pchc {

/// Vertex-disjoint union of at most one directed path and any number of
/// directed cycles. When present the path runs from x = path.front() to
/// y = path.back() and has order >= 2.
struct PathCycleSystem {
  std::vector<Vertex> path;
  std::vector<std::vector<Vertex>> cycles;

  bool has_path() const noexcept { return !path.empty(); }
  Vertex x() const { return path.front(); }
  Vertex y() const { return path.back(); }
  std::size_t size() const;
  std::vector<Vertex> vertices() const;  // sorted
  bool operator==(const PathCycleSystem&) const = default;
};

/// Endpoints and end-edge colours (x, c_x; y, c_y) of the path.
struct Parameters {
  Vertex x = 0;
  Colour cx = 0;
  Vertex y = 0;
  Colour cy = 0;
  bool operator==(const Parameters&) const = default;
};

/// Throws std::domain_error when the system has no path.
Parameters parameters(const PathCycleSystem& sys, const ColouredComplete& g);

/// True iff the system is a properly coloured 1-path-cycle in g.
bool is_valid_system(const PathCycleSystem& sys, const ColouredComplete& g);

Certificate to_certificate(const PathCycleSystem& sys, CertificateKind kind);

/// Neighbourhoods and distances inside a system (its own edges only).
class SystemIndex {
 public:
  static constexpr std::size_t kFar = static_cast<std::size_t>(-1);

  SystemIndex(const PathCycleSystem& sys, std::size_t n);

  bool contains(Vertex v) const { return v < piece_.size() && piece_[v] >= 0; }
  bool on_path(Vertex v) const { return contains(v) && piece_[v] == 0; }
  /// Index into sys.cycles, or -1.
  int cycle_of(Vertex v) const { return contains(v) && piece_[v] > 0 ? piece_[v] - 1 : -1; }
  std::size_t position(Vertex v) const { return pos_[v]; }
  std::vector<Vertex> neighbours(Vertex v) const;
  /// Graph distance within the system; kFar when in different pieces.
  std::size_t distance(Vertex a, Vertex b) const;

 private:
  const PathCycleSystem* sys_;
  std::vector<int> piece_;  // -1 absent, 0 path, i+1 cycle i
  std::vector<std::size_t> pos_;
};

enum class Side { Left, Right };

const char* to_string(Side s);

/// Edge from a path endpoint to w whose colour differs from that endpoint's
/// parameter colour. `lands_at` pins which neighbour of w becomes the new
/// endpoint when a rotation admits two outcomes; unset means the default.
struct Chord {
  Side side = Side::Right;
  Vertex endpoint = 0;
  Vertex w = 0;
  std::optional<Vertex> lands_at;
  bool operator==(const Chord&) const = default;
};

struct ChordSequence {
  std::vector<Chord> chords;
  std::size_t spread_distance = 5;
};

/// Signals that chord `index` of a sequence was not applicable.
class SequenceError : public std::runtime_error {
 public:
  SequenceError(std::size_t index, const std::string& what);
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// All chords on `side`. Right: every w in V(sys) \ {y} with c(yw) != c_y.
/// Throws std::domain_error for a pathless system.
std::vector<Chord> find_chords(const PathCycleSystem& sys, const ColouredComplete& g, Side side);

/// Every system a rotation along `ch` can produce (one or two), default
/// outcome first. The default rewires the path when w is on it and both
/// path cases apply, and walks a cycle against its stored orientation.
/// Throws std::domain_error when `ch` is not a valid chord or w lies in
/// {x} + N(x) (right) / {y} + N(y) (left).
std::vector<PathCycleSystem> rotation_outcomes(const PathCycleSystem& sys,
                                               const ColouredComplete& g, const Chord& ch);

/// One rotation; honours ch.lands_at when set.
PathCycleSystem rotate(const PathCycleSystem& sys, const ColouredComplete& g, const Chord& ch);

/// Pairwise distances in `sys` between x, y and every w_i exceed the spread
/// distance. A repeated w_i counts as distance 0.
bool is_spread_out(const PathCycleSystem& sys, const ChordSequence& seq);

/// Rotates along each chord in turn. With `check_guarantees` and a spread-out
/// sequence, the endpoint guarantees for chord sequences are asserted
/// (std::logic_error on violation). Throws SequenceError naming the failing
/// chord.
PathCycleSystem apply_sequence(const PathCycleSystem& sys, const ColouredComplete& g,
                               const ChordSequence& seq, bool check_guarantees = false);

/// Merges a right sequence reaching (x,c_x; z,c_z) with a left sequence
/// reaching (w,c_w; y,c_y) into one system with parameters (w,c_w; z,c_z) on
/// the same vertex set. With `require_spread` a non-spread-out concatenation
/// is refused (std::domain_error); without it the result is validated and a
/// SequenceError raised on mismatch.
PathCycleSystem combine_sequences(const PathCycleSystem& sys, const ColouredComplete& g,
                                  const ChordSequence& right_seq, const ChordSequence& left_seq,
                                  bool require_spread = true);

// ---- endpoint-state expansion -----------------------------------------------

/// A reachable endpoint state: after `witness` the moving endpoint is `z`
/// with end colour `colour`.
struct EndState {
  Vertex z = 0;
  Colour colour = 0;
  ChordSequence witness;
  PathCycleSystem system;
};

struct TwoColourHit {
  std::size_t depth = 0;
  Vertex z = 0;
  EndState first;
  EndState second;
};

struct ExpansionOptions {
  std::size_t max_depth = 9;
  std::size_t spread_distance = 5;
  /// When false, chord sequences need not be spread out; every rotation is
  /// still validated against the current system.
  bool enforce_spread = true;
};

struct ExpansionResult {
  /// layers[l] is the state set reached by exactly l rotations.
  std::vector<std::vector<EndState>> layers;
  std::optional<TwoColourHit> hit;
  std::uint64_t rotations = 0;
};

/// Breadth-first search over endpoint states reachable by rotations on one
/// side, avoiding `forbidden` for chord vertices and endpoints. Stops at the
/// first depth with a vertex reached in two different colours. Ties are
/// broken by lowest vertex, then lowest colour.
ExpansionResult expand_end_colours(const PathCycleSystem& sys, const ColouredComplete& g,
                                   Side side, const std::vector<Vertex>& forbidden,
                                   const ExpansionOptions& options = {});

// ---- 2-factor search --------------------------------------------------------

/// Greedy path growth from a random edge, extending either end while some
/// uncovered vertex fits. The largest of `restarts` attempts is returned.
/// Requires n >= 2.
PathCycleSystem maximal_path_cycle(const ColouredComplete& g, std::uint64_t seed,
                                   std::size_t restarts = 50);

struct TwoFactorConfig {
  std::uint64_t seed = 1;
  std::size_t restarts = 50;
  std::size_t spread_distance = 5;
  std::size_t max_depth = 9;
  /// Drop the spread-out requirement when the spread-out search stalls.
  bool allow_fallback = true;
  /// Take any rotated system that can grow or close directly. When false,
  /// only the two-sided colour-pair closing route is used.
  bool adopt_extendable = true;
};

struct TwoFactorStats {
  std::uint64_t rotations = 0;
  std::size_t restarts_used = 0;
  std::size_t closures = 0;
  std::size_t spread_closures = 0;    // closed via the two-sided spread-out route
  std::size_t fallback_closures = 0;  // closed with the spread-out rule dropped
  std::vector<std::size_t> z_layer_sizes;  // from the first right expansion
};

struct TwoFactorResult {
  bool success = false;
  Certificate certificate;   // TwoFactor, verified, when success
  PathCycleSystem largest;   // best system seen (on failure)
  TwoFactorStats stats;
};

/// Grows a maximal properly coloured 1-path-cycle and turns it into a
/// 2-factor by chord rotations: endpoint-colour expansion on the right, an
/// avoid-set around the used chords, the left expansion, sequence
/// combination and closing the path with the edge zw. Requires n >= 3.
TwoFactorResult find_pc_two_factor(const ColouredComplete& g, const TwoFactorConfig& config = {});

/// Turns a PC 2-factor into a PC Hamiltonian path by opening one cycle and
/// absorbing the others through cycle chords, with random path rewiring when
/// stuck. Returns nullopt after `max_steps` fruitless rewirings.
std::optional<std::vector<Vertex>> ham_path_by_rotation(const ColouredComplete& g,
                                                        const std::vector<std::vector<Vertex>>& cycles,
                                                        std::uint64_t seed,
                                                        std::size_t max_steps = 2000);

}  // namespace pchc
