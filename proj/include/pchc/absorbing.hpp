#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pchc/ec_graph.hpp"

namespace pchc {

/// Ordered quadruple (x1, x2; y1, y2).
using Quad = std::array<Vertex, 4>;
/// Candidate path z1 z2 z3 z4.
using Path4 = std::array<Vertex, 4>;

struct AbsorbingRecord {
  Quad quad{};
  Path4 path{};
};

/// z1z2z3z4 is PC, disjoint from the quad, and both z1z2x1x2 and y1y2z3z4
/// are PC. Repeated or out-of-range vertices give false.
bool is_absorbing(const ColouredComplete& g, const Quad& quad, const Path4& path);

/// Number of absorbing paths for `quad`, counted in O(n^3). Requires n >= 9
/// and a quad of distinct vertices (std::domain_error otherwise).
std::uint64_t count_absorbing(const ColouredComplete& g, const Quad& quad);

/// Visits every absorbing path for `quad` by plain enumeration; the visitor
/// returns false to stop early. Returns the number visited.
std::uint64_t for_each_absorbing(const ColouredComplete& g, const Quad& quad,
                                 const std::function<bool(const Path4&)>& visit);

std::vector<Path4> enumerate_absorbing(const ColouredComplete& g, const Quad& quad);

// ---- family sampling ----------------------------------------------------------

struct Coverage {
  std::uint64_t checked = 0;
  std::uint64_t covered = 0;
  bool exhaustive = true;
  std::optional<Quad> first_miss;

  bool universal() const { return covered == checked; }
  double fraction() const { return checked ? static_cast<double>(covered) / checked : 0.0; }
};

struct UniversalityCheck {
  /// Exhaustive when the number of ordered quads is at most this.
  std::uint64_t exhaustive_limit = 3'000'000;
  /// Random quads drawn otherwise.
  std::uint64_t samples = 100'000;
};

/// Checks, over ordered quads of distinct vertices from `pool`, that some
/// member of `family` is absorbing. Members must avoid the pool.
Coverage family_coverage(const ColouredComplete& g, const std::vector<Path4>& family,
                         const std::vector<Vertex>& pool, std::uint64_t seed,
                         const UniversalityCheck& check = {});

struct FamilyParams {
  /// Expected number of sampled 4-tuples; sets p = target / (n)_4.
  double target_size = 4;
  /// Overrides p when set.
  std::optional<double> probability;
  std::size_t retry_budget = 50;
  std::uint64_t seed = 1;
  UniversalityCheck check;
};

struct FamilyResult {
  bool success = false;
  std::vector<Path4> family;  // the universal family, or the best attempt
  Coverage coverage;          // over quads outside the family
  std::size_t attempts = 0;
};

/// Samples each ordered 4-tuple with probability p, deletes the later-sampled
/// tuple of every intersecting pair, drops tuples that are not PC paths and
/// verifies universality over quads outside the family. Retries with fresh
/// randomness; on failure reports the best family seen.
FamilyResult sample_absorbing_family(const ColouredComplete& g, const FamilyParams& params);

// ---- joining and the absorbing cycle ----------------------------------------

struct JoinResult {
  std::optional<std::vector<Vertex>> path;
  std::uint64_t nodes = 0;
};

/// Finds P of order 2..max_len avoiding `avoid` such that v1 v2 P v1p v2p is
/// PC, shortest orders first. The result is re-verified before returning.
JoinResult join_ends(const ColouredComplete& g, Vertex v1, Vertex v2, Vertex v1p, Vertex v2p,
                     const std::vector<Vertex>& avoid, std::size_t max_len,
                     std::uint64_t node_limit = 2'000'000);

struct AbsorbingCycle {
  DirectedCycle cycle;
  std::vector<Path4> family;
  std::vector<std::vector<Vertex>> connectors;  // connectors[j] joins family[j] to family[j+1]
  Coverage coverage;                            // over quads outside the cycle
};

struct CycleParams {
  FamilyParams family;
  std::size_t max_len = 8;
  std::size_t retry_budget = 20;
  /// Largest admissible cycle order; 0 means n - 4.
  std::size_t max_order = 0;
};

enum class CycleStage { Family, Join, Verify };

const char* to_string(CycleStage s);

struct CycleResult {
  std::optional<AbsorbingCycle> cycle;
  CycleStage failed_stage = CycleStage::Family;
  std::string message;
  std::size_t attempts = 0;
};

/// Samples a universal family, stitches consecutive members with join_ends
/// (last two vertices of P_j to the first two of P_{j+1}, wrapping around),
/// checks the cycle is PC and re-verifies universality outside it.
CycleResult build_absorbing_cycle(const ColouredComplete& g, const CycleParams& params);

class AbsorptionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Splices p between z2 and z3 of a family member absorbing for
/// (p1, p2; p_{l-1}, p_l). Throws std::domain_error when p is not PC, has
/// order below 4 or meets the cycle; AbsorptionError when no member fits.
DirectedCycle absorb_path(const ColouredComplete& g, const AbsorbingCycle& ac,
                          const DirectedPath& p);

}  // namespace pchc
