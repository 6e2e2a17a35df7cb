#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "pchc/ec_graph.hpp"

namespace pchc {

struct LemmaParams {
  std::size_t n = 50;
  double eps = 0.1;
  std::size_t seeds = 10;
  std::uint64_t first_seed = 1;
  /// Defaults to floor((1/2 - eps) n).
  std::optional<std::size_t> dmax;
  /// Generator palette; the generator default when unset.
  std::optional<std::size_t> palette;
  std::size_t quads = 50;   // abspath: quads per instance
  std::size_t trials = 10;  // ifar / abscycle: probes per instance
  std::size_t jobs = 1;
};

/// Names accepted by lemma_check.
const std::vector<std::string>& lemma_names();

/// Runs one lemma's property suite over `seeds` generated instances and
/// returns a report with per-instance rows, a summary and "pass". Throws
/// std::invalid_argument for an unknown lemma.
nlohmann::json lemma_check(const std::string& name, const LemmaParams& params);

/// Instance metadata shared by all reports.
nlohmann::json instance_metadata(const ColouredComplete& g);

/// A random PC path of the given order inside `pool`, grown by random
/// extension with up to `tries` restarts.
std::optional<std::vector<Vertex>> random_pc_path(const ColouredComplete& g,
                                                  const std::vector<Vertex>& pool,
                                                  std::size_t order, std::mt19937_64& rng,
                                                  std::size_t tries = 200);

/// Calls body(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body);

}  // namespace pchc
