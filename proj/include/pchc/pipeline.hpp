#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pchc/absorbing.hpp"
#include "pchc/ec_graph.hpp"
#include "pchc/exact.hpp"
#include "pchc/rotations.hpp"

namespace pchc {

enum class Fallback { None, Exact };

const char* to_string(Fallback f);
Fallback parse_fallback(const std::string& s);

struct PipelineConfig {
  double eps = 0.1;
  /// Largest absorbing cycle as a fraction of n (always leaves 4 vertices).
  double gamma = 0.5;
  CycleParams absorbing = default_absorbing();
  TwoFactorConfig two_factor;
  std::size_t ham_path_steps = 2000;
  SearchBudget exact_budget = SearchBudget::defaults();
  Fallback fallback = Fallback::None;
  std::uint64_t seed = 1;

  static CycleParams default_absorbing();
};

enum class Stage { AbsorbingCycle = 1, Restrict, TwoFactor, HamPath, Absorb };

const char* to_string(Stage s);

struct StagedFailure {
  Stage stage = Stage::AbsorbingCycle;
  std::string message;
  std::optional<AbsorbingCycle> cycle;
  std::optional<Certificate> two_factor;  // in original vertex ids
  std::optional<std::vector<Vertex>> path;
};

struct PipelineResult {
  std::optional<Certificate> certificate;  // verified HamCycle
  std::optional<StagedFailure> failure;
  std::optional<SearchResult> fallback;    // exact verdict after a failure
  std::vector<std::pair<std::string, double>> timings_ms;
  std::string ham_path_method;             // "rotation" or "exact"

  /// Found when the pipeline or the fallback found a cycle; NotExists only
  /// from the exact fallback; BudgetExhausted otherwise.
  SearchStatus verdict() const;
};

/// Absorbing cycle, restriction to the rest, 2-factor there, Hamiltonian path
/// from the 2-factor, absorption into the cycle. Requires n >= 8.
PipelineResult run_pipeline(const ColouredComplete& g, const PipelineConfig& cfg = {});

struct ConstantsReport {
  double eps = 0;
  double log10_gamma = 0;          // gamma underflows doubles for small eps
  double gamma = 0;
  double eps_prime = 0;
  std::size_t ifar_cap = 0;        // floor(2 / eps^2)
  std::size_t rotation_depth_cap = 0;
  double log10_cycle_fraction = 0; // the absorbing cycle bound 2^-5 eps^(4/eps^2 + 2)
  double family_fraction = 0;      // 2^-7 eps^2
  std::size_t rotation_n0 = 0;
  std::size_t two_factor_n1 = 0;   // at eps
  std::size_t two_factor_n1_eps_prime = 0;
  std::string abscycle_n0 = "implicit";
};

/// Requires 0 < eps < 1/4 (std::domain_error otherwise).
ConstantsReport check_constants(double eps);

}  // namespace pchc
