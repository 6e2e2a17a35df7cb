#include "pchc/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace pchc {

const char* to_string(Fallback f) { return f == Fallback::Exact ? "exact" : "none"; }

Fallback parse_fallback(const std::string& s) {
  if (s == "none") return Fallback::None;
  if (s == "exact") return Fallback::Exact;
  throw std::invalid_argument("unknown fallback '" + s + "'");
}

const char* to_string(Stage s) {
  switch (s) {
    case Stage::AbsorbingCycle: return "absorbing-cycle";
    case Stage::Restrict: return "restrict";
    case Stage::TwoFactor: return "two-factor";
    case Stage::HamPath: return "ham-path";
    case Stage::Absorb: return "absorb";
  }
  return "?";
}

CycleParams PipelineConfig::default_absorbing() {
  CycleParams p;
  p.family.target_size = 4;
  p.family.retry_budget = 30;
  p.max_len = 4;
  p.retry_budget = 10;
  return p;
}

SearchStatus PipelineResult::verdict() const {
  if (certificate) return SearchStatus::Found;
  if (fallback) return fallback->status;
  return SearchStatus::BudgetExhausted;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<Vertex> relabel(const std::vector<Vertex>& local, const std::vector<Vertex>& keep) {
  std::vector<Vertex> out;
  out.reserve(local.size());
  for (Vertex v : local) out.push_back(keep[v]);
  return out;
}

}  // namespace

PipelineResult run_pipeline(const ColouredComplete& g, const PipelineConfig& cfg) {
  const std::size_t n = g.order();
  if (n < 8) throw std::domain_error("run_pipeline needs n >= 8");
  PipelineResult res;
  StagedFailure fail;

  auto finish_failure = [&](Stage stage, std::string message) {
    fail.stage = stage;
    fail.message = std::move(message);
    res.failure = std::move(fail);
    if (cfg.fallback == Fallback::Exact && n <= 32) {
      const auto t0 = Clock::now();
      res.fallback = exact_pc_ham_cycle(g, cfg.exact_budget);
      res.timings_ms.emplace_back("fallback", ms_since(t0));
      if (res.fallback->status == SearchStatus::Found) res.certificate = res.fallback->certificate;
    }
    return res;
  };

  // Stage 1: absorbing cycle.
  auto t0 = Clock::now();
  CycleParams cp = cfg.absorbing;
  const auto cap = static_cast<std::size_t>(std::floor(cfg.gamma * static_cast<double>(n)));
  cp.max_order = std::min(cap, n - 4);
  cp.family.seed = cfg.seed;
  if (cp.max_order < 6) {
    res.timings_ms.emplace_back("absorbing-cycle", ms_since(t0));
    return finish_failure(Stage::AbsorbingCycle, "no room for an absorbing cycle");
  }
  CycleResult built = build_absorbing_cycle(g, cp);
  res.timings_ms.emplace_back("absorbing-cycle", ms_since(t0));
  if (!built.cycle) {
    return finish_failure(Stage::AbsorbingCycle,
                          std::string(to_string(built.failed_stage)) + ": " + built.message);
  }
  const AbsorbingCycle& ac = *built.cycle;
  fail.cycle = ac;

  // Stage 2: restriction to the vertices off the cycle.
  t0 = Clock::now();
  std::vector<char> on_cycle(n, 0);
  for (Vertex v : ac.cycle.vertices) on_cycle[v] = 1;
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < n; ++v) {
    if (!on_cycle[v]) keep.push_back(v);
  }
  const ColouredComplete rest = g.induced(keep);
  res.timings_ms.emplace_back("restrict", ms_since(t0));
  if (delta_mon(rest) > delta_mon(g)) {
    throw std::logic_error("vertex deletion increased the monochromatic degree");
  }
  if (rest.order() < 4) return finish_failure(Stage::Restrict, "fewer than 4 vertices remain");

  // Stage 3: 2-factor on the rest.
  t0 = Clock::now();
  TwoFactorConfig tf = cfg.two_factor;
  tf.seed = cfg.seed;
  TwoFactorResult factor = find_pc_two_factor(rest, tf);
  res.timings_ms.emplace_back("two-factor", ms_since(t0));
  if (!factor.success) return finish_failure(Stage::TwoFactor, "no 2-factor found");
  {
    Certificate global = factor.certificate;
    for (auto& c : global.cycles) c = relabel(c, keep);
    fail.two_factor = global;
  }

  // Stage 4: Hamiltonian path on the rest.
  t0 = Clock::now();
  std::optional<std::vector<Vertex>> local =
      ham_path_by_rotation(rest, factor.certificate.cycles, cfg.seed, cfg.ham_path_steps);
  res.ham_path_method = "rotation";
  if (!local && rest.order() <= 32) {
    SearchResult sr = exact_pc_ham_path(rest, cfg.exact_budget);
    if (sr.status == SearchStatus::Found) {
      local = sr.certificate.path;
      res.ham_path_method = "exact";
    }
  }
  res.timings_ms.emplace_back("ham-path", ms_since(t0));
  if (!local) return finish_failure(Stage::HamPath, "no Hamiltonian path on the rest");
  const std::vector<Vertex> path = relabel(*local, keep);
  fail.path = path;

  // Stage 5: absorb the path, trying both directions.
  t0 = Clock::now();
  std::optional<DirectedCycle> whole;
  for (bool flip : {false, true}) {
    DirectedPath p{path};
    if (flip) std::reverse(p.vertices.begin(), p.vertices.end());
    try {
      whole = absorb_path(g, ac, p);
      break;
    } catch (const AbsorptionError&) {
    }
  }
  res.timings_ms.emplace_back("absorb", ms_since(t0));
  if (!whole) return finish_failure(Stage::Absorb, "no family member absorbs the path");

  Certificate cert;
  cert.kind = CertificateKind::HamCycle;
  cert.cycles = {whole->vertices};
  cert = verify_certificate(g, cert);
  if (!cert.verdict.valid) throw std::logic_error("pipeline produced an invalid Hamiltonian cycle");
  res.certificate = std::move(cert);
  return res;
}

ConstantsReport check_constants(double eps) {
  if (!(eps > 0.0 && eps < 0.25)) throw std::domain_error("eps must lie in (0, 1/4)");
  ConstantsReport r;
  r.eps = eps;
  const double e_inv2 = 1.0 / (eps * eps);
  r.log10_gamma = -5.0 * std::log10(2.0) + (4.0 * e_inv2 + 2.0) * std::log10(eps);
  r.gamma = std::pow(10.0, r.log10_gamma);
  r.eps_prime = (2.0 * eps - r.gamma) / (2.0 - 2.0 * r.gamma);
  r.ifar_cap = static_cast<std::size_t>(std::floor(2.0 * e_inv2 + 1e-9));
  r.log10_cycle_fraction = r.log10_gamma;
  r.family_fraction = std::pow(2.0, -7.0) * eps * eps;

  auto depth = [](double e) {
    return static_cast<std::size_t>(std::ceil(1.0 / std::log2(1.0 + e)));
  };
  r.rotation_depth_cap = depth(eps) + 1;
  auto n0 = [&](double e) {
    return static_cast<std::size_t>(std::ceil(11.0 / e * static_cast<double>(depth(e) + 3)));
  };
  auto n1 = [&](double e) {
    const auto a = static_cast<std::size_t>(std::ceil(1000.0 / (e * std::log2(1.0 + e))));
    return std::max(a, n0(e));
  };
  r.rotation_n0 = n0(eps);
  r.two_factor_n1 = n1(eps);
  r.two_factor_n1_eps_prime = n1(r.eps_prime);
  return r;
}

}  // namespace pchc
