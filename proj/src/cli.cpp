#include "pchc/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pchc/absorbing.hpp"
#include "pchc/constructions.hpp"
#include "pchc/exact.hpp"
#include "pchc/harness.hpp"
#include "pchc/io.hpp"
#include "pchc/pipeline.hpp"
#include "pchc/rotations.hpp"

namespace pchc {

using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : UsageError {
  using UsageError::UsageError;
};

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void emit(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << j.dump(2) << '\n';
}

ColouredComplete load(const std::string& path) {
  try {
    return read_graph_file(path);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + e.what());
  }
}

ColouredComplete random_oriented(std::size_t n, double density, std::uint64_t seed,
                                 CompletionPolicy policy) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution arc(density), flip(0.5);
  OrientedGraph og(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (!arc(rng)) continue;
      if (flip(rng)) {
        og.add_arc(u, v);
      } else {
        og.add_arc(v, u);
      }
    }
  }
  return complete_with(from_oriented(og), policy);
}

json report_base(const std::vector<std::string>& args, const ColouredComplete& g,
                 std::uint64_t seed) {
  std::string echo;
  for (const auto& a : args) echo += (echo.empty() ? "" : " ") + a;
  return {{"command", echo}, {"seed", seed}, {"instance", instance_metadata(g)}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Properly coloured cycles in edge-coloured complete graphs", "pchc"};
  app.require_subcommand(1);
  int code = kOk;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a coloured complete graph");
  std::string family, out_path, policy = "fresh";
  std::size_t k = 1, m = 2, n = 10, l = 1, dmax = 4, palette = 0;
  double density = 0.5;
  std::uint64_t seed = 1;
  gen->add_option("--family", family)->required()->check(
      CLI::IsMember({"be", "oriented", "t2m", "layered", "random"}));
  gen->add_option("--k", k, "bollobas-erdos parameter");
  gen->add_option("--m", m, "tournament parameter");
  gen->add_option("--n", n, "order");
  gen->add_option("--l", l, "layered X size");
  gen->add_option("--dmax", dmax, "monochromatic degree cap");
  gen->add_option("--palette", palette, "number of colours (random; 0 = default)");
  gen->add_option("--density", density, "arc probability (oriented)");
  gen->add_option("--policy", policy, "completion of non-arcs")->check(CLI::IsMember({"fresh", "single"}));
  gen->add_option("--seed", seed);
  gen->add_option("--out", out_path);

  // verify
  auto* verify = app.add_subcommand("verify", "Check a certificate against a graph");
  std::string input, cert_path;
  verify->add_option("--input", input)->required();
  verify->add_option("--cert", cert_path)->required();

  // solve
  auto* solve = app.add_subcommand("solve", "2-factor by rotations or the full pipeline");
  std::string method = "pipeline", fallback = "none", report_path;
  std::size_t spread = 5;
  double eps = 0.1;
  solve->add_option("--method", method)->check(CLI::IsMember({"rotation", "pipeline"}));
  solve->add_option("--input", input)->required();
  solve->add_option("--seed", seed);
  solve->add_option("--spread", spread);
  solve->add_option("--eps", eps);
  solve->add_option("--fallback", fallback)->check(CLI::IsMember({"none", "exact"}));
  solve->add_option("--report", report_path);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact search");
  std::string query;
  std::uint64_t budget_nodes = 0;
  oracle->add_option("--query", query)->required()->check(
      CLI::IsMember({"hamcycle", "hampath", "twofactor", "longest-cycle", "longest-path"}));
  oracle->add_option("--input", input)->required();
  oracle->add_option("--budget-nodes", budget_nodes);
  oracle->add_option("--report", report_path);

  // absorb-check
  auto* absorb = app.add_subcommand("absorb-check", "Absorbing path counts and an absorbing cycle");
  std::string quads = "sample:50";
  absorb->add_option("--input", input)->required();
  absorb->add_option("--eps", eps);
  absorb->add_option("--quads", quads);
  absorb->add_option("--seed", seed);
  absorb->add_option("--report", report_path);

  // lemma-check
  auto* lemma = app.add_subcommand("lemma-check", "Property suite for one lemma");
  std::string lemma_name;
  LemmaParams lp;
  std::size_t lp_dmax = 0, lp_palette = 0;
  lemma->add_option("--lemma", lemma_name)->required()->check(CLI::IsMember(lemma_names()));
  lemma->add_option("--n", lp.n);
  lemma->add_option("--eps", lp.eps);
  lemma->add_option("--seeds", lp.seeds);
  lemma->add_option("--first-seed", lp.first_seed);
  lemma->add_option("--dmax", lp_dmax, "0 = floor((1/2 - eps) n)");
  lemma->add_option("--palette", lp_palette);
  lemma->add_option("--quads", lp.quads);
  lemma->add_option("--trials", lp.trials);
  lemma->add_option("--jobs", lp.jobs);
  lemma->add_option("--report", report_path);

  // constants
  auto* constants = app.add_subcommand("constants", "Constants of the proof at a given eps");
  constants->add_option("--eps", eps)->required();

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*gen) {
      ColouredComplete g = ColouredComplete::monochromatic(3);
      if (family == "be") {
        g = bollobas_erdos(k);
      } else if (family == "oriented") {
        g = random_oriented(n, density, seed,
                            policy == "single" ? CompletionPolicy::SingleExtra
                                               : CompletionPolicy::FreshRainbow);
      } else if (family == "t2m") {
        g = complete_with(from_oriented(tournament_t2m(m)), CompletionPolicy::FreshRainbow);
      } else if (family == "layered") {
        g = layered_xy(n, l);
      } else {
        g = random_bounded_mono(n, dmax, seed,
                                palette ? std::optional<std::size_t>(palette) : std::nullopt);
      }
      if (out_path.empty()) {
        write_graph(out, g);
      } else {
        write_graph_file(out_path, g);
      }
      return kOk;
    }

    if (*verify) {
      const ColouredComplete g = load(input);
      std::ifstream f(cert_path);
      if (!f) throw UsageError("cannot read " + cert_path);
      json j;
      try {
        j = json::parse(f);
      } catch (const json::parse_error& e) {
        throw InputError(cert_path + ": " + e.what());
      }
      Certificate cert = verify_certificate(g, certificate_from_json(j));
      out << to_json(cert).dump(2) << '\n';
      return cert.verdict.valid ? kOk : kNo;
    }

    if (*solve) {
      const ColouredComplete g = load(input);
      json rep = report_base(args, g, seed);
      const auto t0 = std::chrono::steady_clock::now();
      if (method == "rotation") {
        TwoFactorConfig cfg;
        cfg.seed = seed;
        cfg.spread_distance = spread;
        if (g.order() < 3) throw UsageError("rotation method needs n >= 3");
        TwoFactorResult r = find_pc_two_factor(g, cfg);
        rep["timings_ms"] = {{"two-factor", ms_since(t0)}};
        rep["stats"] = {{"rotations", r.stats.rotations},
                        {"restarts", r.stats.restarts_used},
                        {"closures", r.stats.closures},
                        {"spread_closures", r.stats.spread_closures},
                        {"fallback_closures", r.stats.fallback_closures},
                        {"z_layer_sizes", r.stats.z_layer_sizes}};
        if (r.success) {
          rep["certificate"] = to_json(r.certificate);
        } else {
          rep["failure"] = {{"stage", "two-factor"}, {"largest_system", r.largest.size()}};
        }
        code = r.success ? kOk : kNo;
      } else {
        if (g.order() < 8) throw UsageError("pipeline needs n >= 8");
        PipelineConfig cfg;
        cfg.eps = eps;
        cfg.seed = seed;
        cfg.two_factor.spread_distance = spread;
        cfg.fallback = parse_fallback(fallback);
        PipelineResult r = run_pipeline(g, cfg);
        json timings = json::object();
        for (const auto& [stage, t] : r.timings_ms) timings[stage] = t;
        rep["timings_ms"] = timings;
        if (r.failure) {
          json f{{"stage", to_string(r.failure->stage)},
                 {"stage_index", static_cast<int>(r.failure->stage)},
                 {"message", r.failure->message}};
          if (r.failure->cycle) f["absorbing_cycle"] = r.failure->cycle->cycle.vertices;
          if (r.failure->two_factor) f["two_factor"] = r.failure->two_factor->cycles;
          if (r.failure->path) f["path"] = *r.failure->path;
          rep["failure"] = f;
        }
        if (r.fallback) rep["fallback"] = {{"status", to_string(r.fallback->status)}, {"nodes", r.fallback->nodes}};
        if (r.certificate) rep["certificate"] = to_json(*r.certificate);
        if (!r.ham_path_method.empty()) rep["ham_path_method"] = r.ham_path_method;
        rep["verdict"] = to_string(r.verdict());
        code = r.verdict() == SearchStatus::Found ? kOk : kNo;
      }
      emit(rep, report_path, out);
      return code;
    }

    if (*oracle) {
      const ColouredComplete g = load(input);
      SearchBudget budget = SearchBudget::defaults();
      if (budget_nodes) budget.node_limit = budget_nodes;
      json rep = report_base(args, g, 0);
      rep.erase("seed");
      rep["query"] = query;
      const auto t0 = std::chrono::steady_clock::now();
      if (query == "longest-cycle" || query == "longest-path") {
        if (g.order() < (query == "longest-cycle" ? 3u : 2u)) throw UsageError("graph too small");
        LongestResult r = query == "longest-cycle" ? longest_pc_cycle(g, budget) : longest_pc_path(g, budget);
        rep["value"] = r.value;
        rep["witness"] = r.witness;
        rep["exhaustive"] = r.exhaustive;
        rep["nodes"] = r.nodes;
        code = r.exhaustive && r.value > 0 ? kOk : kNo;
      } else {
        const std::size_t need = query == "hampath" ? 2 : 3;
        if (g.order() < need || g.order() > 32) throw UsageError("exact search needs n in [" + std::to_string(need) + ", 32]");
        SearchResult r = query == "hamcycle"   ? exact_pc_ham_cycle(g, budget)
                         : query == "hampath" ? exact_pc_ham_path(g, budget)
                                              : exact_pc_two_factor(g, budget);
        rep["status"] = to_string(r.status);
        rep["nodes"] = r.nodes;
        if (r.status == SearchStatus::Found) rep["certificate"] = to_json(r.certificate);
        code = r.status == SearchStatus::Found ? kOk : kNo;
      }
      rep["timings_ms"] = {{"search", ms_since(t0)}};
      emit(rep, report_path, out);
      return code;
    }

    if (*absorb) {
      const ColouredComplete g = load(input);
      if (g.order() < 9) throw UsageError("absorb-check needs n >= 9");
      json rep = report_base(args, g, seed);
      const std::size_t nn = g.order();
      const double bound = eps * eps * std::pow(static_cast<double>(nn), 4) / 4.0;
      std::vector<Quad> qs;
      if (quads == "all") {
        for (Vertex a = 0; a < nn; ++a)
          for (Vertex b = 0; b < nn; ++b)
            for (Vertex c = 0; c < nn; ++c)
              for (Vertex d = 0; d < nn; ++d)
                if (a != b && a != c && a != d && b != c && b != d && c != d) qs.push_back({a, b, c, d});
      } else if (quads.rfind("sample:", 0) == 0) {
        std::size_t count = 0;
        try {
          count = std::stoul(quads.substr(7));
        } catch (const std::exception&) {
          throw UsageError("--quads expects all or sample:N");
        }
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(nn - 1));
        for (std::size_t t = 0; t < count; ++t) {
          Quad q{};
          for (int i = 0; i < 4; ++i) {
            do {
              q[i] = pick(rng);
            } while (std::find(q.begin(), q.begin() + i, q[i]) != q.begin() + i);
          }
          qs.push_back(q);
        }
      } else {
        throw UsageError("--quads expects all or sample:N");
      }
      json per_quad = json::array();
      std::size_t violations = 0;
      std::uint64_t min_count = UINT64_MAX;
      for (const Quad& q : qs) {
        const std::uint64_t c = count_absorbing(g, q);
        min_count = std::min(min_count, c);
        if (static_cast<double>(c) < bound) ++violations;
        per_quad.push_back({{"quad", q}, {"count", c}});
      }
      rep["quads"] = per_quad;
      rep["bound"] = bound;
      rep["min_count"] = qs.empty() ? json(nullptr) : json(min_count);
      rep["violations"] = violations;
      CycleParams cp;
      cp.family.seed = seed;
      cp.family.target_size = 6;
      const auto t0 = std::chrono::steady_clock::now();
      CycleResult built = build_absorbing_cycle(g, cp);
      rep["timings_ms"] = {{"absorbing-cycle", ms_since(t0)}};
      if (built.cycle) {
        rep["cycle_order"] = built.cycle->cycle.vertices.size();
        rep["family_size"] = built.cycle->family.size();
        rep["coverage"] = built.cycle->coverage.fraction();
        rep["coverage_exhaustive"] = built.cycle->coverage.exhaustive;
      } else {
        rep["cycle_order"] = nullptr;
        rep["coverage"] = 0.0;
        rep["cycle_failure"] = std::string(to_string(built.failed_stage)) + ": " + built.message;
      }
      emit(rep, report_path, out);
      return violations == 0 ? kOk : kNo;
    }

    if (*lemma) {
      if (lp_dmax) lp.dmax = lp_dmax;
      if (lp_palette) lp.palette = lp_palette;
      json rep = lemma_check(lemma_name, lp);
      std::string echo;
      for (const auto& a : args) echo += (echo.empty() ? "" : " ") + a;
      rep["command"] = echo;
      emit(rep, report_path, out);
      return rep["pass"].get<bool>() ? kOk : kNo;
    }

    if (*constants) {
      const ConstantsReport r = check_constants(eps);
      json rep{{"eps", r.eps},
               {"gamma", r.gamma},
               {"log10_gamma", r.log10_gamma},
               {"eps_prime", r.eps_prime},
               {"ifar_cap", r.ifar_cap},
               {"rotation_depth_cap", r.rotation_depth_cap},
               {"log10_cycle_fraction", r.log10_cycle_fraction},
               {"family_fraction", r.family_fraction},
               {"rotation_n0", r.rotation_n0},
               {"two_factor_n1", r.two_factor_n1},
               {"two_factor_n1_eps_prime", r.two_factor_n1_eps_prime},
               {"abscycle_n0", r.abscycle_n0}};
      out << rep.dump(2) << '\n';
      return kOk;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const GenerationError& e) {
    err << "generation failed: " << e.what() << '\n';
    return kNo;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return kNo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return code;
}

}  // namespace pchc
