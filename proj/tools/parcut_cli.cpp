#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "parcut/json_io.hpp"
#include "parcut/lp_rounding.hpp"
#include "parcut/oracle.hpp"
#include "parcut/pipelines.hpp"
#include "parcut/sample_sets.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace parcut;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoSuchSet = 2;
constexpr int kExitRandomizedFailure = 3;

struct CommonOpts {
  std::string input;
  std::string output;
  std::uint64_t seed = 1;
  int threads = 0;
  bool verify = false;
};

void add_common(CLI::App *cmd, CommonOpts &opts, bool needs_input = true) {
  if (needs_input) cmd->add_option("input", opts.input, "graph file")->required();
  cmd->add_option("--out", opts.output, "output path (default stdout)");
  cmd->add_option("--seed", opts.seed, "random seed (recorded in output)");
  cmd->add_option("--threads", opts.threads, "worker threads (0 = default)");
  cmd->add_flag("--verify", opts.verify, "cross-check against the oracle when size permits");
}

void apply_threads(int threads) {
  if (threads == 0) {
    if (const char *env = std::getenv("PARCUT_THREADS")) threads = std::atoi(env);
  }
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

void emit(const CommonOpts &opts, const io::Json &j) {
  std::string text = io::dump(j);
  if (opts.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opts.output, std::ios::binary);
    if (!out) throw GraphError("cannot open output file: " + opts.output);
    out << text;
  }
}

using io::Json;

int status_code(pipe::Status s) {
  switch (s) {
    case pipe::Status::Found: return kExitOk;
    case pipe::Status::NoSuchSet: return kExitNoSuchSet;
    case pipe::Status::RandomizedFailure: return kExitRandomizedFailure;
  }
  return kExitUsage;
}

// oracle cross-check annotations, size permitting
void attach_verification(io::Json &j, const Graph &g, const pipe::ApproxResult &res,
                         bool vertex_problem) {
  oracle::Limits lim;
  if ((vertex_problem && g.n > lim.max_n_vertex) || (!vertex_problem && g.n > lim.max_n_edge)) {
    j["verification"] = Json{{"skipped", "graph above oracle size bound"}};
    std::cerr << "warning: --verify disabled, graph above oracle size bound\n";
    return;
  }
  io::Json v;
  if (vertex_problem) {
    auto opt = oracle::exact_vertex_sparsest(g);
    if (!opt) {
      v["oracle"] = "no vertex cut exists";
      v["consistent"] = res.status == pipe::Status::NoSuchSet;
    } else {
      v["oracle_optimum"] = rat_str(opt->optimum);
      v["consistent"] =
          res.status == pipe::Status::Found && res.vertex_cut.sparsity >= opt->optimum;
    }
  } else {
    auto opt = oracle::exact_sparsest_cut(g);
    v["oracle_optimum"] = rat_str(opt.optimum);
    v["consistent"] = res.status != pipe::Status::Found || res.cut.sparsity >= opt.optimum;
  }
  j["verification"] = v;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"parametric sparse-cut toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  ParamSet params;

  // pipeline parameter overrides shared by the solver subcommands
  std::string phi_str = "1/4", tau_str = "1/4", rho_str = "1/2";
  long long s_param = 1;
  std::string mode = "sparsest";
  std::string gen_type = "dumbbell";
  std::vector<long long> gen_args;
  double gen_p = 0.5, gen_q = 0.1;
  bool game_vertex = false;
  std::string eps_str = "1/100";
  long long kmax = 3;

  auto *sse = app.add_subcommand("sse", "small set expansion via sample sets and LP rounding");
  add_common(sse, opts);
  sse->add_option("--phi", phi_str, "target sparsity (p/q)")->required();
  sse->add_option("--s", s_param, "size bound")->required();

  auto *sparsest = app.add_subcommand("sparsest-cut", "sparsest cut via the cut-matching game");
  add_common(sparsest, opts);

  auto *vsparse = app.add_subcommand("vertex-sparsest", "vertex sparsest cut via LP rounding");
  add_common(vsparse, opts);

  auto *vgame =
      app.add_subcommand("vertex-sparsest-game", "vertex sparsest cut via the cut-matching game");
  add_common(vgame, opts);

  auto *unbalanced = app.add_subcommand("unbalanced", "weighted unbalanced cut");
  add_common(unbalanced, opts);
  unbalanced->add_option("--tau", tau_str, "demand fraction (p/q)");
  unbalanced->add_option("--rho", rho_str, "size fraction (p/q)");

  auto *game = app.add_subcommand("game", "run the cut-matching game directly");
  add_common(game, opts);
  std::string trace_path;
  game->add_option("--phi", phi_str, "sparsity target (p/q)")->required();
  game->add_option("--s", s_param, "small-set size")->required();
  game->add_flag("--vertex", game_vertex, "vertex variant");
  game->add_option("--trace", trace_path, "write the round-by-round trace as JSON lines");

  auto *orc = app.add_subcommand("oracle", "exhaustive ground truth");
  add_common(orc, opts);
  orc->add_option("--mode", mode, "sparsest | sse | vertex | ssve");
  orc->add_option("--s", s_param, "size bound for sse/ssve");

  auto *vss = app.add_subcommand("verify-sample-set", "check the sample condition exhaustively");
  add_common(vss, opts);
  vss->add_option("--eps", eps_str, "precision (p/q)");
  vss->add_option("--phi", phi_str, "sparsity parameter (p/q)")->required();
  vss->add_option("--kmax", kmax, "cut budget for the family");

  auto *gen = app.add_subcommand("gen", "instance generators");
  gen->add_option("--type", gen_type,
                  "dumbbell | path | star | grid | complete | planted | regular | incidence")
      ->required();
  gen->add_option("--args", gen_args, "integer size arguments");
  gen->add_option("--p", gen_p, "edge probability (planted)");
  gen->add_option("--q", gen_q, "cross probability (planted)");
  add_common(gen, opts, false);

  for (CLI::App *cmd : {sse, sparsest, vsparse, vgame, unbalanced, game}) {
    cmd->add_option("--retries", params.retries, "fresh seeds on randomized failure");
    cmd->add_option("--rho-const", params.rho, "flow constant rho");
    cmd->add_option("--alpha", params.alpha, "component split constant (> 2)");
    cmd->add_option("--round-budget", params.round_budget_d, "game round budget d");
    cmd->add_flag("--heuristic-cut", params.heuristic_balanced_cut,
                  "spectral balanced-cut mode");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    apply_threads(opts.threads);
    params.seed = opts.seed;
    if (!params.valid()) throw GraphError("invalid parameter overrides");

    if (gen->parsed()) {
      Graph g;
      std::uint64_t seed = opts.seed;
      auto arg = [&](size_t i, long long dflt) {
        return i < gen_args.size() ? gen_args[i] : dflt;
      };
      if (gen_type == "dumbbell")
        g = oracle::dumbbell(static_cast<int>(arg(0, 5)), static_cast<int>(arg(1, 5)));
      else if (gen_type == "path")
        g = oracle::path_graph(static_cast<int>(arg(0, 8)));
      else if (gen_type == "star")
        g = oracle::star_graph(static_cast<int>(arg(0, 8)));
      else if (gen_type == "grid")
        g = oracle::grid_graph(static_cast<int>(arg(0, 3)), static_cast<int>(arg(1, 3)));
      else if (gen_type == "complete")
        g = oracle::complete_graph(static_cast<int>(arg(0, 6)));
      else if (gen_type == "planted")
        g = oracle::planted_bisection(static_cast<int>(arg(0, 16)), gen_p, gen_q, seed);
      else if (gen_type == "regular")
        g = oracle::random_regular(static_cast<int>(arg(0, 12)), static_cast<int>(arg(1, 3)),
                                   seed);
      else if (gen_type == "incidence")
        g = oracle::incidence_graph(static_cast<int>(arg(0, 4)));
      else
        throw GraphError("unknown generator type: " + gen_type);
      std::string text = serialize_graph(g);
      if (opts.output.empty())
        std::cout << text;
      else {
        std::ofstream out(opts.output, std::ios::binary);
        out << text;
      }
      return kExitOk;
    }

    Graph g = parse_graph_file(opts.input);

    if (orc->parsed()) {
      Json j;
      j["seed"] = opts.seed;
      if (mode == "sparsest") {
        j["mode"] = mode;
        j["answer"] = io::to_json(oracle::exact_sparsest_cut(g, {}, opts.threads));
      } else if (mode == "sse") {
        j["mode"] = mode;
        j["answer"] = io::to_json(oracle::exact_sse(g, s_param, {}, opts.threads));
      } else if (mode == "vertex") {
        j["mode"] = mode;
        auto a = oracle::exact_vertex_sparsest(g);
        if (a)
          j["answer"] = io::to_json(*a);
        else
          j["answer"] = Json{{"no_vertex_cut", true}};
      } else if (mode == "ssve") {
        j["mode"] = mode;
        auto a = oracle::exact_ssve(g, s_param);
        if (a)
          j["answer"] = io::to_json(*a);
        else
          j["answer"] = Json{{"no_vertex_cut", true}};
      } else {
        throw GraphError("unknown oracle mode: " + mode);
      }
      emit(opts, j);
      return kExitOk;
    }

    if (game->parsed()) {
      VSet t = g.terminals.empty() ? vset_complement(g.n, {}) : g.terminals;
      auto res = cm::run_game(g, t, parse_rat(phi_str), s_param, params,
                              game_vertex ? cm::GameKind::Vertex : cm::GameKind::Edge);
      Json j = io::to_json(res);
      j["seed"] = opts.seed;
      if (!trace_path.empty()) {
        std::ofstream tr(trace_path, std::ios::binary);
        if (!tr) throw GraphError("cannot open trace file: " + trace_path);
        for (const auto &line : j["trace"]) tr << line.dump() << "\n";
      }
      emit(opts, j);
      return kExitOk;
    }

    if (vss->parsed()) {
      if (g.terminals.empty()) throw GraphError("graph carries no sample set to verify");
      sample::SampleSet ss;
      ss.terminals = g.terminals;
      for (int v : g.terminals) ss.weight.push_back(g.weight_of(v));
      ss.kind = g.has_weights() ? sample::SampleKind::Weighted : sample::SampleKind::Edge;
      ss.eps = parse_rat(eps_str);
      ss.eps_effective = 4 * ss.eps;
      ss.phi = parse_rat(phi_str);
      auto fam = oracle::enumerate_sparse_family(g, ss.phi, static_cast<int>(kmax), false,
                                                 g.has_weights(), opts.threads);
      auto violations = sample::verify_sample_set(g, ss, fam);
      Json j;
      j["seed"] = opts.seed;
      j["family_size"] = fam.size();
      j["violations"] = Json::array();
      for (const auto &v : violations)
        j["violations"].push_back(Json{{"set", v.w},
                                       {"deviation", rat_str(v.lhs)},
                                       {"allowed", rat_str(v.rhs)}});
      emit(opts, j);
      return violations.empty() ? kExitOk : kExitNoSuchSet;
    }

    // pipelines
    pipe::ApproxResult res;
    bool vertex_problem = false;
    if (sse->parsed()) {
      res = pipe::sse_log_k(g, parse_rat(phi_str), s_param, params);
    } else if (sparsest->parsed()) {
      res = pipe::sparsest_cut_cut_matching(g, params);
    } else if (vsparse->parsed()) {
      res = pipe::vertex_sparsest_cut_lp(g, params);
      vertex_problem = true;
    } else if (vgame->parsed()) {
      res = pipe::vertex_sparsest_cut_cut_matching(g, params);
      vertex_problem = true;
    } else if (unbalanced->parsed()) {
      std::vector<Rat> y(g.n, Rat(1));
      if (g.has_weights())
        for (int v = 0; v < g.n; ++v) y[v] = Rat(g.weights[v]);
      res = pipe::weighted_unbalanced_cut(g, y, parse_rat(tau_str), parse_rat(rho_str), params);
    } else {
      std::cerr << "no subcommand selected\n";
      return kExitUsage;
    }
    Json j = io::to_json(res);
    if (opts.verify) attach_verification(j, g, res, vertex_problem);
    emit(opts, j);
    return status_code(res.status);
  } catch (const ParseError &e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
