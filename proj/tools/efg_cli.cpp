// Command-line front end: game generation, solving, verification, timing
// benchmarks, and the restricted-game growth loop.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "efg/bargain.hpp"
#include "efg/generators.hpp"
#include "efg/io.hpp"
#include "efg/psro.hpp"
#include "efg/solver.hpp"
#include "efg/values.hpp"
#include "efg/verify.hpp"

namespace {

using namespace efg;

int log_level() {
  static const int level = [] {
    const char* env = std::getenv("EFG_LOG");
    if (!env) return 1;
    const std::string v = env;
    if (v == "error") return 0;
    if (v == "debug") return 2;
    return 1;  // info
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[info] " << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (log_level() >= 2) std::cerr << "[debug] " << msg << "\n";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw GameError("cannot write " + path);
  out << text;
}

Game load_true_game(const std::string& spec) {
  // "gengoof:4", "private-gengoof:3", or a path to a serialized game.
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string kind = spec.substr(0, colon);
    GenGoofParams params;
    params.k = std::stoi(spec.substr(colon + 1));
    if (kind == "gengoof") return gen_goof(params);
    if (kind == "private-gengoof") return private_gen_goof(params);
  }
  return load_game(spec);
}

Assessment assessment_from_result(const Game& game, Algorithm alg,
                                  const SolveConfig& cfg, IterationLog* log) {
  if (alg == Algorithm::CFR) {
    CfrResult res = cfr(game, cfg);
    if (log) *log = std::move(res.log);
    Assessment a;
    a.beliefs = update_beliefs(game, res.average);
    a.strategy = std::move(res.average);
    return a;
  }
  PbeSolveResult res = pbe_cfr(game, cfg);
  if (log) *log = std::move(res.log);
  return std::move(res.assessment);
}

std::string checkpoint_csv(const IterationLog& log, Algorithm alg) {
  std::ostringstream out;
  out.precision(17);
  out << "t,wall_ms,"
      << (alg == Algorithm::CFR ? "exploitability" : "worst_case_local_regret")
      << ",lemma2_bound\n";
  for (const Checkpoint& cp : log.checkpoints)
    out << cp.t << ',' << cp.wall_ms << ',' << cp.metric << ','
        << cp.lemma2_bound << '\n';
  return out.str();
}

struct BenchRow {
  std::string generator;
  int k = 0;
  std::uint64_t seed = 0;
  int iters = 0;
  std::string alg;
  int infosets = 0;
  double wall_ms = 0.0;
  double regret = 0.0;
  std::string status = "ok";
};

int run_bench(const std::string& generator, int k, double u_max, int count,
              std::uint64_t seed_base, const std::vector<int>& iters_list,
              int jobs, const std::string& out_path) {
  struct Job {
    std::uint64_t seed;
    int iters;
    Algorithm alg;
  };
  std::vector<Job> todo;
  for (int i = 0; i < count; ++i)
    for (int iters : iters_list)
      for (Algorithm alg : {Algorithm::CFR, Algorithm::BelievedRegretCFR})
        todo.push_back({seed_base + static_cast<std::uint64_t>(i), iters, alg});

  std::vector<BenchRow> rows(todo.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= todo.size()) return;
      const Job& job = todo[idx];
      BenchRow& row = rows[idx];
      row.generator = generator;
      row.k = k;
      row.seed = job.seed;
      row.iters = job.iters;
      row.alg = job.alg == Algorithm::CFR ? "cfr" : "pbe-cfr";
      try {
        GenGoofParams params;
        params.k = k;
        params.u_max = u_max;
        params.seed = job.seed;
        const Game game = generator == "private-gengoof" ? private_gen_goof(params)
                                                         : gen_goof(params);
        row.infosets = game.num_infosets();
        SolveConfig cfg;
        cfg.iterations = job.iters;
        cfg.algorithm = job.alg;
        const auto start = std::chrono::steady_clock::now();
        Assessment a = assessment_from_result(game, job.alg, cfg, nullptr);
        row.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        row.regret = job.alg == Algorithm::CFR
                         ? profile_regret(game, a.strategy).total
                         : worst_case_local_regret(game, a);
      } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::max(1, jobs); ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::ostringstream csv;
  csv.precision(17);
  csv << "generator,k,seed,iters,alg,infosets,wall_ms,regret,status\n";
  for (const BenchRow& r : rows)
    csv << r.generator << ',' << r.k << ',' << r.seed << ',' << r.iters << ','
        << r.alg << ',' << r.infosets << ',' << r.wall_ms << ',' << r.regret
        << ',' << r.status << '\n';
  if (out_path.empty())
    std::cout << csv.str();
  else
    write_text(out_path, csv.str());

  // Mean wall time and regret per (algorithm, iteration count).
  for (int iters : iters_list)
    for (const char* alg : {"cfr", "pbe-cfr"}) {
      double wall = 0, regret = 0;
      int n = 0;
      for (const BenchRow& r : rows)
        if (r.iters == iters && r.alg == alg && r.status == "ok") {
          wall += r.wall_ms;
          regret += r.regret;
          ++n;
        }
      if (n > 0)
        log_info("mean " + std::string(alg) + " T=" + std::to_string(iters) +
                 ": wall_ms=" + std::to_string(wall / n) +
                 " regret=" + std::to_string(regret / n) + " over " +
                 std::to_string(n) + " runs");
    }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extensive-form game solver and verification toolkit"};
  app.require_subcommand(1);

  // ---- gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate a game and write it as JSON");
  gen->require_subcommand(1);
  struct {
    int k = 4;
    double u_max = 10.0;
    std::uint64_t seed = 0;
    std::string out;
  } gen_opts;
  auto add_goof_flags = [&](CLI::App* cmd) {
    cmd->add_option("--k", gen_opts.k, "Outcomes per round");
    cmd->add_option("--umax", gen_opts.u_max, "Per-round reward cap");
    cmd->add_option("--seed", gen_opts.seed, "Generator seed");
    cmd->add_option("--out", gen_opts.out, "Output path")->required();
  };
  auto* gen_goof_cmd = gen->add_subcommand("gengoof", "Public-action variant");
  add_goof_flags(gen_goof_cmd);
  auto* gen_priv_cmd = gen->add_subcommand("private-gengoof", "Private-action variant");
  add_goof_flags(gen_priv_cmd);

  struct {
    std::string preset = "paper";
    std::uint64_t seed = 0;
    std::string out;
    bool explicit_tree = false;
  } bargain_opts;
  auto* gen_bargain_cmd = gen->add_subcommand("bargain", "Bargaining instance");
  gen_bargain_cmd->add_option("--preset", bargain_opts.preset, "Parameter preset")
      ->check(CLI::IsMember({"paper"}));
  gen_bargain_cmd->add_option("--seed", bargain_opts.seed, "Instance seed");
  gen_bargain_cmd->add_option("--out", bargain_opts.out, "Output path")->required();
  gen_bargain_cmd->add_flag("--explicit", bargain_opts.explicit_tree,
                            "Export the explicit tree (small instances only)");

  // ---- solve --------------------------------------------------------------
  struct {
    std::string game, alg = "pbe-cfr", out, log;
    int iters = 1000, checkpoint_every = 0;
    std::uint64_t seed = 0;
  } solve_opts;
  auto* solve = app.add_subcommand("solve", "Run a solver on a game file");
  solve->add_option("--game", solve_opts.game, "Game JSON path")->required();
  solve->add_option("--alg", solve_opts.alg, "Algorithm")
      ->check(CLI::IsMember({"cfr", "pbe-cfr"}));
  solve->add_option("--iters", solve_opts.iters, "Iterations");
  solve->add_option("--seed", solve_opts.seed, "Seed (provenance)");
  solve->add_option("--checkpoint-every", solve_opts.checkpoint_every,
                    "Checkpoint interval in iterations");
  solve->add_option("--out", solve_opts.out, "Assessment output path");
  solve->add_option("--log", solve_opts.log, "Checkpoint CSV path");

  // ---- verify -------------------------------------------------------------
  struct {
    std::string game, assessment;
    double tol = kVerifyTol;
  } verify_opts;
  auto* verify = app.add_subcommand("verify", "Check an assessment against a game");
  verify->add_option("--game", verify_opts.game, "Game JSON path")->required();
  verify->add_option("--assessment", verify_opts.assessment, "Assessment JSON path")
      ->required();
  verify->add_option("--tol", verify_opts.tol, "Numeric tolerance");

  // ---- bench --------------------------------------------------------------
  struct {
    std::string generator = "gengoof", out;
    int k = 3, count = 10, jobs = 1;
    double u_max = 10.0;
    std::uint64_t seed_base = 0;
    std::vector<int> iters{500};
  } bench_opts;
  auto* bench = app.add_subcommand("bench", "Time and score both solvers on a suite");
  bench->add_option("--gen", bench_opts.generator, "Generator")
      ->check(CLI::IsMember({"gengoof", "private-gengoof"}));
  bench->add_option("--k", bench_opts.k, "Outcomes per round");
  bench->add_option("--umax", bench_opts.u_max, "Per-round reward cap");
  bench->add_option("--count", bench_opts.count, "Instance count");
  bench->add_option("--seed-base", bench_opts.seed_base, "First instance seed");
  bench->add_option("--iters", bench_opts.iters, "Iteration counts (repeatable)");
  bench->add_option("--jobs", bench_opts.jobs, "Parallel worker count");
  bench->add_option("--out", bench_opts.out, "CSV output path (default stdout)");

  // ---- psro ---------------------------------------------------------------
  struct {
    std::string true_game, mss = "ne", log;
    int growth = 2, epochs = 30, iters = 500, eval_iters = 0;
    double temperature = 1.0;
    std::uint64_t seed = 0;
  } psro_opts;
  auto* psro = app.add_subcommand("psro", "Restricted-game growth loop");
  psro->add_option("--true-game", psro_opts.true_game,
                   "gengoof:K, private-gengoof:K, or a game JSON path")
      ->required();
  psro->add_option("--mss", psro_opts.mss, "Meta-strategy solver")
      ->check(CLI::IsMember({"ne", "pbe"}));
  psro->add_option("--growth", psro_opts.growth, "Infosets expanded per epoch");
  psro->add_option("--epochs", psro_opts.epochs, "Epoch count");
  psro->add_option("--iters", psro_opts.iters, "Solver iterations per epoch");
  psro->add_option("--eval-iters", psro_opts.eval_iters,
                   "EVAL solver iterations (0 = same as --iters)");
  psro->add_option("--temperature", psro_opts.temperature, "Softmax temperature");
  psro->add_option("--seed", psro_opts.seed, "Seed");
  psro->add_option("--log", psro_opts.log, "Epoch CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen_goof_cmd->parsed() || gen_priv_cmd->parsed()) {
      GenGoofParams params;
      params.k = gen_opts.k;
      params.u_max = gen_opts.u_max;
      params.seed = gen_opts.seed;
      const Game game =
          gen_goof_cmd->parsed() ? gen_goof(params) : private_gen_goof(params);
      save_game(game, gen_opts.out);
      log_info("wrote " + gen_opts.out + " (" + std::to_string(game.num_nodes()) +
               " nodes, " + std::to_string(game.num_infosets()) + " infosets)");
      return 0;
    }
    if (gen_bargain_cmd->parsed()) {
      const BargainParams params = bargain_paper_preset(bargain_opts.seed);
      if (bargain_opts.explicit_tree) {
        save_game(bargain_explicit_game(params), bargain_opts.out);
        return 0;
      }
      // The full-scale tree is far too large to expand; emit the sampled
      // instance description instead.
      Json doc;
      doc["preset"] = bargain_opts.preset;
      doc["seed"] = bargain_opts.seed;
      doc["types"] = params.types;
      doc["pool"] = std::vector<int>(params.pool.data(),
                                     params.pool.data() + params.pool.size());
      doc["total_value"] = params.total_value;
      doc["signal_threshold"] = params.signal_threshold;
      doc["discount"] = params.discount;
      doc["rounds"] = params.rounds;
      write_text(bargain_opts.out, doc.dump(2) + "\n");
      log_info("wrote " + bargain_opts.out);
      return 0;
    }
    if (solve->parsed()) {
      const Game game = load_game(solve_opts.game);
      SolveConfig cfg;
      cfg.iterations = solve_opts.iters;
      cfg.seed = solve_opts.seed;
      cfg.checkpoint_every = solve_opts.checkpoint_every;
      cfg.algorithm =
          solve_opts.alg == "cfr" ? Algorithm::CFR : Algorithm::BelievedRegretCFR;
      IterationLog log;
      log_debug("solving " + solve_opts.game + " with " + solve_opts.alg);
      Assessment a = assessment_from_result(game, cfg.algorithm, cfg, &log);
      if (!solve_opts.out.empty()) save_assessment(game, a, solve_opts.out);
      if (!solve_opts.log.empty())
        write_text(solve_opts.log, checkpoint_csv(log, cfg.algorithm));
      if (solve_opts.out.empty() && solve_opts.log.empty())
        std::cout << assessment_to_json(game, a).dump(2) << "\n";
      return 0;
    }
    if (verify->parsed()) {
      const Game game = load_game(verify_opts.game);
      const Assessment a = load_assessment(game, verify_opts.assessment);
      const PbeReport report = is_pbe(game, a, verify_opts.tol);
      std::cout << pbe_report_json(report).dump(2) << "\n";
      return report.pass ? 0 : 1;
    }
    if (bench->parsed()) {
      return run_bench(bench_opts.generator, bench_opts.k, bench_opts.u_max,
                       bench_opts.count, bench_opts.seed_base, bench_opts.iters,
                       bench_opts.jobs, bench_opts.out);
    }
    if (psro->parsed()) {
      const Game game = load_true_game(psro_opts.true_game);
      PsroConfig cfg;
      cfg.mss = psro_opts.mss == "ne" ? Algorithm::CFR : Algorithm::BelievedRegretCFR;
      cfg.growth = psro_opts.growth;
      cfg.epochs = psro_opts.epochs;
      cfg.iterations = psro_opts.iters;
      cfg.eval_iterations = psro_opts.eval_iters;
      cfg.temperature = psro_opts.temperature;
      cfg.seed = psro_opts.seed;
      const PsroResult res = run_psro(game, cfg);
      std::ostringstream csv;
      csv.precision(17);
      csv << "epoch,empirical_nodes,eval_regret\n";
      for (const PsroEpoch& e : res.epochs)
        csv << e.epoch << ',' << e.empirical_nodes << ',' << e.eval_regret << '\n';
      if (psro_opts.log.empty())
        std::cout << csv.str();
      else
        write_text(psro_opts.log, csv.str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
