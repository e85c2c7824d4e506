#pragma once

// Command-line front end. run_command takes the arguments after the program
// name and returns the process exit code: 0 decided, 1 failed check,
// 2 usage or parse error, 3 budget exceeded.

#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "copeland/io.hpp"
#include "copeland/selftest.hpp"

namespace copeland::cli {

namespace detail {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string score_table(const std::vector<std::string>& names, const std::vector<std::int64_t>& scaled,
                               const Alpha& a) {
  std::string s;
  for (std::size_t i = 0; i < names.size(); ++i)
    s += names[i] + "\t" + std::to_string(scaled[i]) + "/" + std::to_string(a.den()) + "\n";
  return s;
}

inline BigInt parse_k(const std::string& s) {
  if (!io::detail::all_digits(s)) throw UsageError("--k must be a non-negative integer");
  return BigInt(s);
}

inline BoundParameter parse_bound(const std::string& s) {
  const bool bc = s.rfind("BC_", 0) == 0, bv = s.rfind("BV_", 0) == 0;
  const auto j = s.substr(std::min<std::size_t>(3, s.size()));
  if ((!bc && !bv) || !io::detail::all_digits(j) || j.size() > 9) throw UsageError("--bound must be BC_<j> or BV_<j>");
  return {bc ? BoundParameter::Kind::BC : BoundParameter::Kind::BV, std::stoul(j)};
}

struct SolveArgs {
  std::string problem, method = "exact", alpha, election, spoilers, pool, k, p, model, goal, bound, instance;
  bool timing = false;
};

/// Fills unset fields from an instance manifest; paths resolve against its directory.
inline void apply_manifest(SolveArgs& a) {
  const fs::path path(a.instance);
  const auto m = io::parse_manifest(io::read_file(path));
  const auto dir = path.parent_path();
  auto fill = [](std::string& field, const std::string& v) {
    if (field.empty()) field = v;
  };
  fill(a.problem, m.problem);
  fill(a.alpha, m.alpha.str());
  fill(a.model, io::model_name(m.model));
  fill(a.p, m.p);
  if (m.k) fill(a.k, m.k->str());
  fill(a.election, (dir / m.election).string());
  if (m.spoilers) fill(a.spoilers, (dir / *m.spoilers).string());
  if (m.voter_pool) fill(a.pool, (dir / *m.voter_pool).string());
}

inline std::optional<std::string> goal_candidate(const GoalSpec& g) {
  if (auto s = as_standard(g)) return s->p;
  return std::nullopt;
}

inline int solve(SolveArgs a, std::ostream& out) {
  if (!a.instance.empty()) apply_manifest(a);
  if (a.problem.empty() || a.alpha.empty() || a.election.empty())
    throw UsageError("solve needs --problem, --alpha and --election (or --instance)");
  const auto alpha = Alpha::parse(a.alpha);
  const auto model = a.model.empty() ? WinnerModel::NonUnique : io::parse_model(a.model);
  const auto election = io::parse_election(io::read_file(a.election));
  std::optional<GoalSpec> goal;
  if (!a.goal.empty()) goal = io::parse_goal(a.goal);
  if (a.p.empty() && goal) a.p = goal_candidate(*goal).value_or("");
  if (a.p.empty()) throw UsageError("--p is required unless --goal names the candidate");
  const auto started = std::chrono::steady_clock::now();

  Decision d;
  std::function<bool(const Witness&)> recheck;
  const bool bribery = a.problem == "bribery" || a.problem == "destructive-bribery";
  const bool micro = a.problem == "microbribery" || a.problem == "destructive-microbribery";
  if (bribery || micro) {
    if (a.k.empty()) throw UsageError(a.problem + " needs --k");
    const auto k = parse_k(a.k);
    const bool constructive = a.problem.rfind("destructive", 0) != 0;
    const auto g = goal ? *goal : default_goal(a.p, constructive, model);
    if (a.method == "exact") {
      d = bribery ? solve_bribery_exact(election, alpha, g, k) : solve_microbribery_exact(election, alpha, g, k);
    } else if (a.method == "dp" && a.problem == "destructive-microbribery" && !goal) {
      d = destructive_microbribery_dp(election, alpha, a.p, k, model);
    } else {
      throw UsageError("method '" + a.method + "' does not apply to " + a.problem);
    }
    recheck = [&, g, k](const Witness& w) { return check_bribery_witness(election, alpha, g, k, w); };
  } else {
    ControlInstance inst;
    inst.problem = Problem::parse(a.problem);
    inst.model = model;
    inst.alpha = alpha;
    inst.election = election;
    inst.p = a.p;
    inst.goal = goal;
    if (!a.k.empty()) inst.k = parse_k(a.k);
    if (!a.spoilers.empty()) inst.spoiler_candidates = io::parse_names(io::read_file(a.spoilers));
    if (!a.pool.empty()) inst.voter_pool = io::parse_voter_pool(io::read_file(a.pool), election);
    inst.validate();
    const auto& pr = inst.problem;
    if (a.method == "exact") {
      d = solve_control_exact(inst);
    } else if (a.method == "greedy") {
      if (pr.type == ControlType::PC || pr.type == ControlType::RPC) d = destructive_partition_candidate(inst);
      else d = greedy_destructive_candidate(inst);
    } else if (a.method == "fpt") {
      const auto bound = a.bound.empty() ? BoundParameter{BoundParameter::Kind::BC, election.size()}
                                         : parse_bound(a.bound);
      d = pr.is_voter_control() ? fpt_voter_control(inst, bound) : fpt_candidate_control(inst, bound);
    } else {
      throw UsageError("method '" + a.method + "' does not apply to " + pr.code());
    }
    recheck = [inst](const Witness& w) { return check_control_witness(inst, w); };
  }

  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
  out << (d.yes ? "YES\n" : "NO\n");
  if (d.yes && d.witness) {
    if (!recheck(*d.witness)) throw std::logic_error("witness failed independent verification");
    out << io::serialize_witness(*d.witness, election.candidates());
  }
  if (a.timing) out << "elapsed: " << ms.count() << " ms\n";
  return 0;
}

inline ControlInstance reduce_instance(const std::string& to, const std::string& graph, const std::string& k,
                                       const std::string& alpha, const std::string& model, Graph& g) {
  g = io::parse_graph(io::read_file(graph));
  const auto kk = parse_k(k);
  if (kk > g.vertex_count()) throw UsageError("--k exceeds the vertex count");
  return selftest::reduce_by_name(to, g, static_cast<std::size_t>(kk), Alpha::parse(alpha),
                                  model.empty() ? WinnerModel::NonUnique : io::parse_model(model));
}

inline int reduce(const std::string& to, const std::string& graph, const std::string& k, const std::string& alpha,
                  const std::string& model, const std::string& dir, std::ostream& out) {
  Graph g;
  const auto inst = reduce_instance(to, graph, k, alpha, model, g);
  fs::create_directories(dir);
  io::Manifest m;
  m.problem = inst.problem.code();
  m.alpha = inst.alpha;
  m.model = inst.model;
  m.p = inst.p;
  m.k = inst.k;
  if (!inst.spoiler_candidates.empty() || inst.problem.needs_spoilers()) {
    m.spoilers = "spoilers.txt";
    io::write_file(fs::path(dir) / "spoilers.txt", io::detail::join(inst.spoiler_candidates) + "\n");
  }
  io::write_file(fs::path(dir) / "election.cop", io::serialize_election(inst.materialized()));
  io::write_file(fs::path(dir) / "instance.txt", io::serialize_manifest(m));
  out << "wrote " << (fs::path(dir) / "instance.txt").string() << " (" << inst.candidates().size()
      << " candidates)\n";
  return 0;
}

inline int verify(const std::string& to, const std::string& graph, const std::string& k, const std::string& alpha,
                  const std::string& model, bool scores, bool timing, std::ostream& out) {
  Graph g;
  const auto started = std::chrono::steady_clock::now();
  const auto inst = reduce_instance(to, graph, k, alpha, model, g);
  const auto rep = verify_reduction(g, static_cast<std::size_t>(parse_k(k)), inst);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
  out << "answer: " << (rep.solver ? "YES" : "NO") << "\n";
  out << "vertex-cover: " << (rep.vc ? "YES" : "NO") << "\n";
  out << "agree: " << (rep.equal ? "yes" : "no") << "\n";
  out << "method: exact\n";
  if (rep.witness) out << io::serialize_witness(*rep.witness, rep.names);
  if (scores) out << score_table(rep.names, rep.scaled, inst.alpha);
  if (timing) out << "elapsed: " << ms.count() << " ms\n";
  return rep.equal ? 0 : 1;
}

}  // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Copeland election control toolkit", "copeland"};
  app.require_subcommand(1);
  std::ostringstream buf;
  std::function<int()> action;

  std::string alpha, election, model, to, graph, k, dir;
  bool quick = false, scores = false, timing = false;
  detail::SolveArgs sa;

  auto* score = app.add_subcommand("score", "Scaled Copeland scores");
  score->add_option("--alpha", alpha)->required();
  score->add_option("--election", election)->required();
  score->callback([&] {
    action = [&] {
      const auto a = Alpha::parse(alpha);
      const auto e = io::parse_election(io::read_file(election));
      buf << detail::score_table(e.candidates(), copeland_scores(e, a).scaled, a);
      return 0;
    };
  });

  auto* win = app.add_subcommand("winners", "Winner set");
  win->add_option("--alpha", alpha)->required();
  win->add_option("--election", election)->required();
  win->add_option("--model", model);
  win->callback([&] {
    action = [&] {
      const auto e = io::parse_election(io::read_file(election));
      const auto m = model.empty() ? WinnerModel::NonUnique : io::parse_model(model);
      buf << io::detail::join(names_of(e.candidates(), winners(e, Alpha::parse(alpha), m))) << "\n";
      return 0;
    };
  });

  auto* solve = app.add_subcommand("solve", "Decide a control or bribery instance");
  solve->add_option("--problem", sa.problem);
  solve->add_option("--method", sa.method)->check(CLI::IsMember({"exact", "greedy", "dp", "fpt"}));
  solve->add_option("--alpha", sa.alpha);
  solve->add_option("--election", sa.election);
  solve->add_option("--spoiler-candidates", sa.spoilers);
  solve->add_option("--voter-pool", sa.pool);
  solve->add_option("--k", sa.k);
  solve->add_option("--p", sa.p);
  solve->add_option("--model", sa.model);
  solve->add_option("--goal", sa.goal);
  solve->add_option("--bound", sa.bound, "BC_j or BV_j (fpt only)");
  solve->add_option("--instance", sa.instance, "instance.txt written by reduce");
  solve->add_flag("--timing", sa.timing);
  solve->callback([&] { action = [&] { return detail::solve(sa, buf); }; });

  const std::vector<std::string> targets{"CCACu", "CCDC", "CCRPC-TP", "CCRPC-TE"};
  auto reduction_options = [&](CLI::App* sub) {
    sub->add_option("--to", to)->required()->check(CLI::IsMember(targets));
    sub->add_option("--graph", graph)->required();
    sub->add_option("--k", k)->required();
    sub->add_option("--alpha", alpha)->required();
    sub->add_option("--model", model);
  };
  auto* red = app.add_subcommand("reduce", "Write the instance generated from a vertex cover instance");
  reduction_options(red);
  red->add_option("--out", dir)->required();
  red->callback([&] { action = [&] { return detail::reduce(to, graph, k, alpha, model, dir, buf); }; });

  auto* ver = app.add_subcommand("verify-reduction", "Compare the generated instance with vertex cover");
  reduction_options(ver);
  ver->add_flag("--scores", scores);
  ver->add_flag("--timing", timing);
  ver->callback([&] { action = [&] { return detail::verify(to, graph, k, alpha, model, scores, timing, buf); }; });

  auto* st = app.add_subcommand("selftest", "Run the invariant grid");
  st->add_flag("--quick", quick, "reduced sizes");
  st->callback([&] { action = [&] { return selftest::run_selftest(buf, quick) ? 0 : 1; }; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  }

  try {
    const int code = action();
    out << buf.str();
    return code;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return ex.code() == Errc::BudgetExceeded ? 3 : 2;
  } catch (const detail::UsageError& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::logic_error& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  }
}

}  // namespace copeland::cli
