// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#include "ccvp/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ccvp/cq.hpp"
#include "ccvp/errors.hpp"
#include "ccvp/fixtures.hpp"
#include "ccvp/generate.hpp"
#include "ccvp/io.hpp"

namespace ccvp::cli {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string fmt_vec(const Vec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt_short(v[i]);
  }
  return s + "]";
}

/// Sorted `key value` lines for --machine mode.
class MachineReport {
 public:
  void put(const std::string& key, const std::string& value) { kv_.emplace_back(key, value); }
  void put_bool(const std::string& key, bool v) { put(key, v ? "true" : "false"); }
  void put_real(const std::string& key, double v) { put(key, fmt(v)); }
  void put_int(const std::string& key, long long v) { put(key, std::to_string(v)); }
  void put_vec(const std::string& key, const Vec& v) {
    for (std::size_t i = 0; i < v.size(); ++i) put_real(key + "_" + std::to_string(i), v[i]);
  }

  void render(std::ostream& out) const {
    auto sorted = kv_;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [k, v] : sorted) out << k << " " << v << "\n";
  }

 private:
  std::vector<std::pair<std::string, std::string>> kv_;
};

Vec parse_reals_csv(const std::string& text) {
  Vec out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    std::istringstream ws(item);
    double v = 0.0;
    std::string word;
    while (ws >> word) {
      std::size_t used = 0;
      try {
        v = std::stod(word, &used);
      } catch (const std::exception&) {
        throw UsageError("expected a real number in '" + text + "'");
      }
      if (used != word.size()) throw UsageError("expected a real number in '" + text + "'");
      out.push_back(v);
    }
  }
  if (out.empty()) throw UsageError("expected at least one real number in '" + text + "'");
  return out;
}

Vec resolve_point(const Problem& problem, const std::string& spec) {
  auto it = problem.named_points().find(spec);
  if (it != problem.named_points().end()) return it->second;
  Vec x;
  try {
    x = parse_reals_csv(spec);
  } catch (const UsageError&) {
    throw UsageError("'" + spec + "' is neither a named point nor a coordinate list");
  }
  require_size(x, problem.n(), "point");
  return x;
}

// Exact-sum simplex weights: normalize, then absorb the rounding remainder
// into the first coordinate.
Vec normalize_lambda(Vec lambda) {
  double sum = 0.0;
  for (double l : lambda) {
    if (l < 0.0) throw UsageError("weights must be nonnegative");
    sum += l;
  }
  if (sum <= 0.0) throw UsageError("weights must not all be zero");
  for (double& l : lambda) l /= sum;
  double s2 = 0.0;
  for (double l : lambda) s2 += l;
  lambda[0] += 1.0 - s2;
  return lambda;
}

Vec uniform_lambda(std::size_t m) {
  Vec lambda(m, 1.0 / static_cast<double>(m));
  double s = 0.0;
  for (double l : lambda) s += l;
  lambda[0] += 1.0 - s;
  return lambda;
}

struct CommonFlags {
  std::string point;
  std::string lambda_text;
  std::string mu_text;
  double tol = 1e-6;
  std::string cert_path;
  std::string out_path;
  double rho0 = 1.0;
  double gamma = 10.0;
  int outer = 12;
  double tail_fraction = 0.25;
  double bakkt_bound = 1e6;
  bool probe_regularity = false;
  int probe_samples = 200;
  long long seed = 42;
  bool machine = false;
};

int do_check_kkt(const Problem& problem, const CommonFlags& flags, std::ostream& out) {
  if (flags.point.empty()) throw UsageError("check-kkt needs --point");
  const Vec x_bar = resolve_point(problem, flags.point);

  MachineReport mr;
  bool holds = false;

  if (!flags.lambda_text.empty() || !flags.mu_text.empty()) {
    if (flags.lambda_text.empty() || flags.mu_text.empty())
      throw UsageError("supply both --lambda and --mu, or neither");
    const Vec lambda = parse_reals_csv(flags.lambda_text);
    const Vec mu = parse_reals_csv(flags.mu_text);
    const ResidualRecord r = kkt_residual(problem, x_bar, lambda, mu);
    holds = r.within(flags.tol);
    if (flags.machine) {
      mr.put_bool("kkt_holds", holds);
      mr.put_real("stationarity", r.stationarity);
      mr.put_real("complementarity", r.complementarity);
      mr.put_real("feasibility", r.feasibility);
      mr.put_real("simplex_defect", r.simplex_defect);
      mr.put_real("polar_defect", r.polar_defect);
      mr.render(out);
    } else {
      out << "multiplier check at x = " << fmt_vec(x_bar) << "\n"
          << "  stationarity      " << fmt_short(r.stationarity) << "\n"
          << "  complementarity   " << fmt_short(r.complementarity) << "\n"
          << "  feasibility       " << fmt_short(r.feasibility) << "\n"
          << "  simplex defect    " << fmt_short(r.simplex_defect) << "\n"
          << "  polar defect      " << fmt_short(r.polar_defect) << "\n"
          << "exact multiplier conditions " << (holds ? "hold" : "do not hold")
          << " at tol " << fmt_short(flags.tol) << "\n";
    }
    return holds ? 0 : 1;
  }

  const KktSearchResult res = search_kkt_multipliers(
      problem, x_bar, flags.tol, 10, static_cast<std::uint64_t>(flags.seed));
  holds = res.kkt_holds;
  if (flags.machine) {
    mr.put_bool("kkt_holds", holds);
    mr.put_real("min_residual", res.min_residual);
    mr.put_vec("lambda", res.lambda);
    mr.put_vec("mu", res.mu);
    mr.render(out);
  } else {
    out << "multiplier search at x = " << fmt_vec(x_bar) << "\n"
        << "  best lambda   " << fmt_vec(res.lambda) << "\n"
        << "  best mu       " << fmt_vec(res.mu) << "\n"
        << "  min residual  " << fmt_short(res.min_residual) << "\n"
        << "exact multiplier conditions " << (holds ? "hold" : "do not hold")
        << " at tol " << fmt_short(flags.tol) << "\n";
  }
  return holds ? 0 : 1;
}

void render_akkt_report(const AkktReport& rep, bool machine, std::ostream& out) {
  if (machine) {
    MachineReport mr;
    mr.put_int("steps", static_cast<long long>(rep.records.size()));
    mr.put_bool("converged_a0", rep.converged_a0);
    mr.put_bool("converged_a1", rep.converged_a1);
    mr.put_bool("converged_a2", rep.converged_a2);
    mr.put_bool("bakkt", rep.bakkt);
    mr.put_real("tail_mu_norm_sup", rep.tail_mu_norm_sup);
    mr.put_real("last_stationarity", rep.records.back().stationarity);
    mr.put_real("last_variant_stationarity", rep.variant_stationarity.back());
    mr.put_real("last_complementarity", rep.records.back().complementarity);
    mr.put_real("last_limit_distance", rep.limit_distances.back());
    mr.put_real("limit_feasibility", rep.limit_feasibility);
    mr.put_vec("lambda", rep.lambda);
    mr.put_vec("limit", rep.limit);
    mr.render(out);
    return;
  }

  out << "certificate with " << rep.records.size() << " steps, lambda = "
      << fmt_vec(rep.lambda) << ", limit = " << fmt_vec(rep.limit) << "\n";
  out << "  step        ||x-limit||   stationarity   (at step x)    complementarity   ||mu||\n";
  const std::size_t nsteps = rep.records.size();
  std::vector<std::size_t> rows;
  if (nsteps <= 8) {
    for (std::size_t k = 0; k < nsteps; ++k) rows.push_back(k);
  } else {
    for (std::size_t k = 0; k < 4; ++k) rows.push_back(k);
    rows.push_back(nsteps / 2);
    for (std::size_t k = nsteps - 3; k < nsteps; ++k) rows.push_back(k);
  }
  for (std::size_t k : rows) {
    char line[200];
    std::snprintf(line, sizeof(line), "  %-10zu  %-12.4g  %-13.4g  %-13.4g  %-16.4g  %.4g\n",
                  k, rep.limit_distances[k], rep.records[k].stationarity,
                  rep.variant_stationarity[k], rep.records[k].complementarity,
                  rep.mu_norms[k]);
    out << line;
  }
  out << "  (A0) iterates reach the limit:      " << (rep.converged_a0 ? "yes" : "no") << "\n"
      << "  (A1) stationarity vanishes:         " << (rep.converged_a1 ? "yes" : "no") << "\n"
      << "  (A2) complementarity vanishes:      " << (rep.converged_a2 ? "yes" : "no") << "\n"
      << "  bounded multipliers (bakkt):        " << (rep.bakkt ? "yes" : "no")
      << "  (tail sup " << fmt_short(rep.tail_mu_norm_sup) << ")\n"
      << "  limit feasibility distance:         " << fmt_short(rep.limit_feasibility) << "\n"
      << "  judgments use the last step and tail of a finite trajectory (tol "
      << fmt_short(rep.tol_final) << ", tail fraction " << fmt_short(rep.tail_fraction)
      << "); they are evidence, not limit claims\n";
}

int do_verify_akkt(const Problem& problem, const AkktCertificate& cert,
                   const CommonFlags& flags, std::ostream& out) {
  const AkktReport rep = verify_akkt_certificate(problem, cert, flags.tol,
                                                 flags.tail_fraction, flags.bakkt_bound);
  render_akkt_report(rep, flags.machine, out);
  if (!flags.machine) {
    const GlobalClaim claim = convex_global_claim(problem, rep);
    if (claim == GlobalClaim::GlobalWeakEfficient)
      out << "  convex problem: limit is a global weak efficient solution\n";
  }
  return rep.akkt_verified() ? 0 : 1;
}

int do_generate(const Problem& problem, const CommonFlags& flags, std::ostream& out) {
  Vec lambda = flags.lambda_text.empty() ? uniform_lambda(problem.m())
                                         : normalize_lambda(parse_reals_csv(flags.lambda_text));
  require_size(lambda, problem.m(), "lambda");
  Vec x0(problem.n(), 0.0);
  if (!flags.point.empty()) x0 = resolve_point(problem, flags.point);

  PenaltyConfig config;
  config.rho0 = flags.rho0;
  config.gamma = flags.gamma;
  config.outer_iters = flags.outer;

  const AkktCertificate cert = generate_akkt(problem, lambda, x0, config);
  if (!flags.out_path.empty()) write_certificate_file(flags.out_path, cert);

  const AkktReport rep = verify_akkt_certificate(problem, cert, flags.tol,
                                                 flags.tail_fraction, flags.bakkt_bound);
  if (!flags.machine) {
    out << "penalty generator: rho0 " << fmt_short(config.rho0) << ", gamma "
        << fmt_short(config.gamma) << ", " << config.outer_iters << " outer iterations\n";
    if (!flags.out_path.empty()) out << "certificate written to " << flags.out_path << "\n";
  }
  render_akkt_report(rep, flags.machine, out);
  if (!flags.machine) {
    const GlobalClaim claim = convex_global_claim(problem, rep);
    if (claim == GlobalClaim::GlobalWeakEfficient)
      out << "  convex problem: limit is a global weak efficient solution\n";
  }
  return rep.akkt_verified() ? 0 : 1;
}

int do_cq(const Problem& problem, const CommonFlags& flags, std::ostream& out) {
  if (flags.point.empty()) throw UsageError("cq needs --point");
  const Vec x_bar = resolve_point(problem, flags.point);

  CQReport report;
  report.rcq = check_rcq(problem, x_bar);
  report.mfcq = check_mfcq(problem, x_bar);
  if (flags.probe_regularity) {
    ProbeConfig pc = ProbeConfig::defaults();
    pc.seed = static_cast<std::uint64_t>(flags.seed);
    pc.samples_per_scale = flags.probe_samples;
    report.regularity_probe = probe_akkt_regularity(problem, x_bar, pc);
  }

  if (flags.machine) {
    MachineReport mr;
    mr.put_bool("rcq", report.rcq.holds);
    if (report.rcq.failing_direction)
      mr.put_vec("rcq_failing_direction", *report.rcq.failing_direction);
    mr.put_bool("mfcq_applicable", report.mfcq.has_value());
    if (report.mfcq) {
      mr.put_bool("mfcq", report.mfcq->holds);
      mr.put_real("mfcq_slack", report.mfcq->slack);
      if (report.mfcq->witness_d) mr.put_vec("mfcq_witness", *report.mfcq->witness_d);
    }
    if (report.regularity_probe) {
      mr.put_bool("regularity_violation", report.regularity_probe->violation);
      mr.put_real("probe_max_distance", report.regularity_probe->max_distance);
      mr.put_int("probe_samples",
                 static_cast<long long>(report.regularity_probe->samples_tested));
      mr.put_vec("probe_scale_max", report.regularity_probe->per_scale_max);
    }
    mr.render(out);
  } else {
    out << "constraint qualifications at x = " << fmt_vec(x_bar) << "\n";
    out << "  robinson condition (rcq):  " << (report.rcq.holds ? "holds" : "fails");
    if (report.rcq.failing_direction)
      out << "  (uncovered direction " << fmt_vec(*report.rcq.failing_direction) << ")";
    out << "\n";
    if (report.mfcq) {
      out << "  mangasarian-fromovitz:     "
          << (report.mfcq->holds ? "holds" : "fails")
          << "  (margin " << fmt_short(report.mfcq->slack) << ")";
      if (report.mfcq->witness_d)
        out << "  witness d = " << fmt_vec(*report.mfcq->witness_d);
      out << "\n";
    } else {
      out << "  mangasarian-fromovitz:     not applicable (cone interior is empty)\n";
    }
    if (report.regularity_probe) {
      const auto& probe = *report.regularity_probe;
      out << "  regularity probe:          "
          << (probe.violation ? "violation found" : "no violation found") << " over "
          << probe.samples_tested << " samples, max distance "
          << fmt_short(probe.max_distance) << "\n";
      out << "  per-scale max distances:   ";
      for (std::size_t s = 0; s < probe.per_scale_max.size(); ++s)
        out << (s ? ", " : "") << fmt_short(probe.per_scale_max[s]);
      out << "\n";
    }
  }

  if (flags.probe_regularity) return report.regularity_probe->violation ? 1 : 0;
  return report.rcq.holds ? 0 : 1;
}

int do_example(int id, const std::string& mode, const CommonFlags& flags,
               std::ostream& out) {
  Fixture fx = builtin_example(id);
  CommonFlags f = flags;
  if (f.point.empty()) f.point = "xbar";

  if (mode == "verify-akkt") {
    if (!fx.certificate)
      throw UsageError("builtin example " + std::to_string(id) + " has no certificate");
    return do_verify_akkt(fx.problem, *fx.certificate, f, out);
  }
  if (mode == "check-kkt") return do_check_kkt(fx.problem, f, out);
  if (mode == "cq") return do_cq(fx.problem, f, out);
  if (mode == "generate") {
    if (flags.point.empty()) f.point.clear();  // default x0 = origin, not xbar
    return do_generate(fx.problem, f, out);
  }

  const Problem& pr = fx.problem;
  if (flags.machine) {
    MachineReport mr;
    mr.put_int("id", id);
    mr.put_int("objectives", static_cast<long long>(pr.m()));
    mr.put_int("variables", static_cast<long long>(pr.n()));
    mr.put_int("constraints", static_cast<long long>(pr.p()));
    mr.put("cone", pr.cone().describe());
    mr.put_bool("has_certificate", fx.certificate.has_value());
    if (fx.certificate)
      mr.put_int("certificate_steps", static_cast<long long>(fx.certificate->steps.size()));
    mr.render(out);
    return 0;
  }
  out << "builtin example " << id << ": " << pr.m() << " objective(s), " << pr.n()
      << " variable(s), cone " << pr.cone().describe() << "\n";
  for (std::size_t i = 0; i < pr.m(); ++i)
    out << "  objective  " << pr.objectives()[i].to_string(pr.var_names()) << "\n";
  for (std::size_t j = 0; j < pr.p(); ++j)
    out << "  constraint " << pr.constraints()[j].to_string(pr.var_names()) << "\n";
  for (const auto& [name, pt] : pr.named_points())
    out << "  point " << name << " = " << fmt_vec(pt) << "\n";
  if (fx.certificate)
    out << "  certificate with " << fx.certificate->steps.size() << " steps available\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"certificates and constraint qualifications for cone-constrained "
               "vector optimization"};
  app.require_subcommand(1);

  CommonFlags flags;
  if (const char* env = std::getenv("CCVP_SEED")) {
    try {
      flags.seed = std::stoll(env);
    } catch (const std::exception&) {
      err << "error: CCVP_SEED is not an integer\n";
      return 2;
    }
  }

  std::string problem_path;
  int example_id = 0;
  bool mode_verify = false, mode_kkt = false, mode_cq = false, mode_generate = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--point", flags.point, "named point or comma-separated coordinates");
    cmd->add_option("--lambda", flags.lambda_text, "simplex weights, comma-separated");
    cmd->add_option("--mu", flags.mu_text, "polar-cone multiplier, comma-separated");
    cmd->add_option("--tol", flags.tol, "tolerance (default 1e-6)");
    cmd->add_option("--seed", flags.seed, "random seed (default 42, or CCVP_SEED)");
    cmd->add_flag("--machine", flags.machine, "stable key/value output");
    cmd->add_option("--tail-fraction", flags.tail_fraction,
                    "trailing fraction used for convergence judgments");
    cmd->add_option("--bakkt-bound", flags.bakkt_bound,
                    "multiplier norm bound for the boundedness check");
    cmd->add_option("--rho0", flags.rho0, "initial penalty parameter");
    cmd->add_option("--gamma", flags.gamma, "penalty growth factor");
    cmd->add_option("--outer", flags.outer, "outer penalty iterations");
    cmd->add_option("--cert", flags.cert_path, "certificate file to verify");
    cmd->add_option("--out", flags.out_path, "write the produced certificate here");
    cmd->add_option("--probe-samples", flags.probe_samples, "probe samples per scale");
  };

  CLI::App* c_kkt = app.add_subcommand("check-kkt", "search or check exact multipliers");
  c_kkt->add_option("problem", problem_path, "problem file (.ccvp)")->required();
  add_common(c_kkt);

  CLI::App* c_verify = app.add_subcommand("verify-akkt", "verify a certificate trajectory");
  c_verify->add_option("problem", problem_path, "problem file (.ccvp)")->required();
  add_common(c_verify);

  CLI::App* c_gen = app.add_subcommand("generate", "produce a certificate by penalty descent");
  c_gen->add_option("problem", problem_path, "problem file (.ccvp)")->required();
  add_common(c_gen);

  CLI::App* c_cq = app.add_subcommand("cq", "constraint qualification checks");
  c_cq->add_option("problem", problem_path, "problem file (.ccvp)")->required();
  c_cq->add_flag("--probe-regularity", flags.probe_regularity,
                 "sample the multiplier image map at shrinking scales");
  add_common(c_cq);

  CLI::App* c_ex = app.add_subcommand("example", "run a bundled reference problem");
  c_ex->add_option("id", example_id, "example id (1, 2 or 3)")->required();
  c_ex->add_flag("--verify-akkt", mode_verify, "verify the bundled certificate");
  c_ex->add_flag("--check-kkt", mode_kkt, "search exact multipliers at xbar");
  c_ex->add_flag("--cq", mode_cq, "constraint qualification checks at xbar");
  c_ex->add_flag("--generate", mode_generate, "run the penalty generator");
  c_ex->add_flag("--probe-regularity", flags.probe_regularity,
                 "include the regularity probe in --cq mode");
  add_common(c_ex);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (c_ex->parsed()) {
      const int modes = (mode_verify ? 1 : 0) + (mode_kkt ? 1 : 0) + (mode_cq ? 1 : 0) +
                        (mode_generate ? 1 : 0);
      if (modes > 1) throw UsageError("pick at most one of --verify-akkt/--check-kkt/--cq/--generate");
      std::string mode;
      if (mode_verify) mode = "verify-akkt";
      else if (mode_kkt) mode = "check-kkt";
      else if (mode_cq || flags.probe_regularity) mode = "cq";
      else if (mode_generate) mode = "generate";
      // Bundled trajectories are finite (k <= 1000), so the example command
      // gates them at the tolerance their tails can reach.
      if (c_ex->count("--tol") == 0) flags.tol = 1e-3;
      return do_example(example_id, mode, flags, out);
    }

    const Problem problem = read_problem_file(problem_path);
    if (c_kkt->parsed()) return do_check_kkt(problem, flags, out);
    if (c_verify->parsed()) {
      if (flags.cert_path.empty()) throw UsageError("verify-akkt needs --cert <path>");
      const AkktCertificate cert = read_certificate_file(flags.cert_path);
      return do_verify_akkt(problem, cert, flags, out);
    }
    if (c_gen->parsed()) return do_generate(problem, flags, out);
    if (c_cq->parsed()) return do_cq(problem, flags, out);
    throw UsageError("no subcommand given");
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ccvp::cli
