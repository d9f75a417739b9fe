// Command-line front end: generate instances, certify them, sweep a
// parameter, or run the self-test ensemble. Exit codes for `analyze`:
// 0 all checks pass, 2 the spectral ordering hypothesis fails, 3 a numerical
// assertion fails. `selftest` exits 1 on any failure and writes a repro file.

#include "riccert/bounds.hpp"
#include "riccert/ensemble.hpp"
#include "riccert/serialize.hpp"

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace riccert;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct ToleranceFlags {
  double rank = Tolerances{}.rank;
  double eig = Tolerances{}.eig;
  double sub = Tolerances{}.sub;

  Tolerances resolve() const {
    Tolerances tol;
    tol.rank = rank;
    tol.eig = eig;
    tol.sub = sub;
    tol.check();
    return tol;
  }
};

void add_tolerance_flags(CLI::App* cmd, ToleranceFlags& flags) {
  cmd->add_option("--tol-rank", flags.rank, "relative singular-value cutoff");
  cmd->add_option("--tol-eig", flags.eig, "eigenvalue clustering width");
  cmd->add_option("--tol-sub", flags.sub,
                  "max principal angle for subspace equality (radians)");
}

struct GeneratorFlags {
  GeneratorSpec spec;

  void add_to(CLI::App* cmd, bool required_dims) {
    auto* n0 = cmd->add_option("--n0", spec.n0, "dimension of H0");
    auto* n1 = cmd->add_option("--n1", spec.n1, "dimension of H1");
    if (required_dims) {
      n0->required();
      n1->required();
    }
    cmd->add_option("--ker0", spec.ker0_dim, "dim Ker(A0 - lambda)");
    cmd->add_option("--ker1", spec.ker1_dim, "dim Ker(A1 - lambda)");
    cmd->add_option("--gap", spec.gap,
                    "distance of the non-kernel spectra from lambda");
    cmd->add_option("--vnorm", spec.vnorm, "target norm of V");
    cmd->add_option("--lambda", spec.lambda, "separation point");
    cmd->add_flag("--couple", spec.couple_kernels,
                  "force V^H (V) to annihilate Ker(A0-lambda) (Ker(A1-lambda))");
    cmd->add_option("--seed", spec.seed, "random seed");
  }
};

void print_report_table(const CertificationReport& r) {
  auto line = [](const char* k, const std::string& v) {
    std::printf("%-22s %s\n", k, v.c_str());
  };
  line("n0, n1", std::to_string(r.n0) + ", " + std::to_string(r.n1));
  line("lambda", fmt17(r.lambda));
  line("d", fmt17(r.d));
  line("vnorm", fmt17(r.vnorm));
  line("norm_X", fmt17(r.norm_x));
  line("norm_PQ", fmt17(r.norm_pq));
  line("upper_X", fmt17(r.upper_x));
  line("lower_X", fmt17(r.lower_x));
  line("upper_PQ", fmt17(r.upper_pq));
  line("lower_PQ", fmt17(r.lower_pq));
  line("delta_minus", fmt17(r.delta_minus));
  line("delta_plus", fmt17(r.delta_plus));
  line("delta", fmt17(r.delta));
  line("residual", fmt17(r.residual));
  line("mu1_multiplicity", std::to_string(r.mu1_multiplicity));
  line("dim N0, N1", std::to_string(r.dim_n0) + ", " + std::to_string(r.dim_n1));
  line("dim K0, K1", std::to_string(r.dim_k0) + ", " + std::to_string(r.dim_k1));
  line("unique", r.verdict.unique ? "yes" : "no");
  line("strictly_contractive", r.verdict.strictly_contractive ? "yes" : "no");
  line("isolated", r.verdict.isolated ? "yes" : "no");
  line("gap_empty", r.gap_empty ? "yes" : "no");
  line("all_pass", r.all_pass ? "yes" : "no");
  for (const auto& name : r.failures()) line("FAILED", name);
}

int run_generate(const GeneratorFlags& flags, const std::string& output) {
  BlockOperator op = generate(flags.spec);
  nlohmann::json j = instance_to_json(op);
  j["meta"] = {{"generator", generator_to_json(flags.spec)}};
  if (output.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_text_file(output, j.dump(2) + "\n");
    std::cout << "wrote " << output << "\n";
  }
  return 0;
}

int run_analyze(const std::string& input, const ToleranceFlags& tflags,
                const std::string& output) {
  Tolerances tol = tflags.resolve();
  BlockOperator op = load_instance(input);
  CertificationReport report = certify(op, tol);
  print_report_table(report);
  nlohmann::json j = report_to_json(report, tol);
  if (output.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_text_file(output, j.dump(2) + "\n");
  }
  return report.all_pass ? 0 : 3;
}

constexpr const char* kSweepHeader =
    "param,norm_X,norm_PQ,upper_X,lower_X,upper_PQ,lower_PQ,delta,d";

std::string sweep_row(double param, const CertificationReport& r) {
  std::ostringstream row;
  row << fmt17(param) << ',' << fmt17(r.norm_x) << ',' << fmt17(r.norm_pq)
      << ',' << fmt17(r.upper_x) << ',' << fmt17(r.lower_x) << ','
      << fmt17(r.upper_pq) << ',' << fmt17(r.lower_pq) << ','
      << fmt17(r.delta) << ',' << fmt17(r.d);
  return row.str();
}

int run_sweep(const std::string& input, const GeneratorFlags& gflags,
              bool have_generator, const std::string& parameter, double start,
              double stop, int steps, const ToleranceFlags& tflags,
              const std::string& output) {
  Tolerances tol = tflags.resolve();
  if (steps < 2) throw InconsistentSpec("sweep: steps must be >= 2");
  if (start > stop) throw InconsistentSpec("sweep: start must be <= stop");
  std::optional<BlockOperator> base;
  if (!input.empty()) base = load_instance(input);
  if (!base && !have_generator)
    throw InconsistentSpec("sweep: provide --input or generator flags");
  if (parameter == "gap" && base)
    throw InconsistentSpec("sweep: gap sweeps need a generator base");

  std::ostringstream csv;
  csv << kSweepHeader << "\n";
  for (int i = 0; i < steps; ++i) {
    double param = start + (stop - start) * i / (steps - 1);
    BlockOperator op;
    if (parameter == "vscale") {
      op = base ? *base : generate(gflags.spec);
      op.v *= param;
    } else if (parameter == "gap") {
      GeneratorSpec spec = gflags.spec;
      spec.gap = param;
      op = generate(spec);
    } else {
      throw InconsistentSpec("sweep: parameter must be vscale or gap");
    }
    CertificationReport report = certify(op, tol);
    csv << sweep_row(param, report) << "\n";
  }
  if (output.empty()) {
    std::cout << csv.str();
  } else {
    write_text_file(output, csv.str());
    std::cout << "wrote " << output << "\n";
  }
  return 0;
}

int run_selftest(int count, Index max_dim, std::uint64_t seed,
                 const std::string& inject, const ToleranceFlags& tflags,
                 const std::string& repro_path) {
  Tolerances tol = tflags.resolve();
  std::vector<GeneratorSpec> specs = ensemble_specs(count, max_dim, seed);

  std::map<std::string, std::pair<long, long>> tally;  // name -> {pass, fail}
  long failures = 0;
  bool repro_written = false;

  auto run_one = [&](const BlockOperator& op) {
    std::string why;
    try {
      CertificationReport report = certify(op, tol);
      for (const auto& c : report.checks) {
        auto& t = tally[c.name];
        (c.ok ? t.first : t.second)++;
      }
      if (report.all_pass) return;
      why = report.failures().front();
    } catch (const Error& e) {
      why = e.what();
    }
    ++failures;
    if (!repro_written) {
      save_instance(repro_path, op, {{"selftest_failure", why}});
      std::cout << "first failing instance written to " << repro_path << "\n";
      repro_written = true;
    }
  };

  if (!inject.empty()) run_one(load_instance(inject));
  for (const auto& spec : specs) run_one(generate(spec));

  for (const auto& [name, counts] : tally)
    std::printf("%-36s pass %-6ld fail %ld\n", name.c_str(), counts.first,
                counts.second);
  long total = static_cast<long>(specs.size()) + (inject.empty() ? 0 : 1);
  std::printf("instances %ld, failures %ld\n", total, failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invariant graph subspaces and contractive Riccati solutions "
               "for self-adjoint 2x2 block operator matrices"};
  app.require_subcommand(1);

  GeneratorFlags gen_flags;
  std::string gen_output;
  auto* gen = app.add_subcommand("generate", "write a seeded random instance");
  gen_flags.add_to(gen, true);
  gen->add_option("-o,--output", gen_output, "instance file (default stdout)");

  std::string analyze_input, analyze_output;
  ToleranceFlags analyze_tol;
  auto* analyze = app.add_subcommand("analyze", "certify an instance file");
  analyze->add_option("input", analyze_input, "instance JSON file")
      ->required();
  add_tolerance_flags(analyze, analyze_tol);
  analyze->add_option("-o,--output", analyze_output,
                      "report JSON file (default stdout)");

  std::string sweep_input, sweep_param = "vscale", sweep_output;
  double sweep_start = 0.0, sweep_stop = 1.0;
  int sweep_steps = 11;
  GeneratorFlags sweep_gen;
  ToleranceFlags sweep_tol;
  auto* sweep = app.add_subcommand(
      "sweep", "certify along a parameter range, emit CSV");
  sweep->add_option("--input", sweep_input, "base instance file");
  sweep_gen.add_to(sweep, false);
  sweep->add_option("--param", sweep_param, "vscale or gap");
  sweep->add_option("--start", sweep_start, "range start")->required();
  sweep->add_option("--stop", sweep_stop, "range stop")->required();
  sweep->add_option("--steps", sweep_steps, "number of rows (>= 2)");
  add_tolerance_flags(sweep, sweep_tol);
  sweep->add_option("-o,--output", sweep_output, "CSV file (default stdout)");

  int st_count = 200;
  Index st_max_dim = 16;
  std::uint64_t st_seed = 0;
  std::string st_inject, st_repro = "selftest_fail.json";
  ToleranceFlags st_tol;
  auto* selftest = app.add_subcommand(
      "selftest", "run the invariant suite over a seeded ensemble");
  selftest->add_option("--count", st_count, "number of instances")
      ->check(CLI::PositiveNumber);
  selftest->add_option("--max-dim", st_max_dim, "max block dimension")
      ->check(CLI::PositiveNumber);
  selftest->add_option("--seed", st_seed, "ensemble seed");
  selftest->add_option("--inject", st_inject,
                       "also run this instance file (failure-path testing)");
  add_tolerance_flags(selftest, st_tol);
  selftest->add_option("-o,--output", st_repro, "repro file on failure");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return run_generate(gen_flags, gen_output);
    if (analyze->parsed())
      return run_analyze(analyze_input, analyze_tol, analyze_output);
    if (sweep->parsed()) {
      bool have_gen = sweep->count("--n0") > 0;
      return run_sweep(sweep_input, sweep_gen, have_gen, sweep_param,
                       sweep_start, sweep_stop, sweep_steps, sweep_tol,
                       sweep_output);
    }
    if (selftest->parsed())
      return run_selftest(st_count, st_max_dim, st_seed, st_inject, st_tol,
                          st_repro);
  } catch (const HypothesisViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const AssertionFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InconsistentVerdict& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NotAGraph& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
