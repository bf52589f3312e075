// spdmean: command-line front end for the SPD mean library.
//
// Exit codes: 0 success, 1 input or domain error, 2 non-convergence.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "spdmean/divergence.hpp"
#include "spdmean/io.hpp"
#include "spdmean/solver.hpp"
#include "spdmean/thompson.hpp"
#include "spdmean/verify.hpp"

namespace {

using spdmean::io::Json;

struct Globals {
  double fp_tol = 1e-12;
  int max_iters = 10000;
  double lambda_tol = 1e-9;
  int nodes = spdmean::kDefaultNodes;
  std::uint64_t seed = 42;
  std::string output = "-";
};

spdmean::SolverConfig solver_config(const Globals& g) {
  spdmean::SolverConfig cfg;
  cfg.fp_tol = g.fp_tol;
  cfg.max_iters = g.max_iters;
  cfg.lambda_tol = g.lambda_tol;
  return cfg;
}

void emit(const Globals& g, const std::string& text) {
  if (g.output == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(g.output);
  if (!out) throw spdmean::Error(spdmean::ErrorKind::kParse, "cannot write " + g.output);
  out << text << '\n';
}

void emit(const Globals& g, const Json& j) { emit(g, spdmean::io::dump(j)); }

spdmean::PMeasure load_measure(const std::string& path, const Globals& g) {
  return spdmean::io::pmeasure_from_json(spdmean::io::read_file(path), g.nodes);
}

spdmean::SpdMatrix load_matrix(const std::string& path) {
  return spdmean::io::spd_from_json(spdmean::io::read_file(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator means of measures on the SPD cone"};
  app.require_subcommand(1);

  Globals g;
  app.add_option("--fp-tol", g.fp_tol, "Thompson step threshold of fixed-point solves");
  app.add_option("--max-iters", g.max_iters, "Iteration budget per solve");
  app.add_option("--lambda-tol", g.lambda_tol, "Thompson gap between successive L_t that ends the lambda net");
  app.add_option("--nodes", g.nodes, "Default quadrature nodes for continuous measures")->check(CLI::Range(2, 100000));
  app.add_option("--seed", g.seed, "Seed for random suites");
  app.add_option("--output", g.output, "Output path, '-' for stdout");

  std::string measure_path;
  std::string x_path;
  std::string b_path;
  double t = 0.5;

  auto* mean = app.add_subcommand("mean", "Induced mean L_t of a measure");
  mean->add_option("measure", measure_path, "PMeasure JSON")->required();
  mean->add_option("--t", t, "Mean parameter in (0, 1]");

  auto* lambda = app.add_subcommand("lambda", "Lambda (generalized Karcher) mean");
  lambda->add_option("measure", measure_path, "PMeasure JSON")->required();

  auto* power = app.add_subcommand("power", "Matrix power mean");
  power->add_option("sigma", measure_path, "PMeasure JSON; only weights and matrices are read")->required();
  power->add_option("--t", t, "Power in (0, 1]");

  auto* residual = app.add_subcommand("residual", "Generalized Karcher residual at X");
  residual->add_option("measure", measure_path, "PMeasure JSON")->required();
  residual->add_option("x", x_path, "Matrix JSON")->required();

  auto* metric = app.add_subcommand("metric", "Thompson distance between two matrices");
  metric->add_option("a", x_path, "Matrix JSON")->required();
  metric->add_option("b", b_path, "Matrix JSON")->required();

  auto* divergence = app.add_subcommand("divergence", "Integrated log-determinant divergence at X");
  divergence->add_option("measure", measure_path, "PMeasure JSON")->required();
  divergence->add_option("x", x_path, "Matrix JSON")->required();

  auto* minimize = app.add_subcommand("minimize", "Riemannian gradient descent on the divergence objective");
  minimize->add_option("measure", measure_path, "PMeasure JSON")->required();

  spdmean::VerifyOptions vopt;
  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Seeded invariant suites");
  verify->add_option("--dim", vopt.dim, "Matrix dimension")->check(CLI::Range(1, 64));
  verify->add_option("--trials", vopt.trials, "Trials per suite")->check(CLI::NonNegativeNumber);
  verify->add_option("--suite", suite, "thompson | means | divergence | all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*mean) {
      const auto mu = load_measure(measure_path, g);
      emit(g, spdmean::io::to_json(spdmean::induced_mean(t, mu, solver_config(g))));
    } else if (*lambda) {
      const auto mu = load_measure(measure_path, g);
      emit(g, spdmean::io::to_json(spdmean::lambda_mean(mu, solver_config(g))));
    } else if (*power) {
      const auto sigma = spdmean::io::sigma_from_json(spdmean::io::read_file(measure_path));
      emit(g, spdmean::io::to_json(spdmean::power_mean(t, sigma, solver_config(g))));
    } else if (*residual) {
      const auto mu = load_measure(measure_path, g);
      const auto r = spdmean::karcher_residual(load_matrix(x_path), mu);
      emit(g, Json{{"residual", spdmean::io::to_json(r)}, {"norm", r.frobenius()}});
    } else if (*metric) {
      emit(g, Json{{"d_inf", spdmean::d_inf(load_matrix(x_path), load_matrix(b_path))}});
    } else if (*divergence) {
      const auto mu = load_measure(measure_path, g);
      emit(g, Json{{"objective", spdmean::objective(load_matrix(x_path), mu)}});
    } else if (*minimize) {
      const auto mu = load_measure(measure_path, g);
      spdmean::RgdConfig rcfg;
      rcfg.max_iters = g.max_iters;
      emit(g, spdmean::io::to_json(spdmean::rgd_minimize(mu, rcfg)));
    } else if (*verify) {
      vopt.seed = g.seed;
      const auto results = spdmean::run_suite(suite, vopt);
      std::ostringstream text;
      text.precision(3);
      int passed = 0;
      int failed = 0;
      for (const auto& r : results) {
        text << r.suite << '.' << r.name << ": " << r.passed << " passed, " << r.failed << " failed, worst "
             << std::scientific << r.worst << std::defaultfloat << '\n';
        passed += r.passed;
        failed += r.failed;
      }
      text << "total: " << passed << " passed, " << failed << " failed";
      emit(g, text.str());
      return failed == 0 ? 0 : 1;
    }
  } catch (const spdmean::NonConvergence& e) {
    std::cerr << e.what() << " (last step " << e.last_step() << ")\n";
    return 2;
  } catch (const spdmean::Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
