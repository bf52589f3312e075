#define DOCTEST_CONFIG_IMPLEMENT
#include "support.hpp"
#include "spdmean/io.hpp"
#include "spdmean/solver.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace spdmean;
using io::Json;

namespace {

std::string g_cli;
std::filesystem::path g_dir;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write(const std::string& name, const Json& j) {
  const auto path = g_dir / name;
  std::ofstream(path) << io::dump(j);
  return path.string();
}

}  // namespace

TEST_CASE("mean and lambda") {
  Rng rng(91);
  const SpdMatrix a = random_spd(rng, 3);
  const SpdMatrix b = random_spd(rng, 3);
  const std::vector<WeightedMatrix> one{{1.0, a}};
  const std::string single = write("single.json", io::to_json(product_measure(SMeasure::lebesgue(), one)));
  Run r = run("mean " + single);
  REQUIRE(r.code == 0);
  CHECK(testing::rel_err(io::spd_from_json(Json::parse(r.out)["mean"]).dense(), a.dense()) <= 1e-10);

  const std::vector<WeightedMatrix> pair{{0.5, a}, {0.5, b}};
  const PMeasure mu = product_measure(SMeasure::lebesgue(), pair);
  const std::string two = write("two.json", io::to_json(mu));
  r = run("mean --t 1 " + two);
  REQUIRE(r.code == 0);
  CHECK(testing::rel_err(io::spd_from_json(Json::parse(r.out)["mean"]).dense(), weighted_arith(pair).dense()) <= 1e-12);

  r = run("--lambda-tol 1e-10 lambda " + two);
  REQUIRE(r.code == 0);
  const Json report = Json::parse(r.out);
  CHECK(report["t_trace"].size() > 0);
  const SpdMatrix lam = io::spd_from_json(report["mean"]);
  CHECK(testing::rel_err(lam.dense(), testing::oracle_geom_mean(a.dense(), b.dense(), 0.5)) <= 1e-8);

  const std::string x = write("lambda.json", report["mean"]);
  r = run("residual " + two + " " + x);
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["norm"].get<double>() <= 1e-8);

  r = run("divergence " + two + " " + x);
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["objective"].get<double>() > 0.0);

  r = run("minimize " + two);
  REQUIRE(r.code == 0);
  CHECK(testing::rel_err(io::spd_from_json(Json::parse(r.out)["mean"]).dense(), lam.dense()) <= 1e-6);
}

TEST_CASE("power route matches lambda with the power density") {
  Rng rng(92);
  const std::vector<WeightedMatrix> sigma = random_sigma(rng, 3, 3);
  const std::string path = write("power.json", io::to_json(product_measure(SMeasure::power(0.5), sigma)));
  const Run p = run("power --t 0.5 " + path);
  const Run l = run("lambda " + path);
  REQUIRE(p.code == 0);
  REQUIRE(l.code == 0);
  const Dense pm = io::spd_from_json(Json::parse(p.out)["mean"]).dense();
  const Dense lm = io::spd_from_json(Json::parse(l.out)["mean"]).dense();
  CHECK(testing::rel_err(pm, lm) <= 1e-6);
}

TEST_CASE("metric") {
  Rng rng(93);
  const std::string a = write("a.json", io::to_json(random_spd(rng, 4)));
  const Run r = run("metric " + a + " " + a);
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["d_inf"].get<double>() == 0.0);
}

TEST_CASE("exit codes") {
  CHECK(run("mean " + (g_dir / "does_not_exist.json").string()).code == 1);
  {
    std::ofstream(g_dir / "broken.json") << "{\"atoms\": [";
  }
  CHECK(run("lambda " + (g_dir / "broken.json").string()).code == 1);
  CHECK(run("verify --suite nonsense").code == 1);
  CHECK(run("frobnicate").code == 1);

  Rng rng(94);
  const std::string path = write("slow.json", io::to_json(product_measure(SMeasure::lebesgue(), random_sigma(rng, 4, 3))));
  CHECK(run("--max-iters 1 --fp-tol 1e-15 mean --t 0.01 " + path).code == 2);
}

TEST_CASE("output flag") {
  Rng rng(95);
  const std::string a = write("o.json", io::to_json(random_spd(rng, 2)));
  const auto out = g_dir / "metric_out.json";
  REQUIRE(run("--output " + out.string() + " metric " + a + " " + a).code == 0);
  CHECK(io::read_file(out)["d_inf"].get<double>() == 0.0);
}

TEST_CASE("verify is deterministic") {
  const Run first = run("--seed 42 verify --dim 3 --trials 5 --suite all");
  const Run second = run("--seed 42 verify --dim 3 --trials 5 --suite all");
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  CHECK(first.out.find("total:") != std::string::npos);
}

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: test_cli <spdmean binary> <scratch dir>\n");
    return 1;
  }
  g_cli = argv[1];
  g_dir = std::filesystem::path(argv[2]) / "cli_scratch";
  std::filesystem::create_directories(g_dir);
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 2, argv + 2);
  return ctx.run();
}
