#include <doctest.h>

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "dns/postprocess.hpp"
#include "support/temp_dir.hpp"

using namespace dns;
using namespace dns::testing;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

const char* kQuickOptions = "2\n200\n200\n20\n5\n10\n100\n25\n";

}  // namespace

TEST_CASE("unknown model") {
  const Result r = invoke({"run", "spline"});
  CHECK(r.status != 0);
  CHECK(r.err.find("spline") != std::string::npos);
  CHECK(r.err.find("Usage") != std::string::npos);
}

TEST_CASE("no subcommand is an error") {
  CHECK(invoke({}).status != 0);
}

TEST_CASE("compression flag constraints") {
  TempDir dir("cli_c");
  write_file(dir / "auto", "2\n200\n200\n20\n0\n10\n100\n25\n");
  write_file(dir / "fixed", kQuickOptions);
  const std::string out_dir = (dir / "run").string();

  Result r = invoke({"run", "gaussian", "-o", (dir / "auto").string(), "-c", "10", "--output-dir", out_dir});
  CHECK(r.status != 0);
  CHECK(r.err.find("maximum number of levels") != std::string::npos);

  r = invoke({"run", "gaussian", "-o", (dir / "fixed").string(), "-c", "0.5", "--output-dir", out_dir});
  CHECK(r.status != 0);
  CHECK(r.err.find("compression") != std::string::npos);

  r = invoke({"run", "gaussian", "-o", (dir / "fixed").string(), "-c", "10", "-s", "3",
              "--output-dir", out_dir});
  CHECK(r.status == 0);

  cli::Overrides overrides;
  overrides.compression = 10.0;
  CHECK(cli::resolve_options(dir / "fixed", overrides).compression == 10.0);
}

TEST_CASE("command line beats OPTIONS beats defaults") {
  TempDir dir("cli_precedence");
  write_file(dir / "OPTS", "7\n300\n400\n50\n4\n3\n0\n9\n");
  cli::Overrides overrides;
  overrides.num_threads = 3;
  overrides.seed = 99;
  const Options o = cli::resolve_options(dir / "OPTS", overrides);
  CHECK(o.num_particles == 7);
  CHECK(o.max_num_levels == 4);
  CHECK(o.num_threads == 3);
  CHECK(*o.seed == 99);

  const Options plain = cli::resolve_options(dir / "OPTS", {});
  CHECK(plain.num_threads == 1);
  CHECK_FALSE(plain.seed.has_value());

  CHECK_THROWS_AS(cli::resolve_options(dir / "nope", {}), OptionsError);
}

TEST_CASE("run, postprocess and diagnostics end to end") {
  TempDir dir("cli_e2e");
  write_file(dir / "OPTS", kQuickOptions);
  const std::string run_dir = (dir / "run").string();

  Result r = invoke({"run", "straightline", "-o", (dir / "OPTS").string(), "-s", "1234", "-t", "4",
                     "--output-dir", run_dir});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("# Saving a particle to disk. N = 25.") != std::string::npos);
  std::set<int> threads;
  for (const auto& s : read_sample_info(dir / "run" / "sample_info.txt")) threads.insert(s.thread);
  CHECK(*threads.rbegin() <= 3);
  CHECK(threads.size() > 1);

  const std::string first = slurp(dir / "run" / "sample.txt");
  r = invoke({"run", "straightline", "-o", (dir / "OPTS").string(), "-s", "1234", "-t", "4",
              "--output-dir", run_dir});
  REQUIRE(r.status == 0);
  CHECK(slurp(dir / "run" / "sample.txt") == first);

  r = invoke({"postprocess", "--dir", run_dir, "-s", "1"});
  CHECK(r.status == 0);
  CHECK(r.out.find("log(Z) = ") == 0);
  CHECK(r.out.find("Information = ") != std::string::npos);
  CHECK(r.out.find("Effective sample size = ") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "run" / "posterior_sample.txt"));

  r = invoke({"diagnostics", "--dir", run_dir, "--out", (dir / "csv").string()});
  CHECK(r.status == 0);
  for (const char* name : {"trace.csv", "levels_diag.csv", "weights.csv"})
    CHECK(std::filesystem::exists(dir / "csv" / name));

  r = invoke({"postprocess", "--dir", (dir / "missing").string()});
  CHECK(r.status != 0);
}

TEST_CASE("abc run and ABC postprocessing") {
  TempDir dir("cli_abc");
  write_file(dir / "OPTS", "2\n200\n100\n20\n10\n10\n100\n60\n");
  write_file(dir / "data.txt", "0.1\n-0.5\n1.2\n0.3\n-1.1\n");
  const std::string run_dir = (dir / "run").string();
  Result r = invoke({"run", "abc", "-o", (dir / "OPTS").string(), "-d", (dir / "data.txt").string(),
                     "-s", "5", "--output-dir", run_dir});
  REQUIRE(r.status == 0);
  r = invoke({"postprocess-abc", "--dir", run_dir, "--threshold-fraction", "0.5", "-s", "2"});
  CHECK(r.status == 0);
  CHECK(r.out.find("Epsilon = ") != std::string::npos);
  CHECK(r.out.find("Threshold level = 4") != std::string::npos);
}

TEST_CASE("simulate") {
  TempDir dir("cli_sim");
  Result r = invoke({"simulate", "abc", "-n", "12", "-s", "3", "--out", (dir / "d.txt").string()});
  CHECK(r.status == 0);
  const std::string text = slurp(dir / "d.txt");
  CHECK(std::count(text.begin(), text.end(), '\n') == 12);
  r = invoke({"simulate", "straightline", "-n", "4", "-s", "3"});
  CHECK(r.status == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);
}
