#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "dns/options.hpp"
#include "support/temp_dir.hpp"

using namespace dns;

namespace {

const std::string kClassicOptions =
    "# Sampler parameters\n"
    "# Put comments at the top, or at the end of the line.\n"
    "5\t# Number of particles\n"
    "10000\t# New level interval\n"
    "10000\t# Save interval\n"
    "100\t# Thread steps - how many steps each thread should do independently before "
    "communication\n"
    "0\t# Maximum number of levels\n"
    "10\t# Backtracking scale length (lambda)\n"
    "100\t# Strength of effect to force histogram to equal push (beta)\n"
    "10000\t# Maximum number of saves (0 = infinite)\n";

}  // namespace

TEST_CASE("the standard OPTIONS block") {
  const Options o = parse_options(kClassicOptions);
  CHECK(o.num_particles == 5);
  CHECK(o.new_level_interval == 10000);
  CHECK(o.save_interval == 10000);
  CHECK(o.thread_steps == 100);
  CHECK(o.max_num_levels == 0);
  CHECK(o.lambda == 10.0);
  CHECK(o.beta == 100.0);
  CHECK(o.max_num_saves == 10000);
  CHECK(o.compression == std::numbers::e);
  CHECK(o.num_threads == 1);
  CHECK_FALSE(o.seed.has_value());
  CHECK(o.automatic_levels());
}

TEST_CASE("trailing comments and blank lines") {
  const Options o = parse_options("\n1\n100\n100 # save\n\n10\n30\n10 # Backtracking scale length\n"
                                  "0\n50\n");
  CHECK(o.num_particles == 1);
  CHECK(o.max_num_levels == 30);
  CHECK(o.lambda == 10.0);
  CHECK(o.beta == 0.0);
}

TEST_CASE("malformed OPTIONS") {
  CHECK_THROWS_WITH_AS(parse_options("5\n10000\n10000\n100\n0\n10\n100\n"),
                       doctest::Contains("expected 8 option values"), OptionsError);
  CHECK_THROWS_WITH_AS(parse_options("5\n10000\n10000\n100\n0\n10\n100\n1\n2\n"),
                       doctest::Contains("expected 8 option values"), OptionsError);
  CHECK_THROWS_WITH_AS(parse_options("5\n10000\nten\n100\n0\n10\n100\n10\n"),
                       doctest::Contains("line 3"), OptionsError);
  CHECK_THROWS_AS(parse_options("5\n10000\n10000\n100\n0\n10\n100\n10.5\n"), OptionsError);
  CHECK_THROWS_AS(parse_options("5 6\n10000\n10000\n100\n0\n10\n100\n10\n"), OptionsError);
  CHECK_THROWS_AS(parse_options("0\n10000\n10000\n100\n0\n10\n100\n10\n"), OptionsError);
  CHECK_THROWS_AS(parse_options("5\n10\n10000\n100\n0\n10\n100\n10\n"), OptionsError);
  CHECK_THROWS_AS(parse_options("5\n10000\n10000\n100\n0\n-1\n100\n10\n"), OptionsError);
}

TEST_CASE("compression constraints") {
  Options o;
  o.compression = 10.0;
  CHECK_THROWS_WITH_AS(o.validate(), doctest::Contains("maximum number of levels"), OptionsError);
  o.max_num_levels = 20;
  CHECK_NOTHROW(o.validate());
  o.compression = 1.0;
  CHECK_THROWS_AS(o.validate(), OptionsError);
  o.compression = 10.0;
  o.num_threads = 0;
  CHECK_THROWS_AS(o.validate(), OptionsError);
}

TEST_CASE("load_options") {
  dns::testing::TempDir dir("options");
  dns::testing::write_file(dir / "OPTIONS", kClassicOptions);
  CHECK(load_options(dir / "OPTIONS").max_num_saves == 10000);
  CHECK_THROWS_AS(load_options(dir / "missing"), OptionsError);
}
