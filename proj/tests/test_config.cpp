#include <sstream>

#include <gtest/gtest.h>

#include "gprig/config.hpp"

using namespace gprig;

TEST(RunConfig, DefaultsValidate) {
  const RunConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.n, 2001u);
  EXPECT_EQ(c.half_length, 20.0);
  const SuiteOptions o = c.suite();
  EXPECT_EQ(o.n, 2001u);
  EXPECT_EQ(o.flow.rng_seed, c.seed);
  EXPECT_TRUE(o.stages.gibbons);
}

TEST(RunConfig, IniRoundTripIsExact) {
  RunConfig c;
  c.lambda = 0.1 + 0.2;  // not representable in few digits
  c.n = 4001;
  c.solve.phase_pinning = false;
  c.mode = "liouville";
  c.out = "some/dir";
  c.stages = "profiles,counterexample";
  c.seed = 123456789012345ull;
  const std::string text = to_ini(c);
  RunConfig d;
  std::istringstream is(text);
  load_config(d, is);
  EXPECT_EQ(d.lambda, c.lambda);
  EXPECT_EQ(d.n, 4001u);
  EXPECT_FALSE(d.solve.phase_pinning);
  EXPECT_EQ(d.mode, "liouville");
  EXPECT_EQ(d.out, "some/dir");
  EXPECT_EQ(d.seed, c.seed);
  EXPECT_EQ(to_ini(d), text);
}

TEST(RunConfig, PartialFileKeepsDefaults) {
  RunConfig c;
  std::istringstream is("[model]\nlambda = 6\n\n[grid]\nn = 801\n");
  load_config(c, is);
  EXPECT_EQ(c.lambda, 6.0);
  EXPECT_EQ(c.n, 801u);
  EXPECT_EQ(c.half_length, 20.0);
}

TEST(RunConfig, ErrorsNameTheField) {
  auto message_of = [](const std::string& text) -> std::string {
    RunConfig c;
    std::istringstream is(text);
    try {
      load_config(c, is);
      c.validate();
    } catch (const Error& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_NE(message_of("[grid]\nn = 2\n").find("grid.n"), std::string::npos);
  EXPECT_NE(message_of("[grid]\nn = -5\n").find("grid.n"), std::string::npos);
  EXPECT_NE(message_of("[model]\nlambda = abc\n").find("model.lambda"), std::string::npos);
  EXPECT_NE(message_of("[model]\nlambda = -1\n").find("model.lambda"), std::string::npos);
  EXPECT_NE(message_of("[model]\ncolour = red\n").find("model.colour"), std::string::npos);
  EXPECT_NE(message_of("[relax]\nmode = sideways\n").find("relax.mode"), std::string::npos);
  EXPECT_NE(message_of("[solve]\nphase_pinning = maybe\n").find("solve.phase_pinning"), std::string::npos);
  EXPECT_NE(message_of("[verify]\nstages = profiles,bogus\n").find("verify.stages"), std::string::npos);
  EXPECT_NE(message_of("lambda = 3\n").find("section"), std::string::npos);
  EXPECT_NE(message_of("[model\nlambda = 3\n").find("malformed"), std::string::npos);
}

TEST(RunConfig, StageList) {
  const SuiteStages s = RunConfig::parse_stages("uniqueness,unit");
  EXPECT_TRUE(s.uniqueness);
  EXPECT_TRUE(s.unit);
  EXPECT_FALSE(s.profiles);
  EXPECT_FALSE(s.gibbons);
  EXPECT_THROW(RunConfig::parse_stages(""), Error);
}

TEST(RunConfig, SetByDottedName) {
  RunConfig c;
  set_config_value(c, "flow.steady_tol", "1e-6");
  set_config_value(c, "box.n", "32");
  EXPECT_EQ(c.steady_tol, 1e-6);
  EXPECT_EQ(c.box_n, 32u);
  EXPECT_EQ(c.suite().box_n, 32u);
  EXPECT_THROW(set_config_value(c, "nope.key", "1"), Error);
}
