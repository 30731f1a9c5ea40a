#include <sstream>

#include <gtest/gtest.h>

#include "gprig/io.hpp"
#include "gprig/solver1d.hpp"

using namespace gprig;

TEST(FormatDouble, SeventeenDigitsRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 1e300, 0.0, 0.81649658092772603}) {
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(ProfileCsv, RoundTripIsExact) {
  const ProfilePair p = newton_solve(Params(6.0), Grid1D(20.0, 401)).profile;
  std::stringstream ss;
  write_profile_csv(ss, p);
  const std::string text = ss.str();
  EXPECT_EQ(text.rfind("x,u,v\n", 0), 0u);
  const ProfilePair back = read_profile_csv(ss);
  EXPECT_EQ(back.grid, p.grid);
  EXPECT_EQ(back.u, p.u);
  EXPECT_EQ(back.v, p.v);
}

TEST(ProfileCsv, MalformedInputIsRejected) {
  std::stringstream no_header("1,2,3\n");
  EXPECT_THROW(read_profile_csv(no_header), Error);
  std::stringstream bad_number("x,u,v\n-1,0,1\n0,abc,0.5\n1,1,0\n");
  EXPECT_THROW(read_profile_csv(bad_number), Error);
  std::stringstream short_row("x,u,v\n-1,0,1\n0,0.5\n1,1,0\n");
  EXPECT_THROW(read_profile_csv(short_row), Error);
  std::stringstream too_few("x,u,v\n-1,0,1\n1,1,0\n");
  EXPECT_THROW(read_profile_csv(too_few), Error);
  std::stringstream uneven("x,u,v\n-1,0,1\n0.5,0.5,0.5\n1,1,0\n");
  EXPECT_THROW(read_profile_csv(uneven), Error);
  std::stringstream ok("x,u,v\n-1,0,1\n0,0.5,0.5\n1,1,0\n");
  EXPECT_EQ(read_profile_csv(ok).u[1], 0.5);
}

TEST(SlabCsv, HeaderAndLayout) {
  SlabField f(Axis::periodic(2.0, 2), Axis::dirichlet(Grid1D(1.0, 3)));
  f.set(1, 1, {0.25, 0.75});
  std::stringstream ss;
  write_slab_csv(ss, f);
  std::string line;
  std::getline(ss, line);
  EXPECT_EQ(line, "xp,xn,u,v");
  std::vector<std::string> rows;
  while (std::getline(ss, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], "-1,-1,0,1");
  EXPECT_EQ(rows[4], "0,0,0.25,0.75");
}

TEST(EnergyCsv, OneRowPerTraceEntry) {
  FlowOutcome out{SlabField(Axis::periodic(1.0, 1), Axis::periodic(1.0, 1)), 2, 0.0, true, 0.1, {3.0, 2.0, 1.5},
                  {0.0, 0.5, 0.25}};
  std::stringstream ss;
  write_energy_trace_csv(ss, out);
  EXPECT_EQ(ss.str(), "step,energy,update_norm\n0,3,0\n1,2,0.5\n2,1.5,0.25\n");
}

TEST(WriteFile, ReportsUnwritablePath) {
  EXPECT_THROW(write_file("/nonexistent-dir/x/y.csv", [](std::ostream& os) { os << "x"; }), Error);
}
