#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "finverify/fd_solver.hpp"

namespace finverify::numerics {
namespace {

using catalog::FamilySpec;

GridRun family3_run(int n) {
  GridRun run;
  run.x_lo = 2.0;
  run.x_hi = 3.0;
  run.n = n;
  run.t0 = 0.0;
  run.t1 = 0.1;
  run.family = FamilySpec::cubic(3);
  return run;
}

TEST(FdSolve, Family3TracksExactSolution) {
  const FdResult r = fd_solve(family3_run(201));
  EXPECT_LT(r.max_error, 1e-3);
  EXPECT_GT(r.steps, 0);
  EXPECT_EQ(r.x.size(), 201u);
  EXPECT_EQ(r.snapshots.size(), 2u);
  EXPECT_DOUBLE_EQ(r.snapshots.back().t, 0.1);
}

TEST(FdSolve, StationaryFamilyStaysPut) {
  GridRun run;
  run.x_lo = -1.4;
  run.x_hi = -0.4;
  run.n = 101;
  run.t0 = 0.0;
  run.t1 = 0.5;
  run.family = FamilySpec::family1(0.0);
  const FdResult r = fd_solve(run);
  EXPECT_LT(r.max_error, 1e-4);
  EXPECT_LT(r.drift, 1e-4);
}

TEST(FdSolve, ThreePointGridRuns) {
  const FdResult r = fd_solve(family3_run(3));
  EXPECT_EQ(r.x.size(), 3u);
  EXPECT_TRUE(std::isfinite(r.max_error));
}

TEST(FdSolve, ZeroSpanIsExact) {
  GridRun run = family3_run(51);
  run.t1 = run.t0;
  const FdResult r = fd_solve(run);
  EXPECT_EQ(r.max_error, 0.0);
  EXPECT_EQ(r.steps, 0);
}

TEST(FdSolve, BadArguments) {
  EXPECT_THROW(fd_solve(family3_run(2)), DomainError);
  GridRun run = family3_run(11);
  run.t1 = -1.0;
  EXPECT_THROW(fd_solve(run), DomainError);
}

TEST(FdSolve, HalvingTheStepBarelyMoves) {
  GridRun run = family3_run(41);
  const FdResult a = fd_solve(run);
  run.safety = 0.2;
  const FdResult b = fd_solve(run);
  double diff = 0.0;
  for (std::size_t i = 0; i < a.final_field().size(); ++i) {
    diff = std::max(diff, std::abs(a.final_field()[i] - b.final_field()[i]));
  }
  EXPECT_LT(diff, 1e-6);
}

TEST(FdSolve, PoleInsideBoxIsDomainBreach) {
  GridRun run = family3_run(21);
  run.t1 = 1.0;  // crosses t = pi / 4
  EXPECT_THROW(fd_solve(run), DomainBreach);
}

TEST(FdSolve, OversizedFixedStepRejected) {
  GridRun run = family3_run(101);
  run.dt = 1e-2;
  EXPECT_THROW(fd_solve(run), StabilityViolation);
}

TEST(FdSolve, CsvOutput) {
  GridRun run = family3_run(5);
  run.snapshots = 3;
  const FdResult r = fd_solve(run);
  std::ostringstream os;
  r.write_csv(os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "t,x,u_numeric,u_exact,abs_error");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 15);
}

TEST(Convergence, SecondOrderInSpace) {
  const ConvergenceReport rep = convergence_study(family3_run(0), {21, 41, 81});
  ASSERT_EQ(rep.orders.size(), 2u);
  for (double p : rep.orders) {
    EXPECT_GE(p, 1.7);
    EXPECT_LE(p, 2.3);
  }

  GridRun f2;
  f2.x_lo = -3.0;
  f2.x_hi = -1.0;
  f2.t0 = 0.5;
  f2.t1 = 1.0;
  f2.family = FamilySpec::cubic(2);
  const ConvergenceReport rep2 = convergence_study(f2, {21, 41, 81});
  for (double p : rep2.orders) {
    EXPECT_GE(p, 1.7);
    EXPECT_LE(p, 2.3);
  }
}

TEST(Convergence, NeedsThreeIncreasingSizes) {
  EXPECT_THROW(convergence_study(family3_run(0), {21, 41}), DomainError);
  EXPECT_THROW(convergence_study(family3_run(0), {41, 21, 81}), DomainError);
}

}  // namespace
}  // namespace finverify::numerics
