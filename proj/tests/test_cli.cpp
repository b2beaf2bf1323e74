#include <doctest.h>

#include <string>
#include <vector>

#include "cli.hpp"
#include "dbarlab/error.hpp"

using namespace dbarlab;
using namespace dbarlab::cli;

namespace {

int run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "dbarlab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run(static_cast<int>(argv.size()), argv.data());
}

GlobalOptions csv() {
  GlobalOptions g;
  g.format = Format::csv;
  return g;
}

}  // namespace

TEST_CASE("constants subcommand values") {
  ConstantsOptions s;
  s.salpha = true;
  s.alpha = 0.6666667;
  CHECK(cmd_constants(s, csv()).stdout_text == "name,value\nS_alpha,0.1047565169\n");

  ConstantsOptions k;
  k.kappa = true;
  k.n = 3;
  CHECK(cmd_constants(k, csv()).stdout_text == "name,value\nkappa_n,0.0833333333333\n");

  ConstantsOptions m;
  m.m_comparison = true;
  m.n = 2;
  CHECK(cmd_constants(m, csv()).stdout_text == "name,value\nM_comparison,0.25\n");

  ConstantsOptions bad;
  bad.salpha = true;
  bad.alpha = 1.0;
  CHECK_THROWS_AS(cmd_constants(bad, csv()), InvalidParameter);
}

TEST_CASE("solve subcommand") {
  SolveOptions zero;
  zero.n_r = zero.n_t = 32;
  const CommandResult z = cmd_solve(zero, csv());
  CHECK(z.exit_code == kExitPass);
  CHECK(z.stdout_text.find("sup_abs,0\n") != std::string::npos);
  CHECK(z.files.count("field.csv") == 1);
  CHECK(z.files.count("trace.jsonl") == 1);

  SolveOptions capped;
  capped.b = 0.01;
  capped.n_r = capped.n_t = 32;
  capped.max_iter = 2;
  CHECK(cmd_solve(capped, csv()).exit_code == kExitFailure);

  SolveOptions bad;
  bad.alpha = 1.0;
  CHECK_THROWS_AS(cmd_solve(bad, csv()), InvalidParameter);
}

TEST_CASE("verify exit codes") {
  VerificationReport pass, fail, hyp;
  pass.status = CheckStatus::passed;
  fail.status = CheckStatus::failed;
  hyp.status = CheckStatus::hypotheses_not_met;
  VerificationReport inc;
  CHECK(exit_code_for({pass, pass}, true) == kExitPass);
  CHECK(exit_code_for({pass, hyp}, false) == kExitPass);
  CHECK(exit_code_for({pass, hyp}, true) == kExitHypotheses);
  CHECK(exit_code_for({hyp, fail}, true) == kExitFailure);
  CHECK(exit_code_for({inc}, false) == kExitFailure);

  VerifyOptions nss;
  nss.suite = "nss";
  nss.family = "example22";
  CHECK(cmd_verify(nss, csv()).exit_code == kExitPass);

  VerifyOptions c1;
  c1.suite = "nss";
  c1.eps = 0.0;  // C^1 breakpoints fail the discrete residual hypothesis
  GlobalOptions strict = csv();
  strict.strict = true;
  CHECK(cmd_verify(c1, csv()).exit_code == kExitPass);
  CHECK(cmd_verify(c1, strict).exit_code == kExitHypotheses);

  VerifyOptions inv;
  inv.suite = "inverse";
  inv.r = 1.5;
  CHECK_THROWS_AS(cmd_verify(inv, csv()), InvalidParameter);
}

TEST_CASE("verify output is deterministic for a seed") {
  VerifyOptions o;
  o.suite = "ode";
  o.trials = 30;
  GlobalOptions g;
  g.seed = 11;
  const CommandResult a = cmd_verify(o, g);
  const CommandResult b = cmd_verify(o, g);
  CHECK(a.stdout_text == b.stdout_text);
  CHECK(a.files == b.files);
  g.seed = 12;
  CHECK(cmd_verify(o, g).stdout_text != a.stdout_text);
}

TEST_CASE("command line parsing and exit codes") {
  CHECK(run_args({"constants", "--salpha", "--alpha", "0.5"}) == kExitPass);
  CHECK(run_args({"constants", "--salpha", "--alpha", "1.5"}) == kExitInvalid);
  CHECK(run_args({"verify", "--suite", "nope"}) == kExitInvalid);
  CHECK(run_args({"verify", "--unknown-key", "1"}) == kExitInvalid);
  CHECK(run_args({"verify", "--suite", "inverse", "--r", "1.5"}) == kExitInvalid);
  CHECK(run_args({"verify", "--suite", "inverse", "--z1", "0,1,0.01", "--format", "csv"}) == kExitPass);
  CHECK(run_args({"--strict", "verify", "--suite", "nss", "--eps", "0"}) == kExitHypotheses);
  CHECK(run_args({"verify", "--suite", "nss", "--strict", "--eps", "0"}) == kExitHypotheses);
}
