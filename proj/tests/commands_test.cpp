#include <doctest.h>

#include <fstream>
#include <sstream>

#include "stlobs/commands.hpp"

using namespace stlobs;
using namespace stlobs::cli;

namespace {

namespace fs = std::filesystem;

struct Run {
  int rc;
  std::string out, err;
};

template <typename Config, typename Cmd>
Run run(Cmd cmd, const Config& config, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int rc = cmd(config, Streams{in, out, err});
  return {rc, out.str(), err.str()};
}

CheckConfig check_config(const std::string& formula) {
  CheckConfig c;
  c.formula.text = formula;
  return c;
}

OracleConfig oracle_config(const std::string& formula) {
  OracleConfig c;
  c.formula.text = formula;
  return c;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(STLOBS_TEST_TMP) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

bool contains(const std::string& s, const std::string& part) {
  return s.find(part) != std::string::npos;
}

}  // namespace

TEST_SUITE("commands") {

TEST_CASE("check exit codes follow the final verdict") {
  const Run u = run(cmd_check, check_config("G[0,10](x > 0)"), "x\n1\n1\n1\n1\n1\n1\n1\n1\n1\n");
  CHECK(u.rc == exit_code::undetermined);
  CHECK(contains(u.out, "tick=8 verdict=U pos=0 neg=0\n"));

  auto early = check_config("F[2,4](x > 0)");
  early.early_stop = true;
  const Run t = run(cmd_check, early, "x\n0\n0\n0\n1\n0\n0\n");
  CHECK(t.rc == exit_code::satisfied);
  CHECK(t.out ==
        "tick=0 verdict=U pos=0 neg=0\ntick=1 verdict=U pos=0 neg=0\n"
        "tick=2 verdict=U pos=0 neg=0\ntick=3 verdict=T pos=1 neg=0\n");

  const Run f = run(cmd_check, check_config("G[0,2](x > 0)"), "x\n1\n-1\n");
  CHECK(f.rc == exit_code::violated);

  const Run empty = run(cmd_check, check_config("x > 0"), "x\n");
  CHECK(empty.rc == exit_code::undetermined);
  CHECK(empty.out.empty());
}

TEST_CASE("check errors") {
  CHECK(run(cmd_check, check_config("G[0,5](F[1,2](x>0))"), "x\n1\n").rc == exit_code::usage);
  CHECK(run(cmd_check, check_config("G[0,5](y > 0)"), "x\n1\n").rc == exit_code::usage);
  CHECK(run(cmd_check, CheckConfig{}, "x\n1\n").rc == exit_code::usage);
  CHECK(run(cmd_check, check_config("x > 0"), "x\n1\nfoo\n").rc == exit_code::data);
  CHECK(run(cmd_check, check_config("x > 0"), "").rc == exit_code::data);

  auto missing = check_config("x > 0");
  missing.trace.path = "/nonexistent/trace.csv";
  CHECK(run(cmd_check, missing, "").rc == exit_code::no_input);

  auto no_formula = CheckConfig{};
  no_formula.formula.file = "/nonexistent/formula.stl";
  CHECK(run(cmd_check, no_formula, "x\n1\n").rc == exit_code::no_input);

  auto declared = check_config("x > 0");
  declared.trace.signals = {"x", "z"};
  const Run d = run(cmd_check, declared, "x\n1\n");
  CHECK(d.rc == exit_code::data);
  CHECK(contains(d.err, "'z'"));
}

TEST_CASE("check streams csv and jsonl") {
  auto c = check_config("x > 0");
  c.format = io::VerdictFormat::csv;
  CHECK(run(cmd_check, c, "x\n1\n").out == "tick,verdict,pos,neg\n0,T,1,0\n");

  auto j = check_config("F[0,1](x > 0)");
  j.trace.format = TraceFormat::jsonl;
  j.format = io::VerdictFormat::jsonl;
  const Run r = run(cmd_check, j, "{\"x\":0}\n\n{\"x\":1}\n");
  CHECK(r.rc == exit_code::satisfied);
  CHECK(r.out ==
        "{\"tick\":0,\"verdict\":\"U\",\"pos\":0,\"neg\":0}\n"
        "{\"tick\":1,\"verdict\":\"T\",\"pos\":1,\"neg\":0}\n");
  CHECK(contains(r.err, "warning"));
}

TEST_CASE("check reads files") {
  const auto dir = scratch("commands_files");
  std::ofstream(dir / "f.stl") << "(x > 0) U[1,3] (y <= 2)\n";
  std::ofstream(dir / "t.csv") << "x,y\n1,5\n1,5\n1,1\n";
  CheckConfig c;
  c.formula.file = dir / "f.stl";
  c.trace.path = (dir / "t.csv").string();
  const Run r = run(cmd_check, c);
  CHECK(r.rc == exit_code::satisfied);
}

TEST_CASE("oracle") {
  const Run ok = run(cmd_oracle, oracle_config("(x > 0) U[1,3] (y <= 2)"),
                     "x,y\n1,5\n0,5\n1,1\n1,1\n");
  CHECK(ok.rc == 0);
  CHECK(contains(ok.out, "offline: false"));
  CHECK(contains(ok.out, "CONFORMS"));

  const Run short_trace = run(cmd_oracle, oracle_config("G[0,10](x > 0)"), "x\n1\n1\n");
  CHECK(short_trace.rc == exit_code::data);
  CHECK(contains(short_trace.err, "too short"));

  auto mutated = oracle_config("F[0,3](x > 0)");
  mutated.compile.mutation = Mutation::drop_latch;
  const Run bad = run(cmd_oracle, mutated, "x\n0\n1\n0\n0\n");
  CHECK(bad.rc == 1);
  CHECK(contains(bad.out, "MISMATCH: first divergent tick 2"));
}

TEST_CASE("selfcheck") {
  SelfcheckConfig c;
  c.max_b = 2;
  c.cases = 100;
  const Run ok = run(cmd_selfcheck, c);
  CHECK(ok.rc == 0);
  CHECK(contains(ok.out, "== property suite"));
  CHECK(contains(ok.out, "selfcheck passed"));

  c.cases = 0;
  const Run sweep = run(cmd_selfcheck, c);
  CHECK(sweep.rc == 0);
  CHECK_FALSE(contains(sweep.out, "property suite"));

  c.json = true;
  const Run json = run(cmd_selfcheck, c);
  CHECK(json.rc == 0);
  CHECK(contains(json.out, "{\"section\":\"differential sweep\""));

  c.json = false;
  c.mutation = Mutation::drop_latch;
  CHECK(run(cmd_selfcheck, c).rc == 1);

  c.max_b = 1;
  CHECK(run(cmd_selfcheck, c).rc == exit_code::usage);
}

TEST_CASE("emit-lustre") {
  const auto dir = scratch("emit");
  EmitConfig c;
  c.out_dir = dir / "plain";
  const Run plain = run(cmd_emit_lustre, c);
  CHECK(plain.rc == 0);
  int files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(c.out_dir)) ++files;
  CHECK(files == 4);

  c.out_dir = dir / "proofs";
  c.with_proofs = true;
  c.run_checker = true;
  c.checker_path = (dir / "no-such-checker").string();
  const Run proofs = run(cmd_emit_lustre, c);
  CHECK(proofs.rc == 0);
  CHECK(contains(proofs.out, "checker skipped"));
  for (const char* n : {"proof_ev_true.lus", "proof_ev_false.lus", "proof_alw_true.lus",
                        "proof_alw_false.lus", "proof_until_true.lus", "proof_until_false.lus"}) {
    CHECK(fs::exists(c.out_dir / n));
  }

  std::ofstream(dir / "blocker") << "x";
  c.out_dir = dir / "blocker" / "sub";
  c.run_checker = false;
  CHECK(run(cmd_emit_lustre, c).rc == exit_code::io);
}

}
