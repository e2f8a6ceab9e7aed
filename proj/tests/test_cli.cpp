#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "ecmc/model_io.hpp"

#include "test_util.hpp"

using testutil::CliResult;
using testutil::models_dir;
using testutil::run_cli;

namespace {

std::string circuit() { return models_dir() + "/circuit.json"; }

} // namespace

TEST_CASE("check evaluates at the actual state") {
    CHECK(run_cli("check " + circuit() + " \"[B:=1] S=1\"") ==
          CliResult{0, "true\n"});
    CHECK(run_cli("check " + circuit() + " \"K [B:=1] S=1\"") ==
          CliResult{0, "false\n"});
    CHECK(run_cli("check " + circuit() + " \"[B:=1] K S=1\"") ==
          CliResult{0, "false\n"});
}

TEST_CASE("check --all-points conjoins the verdicts") {
    CHECK(run_cli("check " + circuit() + " \"K ~S=1\" --all-points") ==
          CliResult{0, "true\n"});
    CHECK(run_cli("check " + circuit() + " \"C=1\" --all-points") ==
          CliResult{0, "false\n"});
}

TEST_CASE("check --trace explains the evaluation") {
    CliResult r = run_cli("check " + circuit() + " \"[B:=1] K S=1\" --trace");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "intervene | [B:=1] K S=1 | 2 | false\n"
                   "  know | K S=1 | 2 | false\n"
                   "    atom | S=1 | 2 | false\n"
                   "false\n");
}

TEST_CASE("deps prints edges and a topological order") {
    CHECK(run_cli("deps " + circuit()) ==
          CliResult{0, "edges:\n  B -> S\n  C -> S\norder: S\n"});
}

TEST_CASE("deps --verify-syntactic cross-checks the defining formulas") {
    CliResult r = run_cli("deps " + circuit() + " --verify-syntactic");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "edges:\n  B -> S\n  C -> S\norder: S\n"
                   "B ~> C: false\nB ~> S: true\nC ~> B: false\n"
                   "C ~> S: true\nS ~> B: false\nS ~> C: false\n");
}

TEST_CASE("deps rejects cyclic models naming the cycle") {
    CliResult r = run_cli("deps " + models_dir() + "/cyclic.json 2>&1");
    CHECK(r.exit_code == 4);
    CHECK(r.out.find("not recursive") != std::string::npos);
    CHECK(r.out.find("V1 -> V2 -> V1") != std::string::npos);
}

TEST_CASE("translate reduces to the basic fragment") {
    CHECK(run_cli("translate --mode reduce \"[C=1 !] K C=1\"") ==
          CliResult{0, "C=1 -> K (C=1 -> C=1 -> C=1)\n"});
    CHECK(run_cli("translate --mode tr1 \"[B:=1] (S=1 & C=1)\"") ==
          CliResult{0, "[B:=1] S=1 & [B:=1] C=1\n"});
}

TEST_CASE("translate handles the team-language modes") {
    CHECK(run_cli("translate --mode cod-e \"C=1 |> S=0\"") ==
          CliResult{0, "C=1 -> S=0\n"});
    CliResult tr = run_cli("translate --mode cod-tr \"dep(C; S)\" --model " + circuit());
    CHECK(tr.exit_code == 0);
    CHECK(tr.out.find("[C=") != std::string::npos); // announcements survive
    CHECK(tr.out.find("K ") != std::string::npos);
}

TEST_CASE("team-check evaluates the whole team") {
    CHECK(run_cli("team-check " + circuit() + " \"dep(C; S)\"") ==
          CliResult{0, "true\n"});
    CHECK(run_cli("team-check " + circuit() + " \"dep(B; C)\"") ==
          CliResult{0, "false\n"});
    CHECK(run_cli("team-check " + circuit() + " \"C=1 |> S=0\"") ==
          CliResult{0, "true\n"});
}

TEST_CASE("equiv reports counts and is deterministic") {
    CliResult once = run_cli("equiv --which reduction --count 25 --seed 12");
    CliResult twice = run_cli("equiv --which reduction --count 25 --seed 12");
    CHECK(once == CliResult{0, "25/25 equivalent\n"});
    CHECK(once == twice);
    CHECK(run_cli("equiv --which global --count 10 --seed 12") ==
          CliResult{0, "10/10 equivalent\n"});
    CHECK(run_cli("equiv --which local --count 10 --seed 12") ==
          CliResult{0, "10/10 equivalent\n"});
    CHECK(run_cli("equiv --which downward --count 10 --seed 12") ==
          CliResult{0, "10/10 equivalent\n"});
    CliResult axioms = run_cli("equiv --which axioms --count 3 --seed 12");
    CHECK(axioms == CliResult{0, "all instances valid (3 models)\n"});
}

TEST_CASE("gen writes a reloadable model and is seed-deterministic") {
    CliResult once = run_cli("gen --seed 5");
    CliResult twice = run_cli("gen --seed 5");
    CliResult other = run_cli("gen --seed 6");
    CHECK(once.exit_code == 0);
    CHECK(once == twice);
    CHECK(once.out != other.out);

    std::string path = "cli_gen_tmp.json";
    CliResult to_file = run_cli("gen --seed 5 --out " + path);
    CHECK(to_file.exit_code == 0);
    ecmc::LoadedModel m = ecmc::load_model_file(path);
    std::remove(path.c_str());
    CHECK(!m.team.empty());
    CHECK(m.actual.has_value());
}

TEST_CASE("failures map to documented exit codes") {
    CHECK(run_cli("check no_such_file.json \"B=1\" 2>/dev/null").exit_code == 2);
    CHECK(run_cli("check " + circuit() + " \"B=\" 2>/dev/null").exit_code == 3);
    CHECK(run_cli("check " + circuit() + " \"X=1\" 2>/dev/null").exit_code == 3);
    CHECK(run_cli("deps " + models_dir() + "/cyclic.json 2>/dev/null").exit_code == 4);
    CHECK(run_cli("frobnicate 2>/dev/null").exit_code == 6);
    CHECK(run_cli("check 2>/dev/null").exit_code == 6);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("caps are read from the environment") {
    CliResult r = run_cli("team-check " + circuit() + " \"C=0 \\\\/ C=1\" 2>/dev/null",
                          "ECMC_MAX_OR_TEAM=1");
    CHECK(r.exit_code == 5);
    CliResult ok = run_cli("team-check " + circuit() + " \"C=0 \\\\/ C=1\"");
    CHECK(ok == CliResult{0, "true\n"});
}
