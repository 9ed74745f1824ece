#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "gradlie/cartan.hpp"
#include "gradlie/jsonio.hpp"
#include "gradlie/melikyan.hpp"

using namespace gradlie;

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

// Runs the built binary through the shell; GRADLIE_CLI_PATH is injected by the
// build so pipelines like `construct ... | verify -` can be exercised as-is.
RunResult run(const std::string& args) {
  std::string cmd = "GRADLIE_CLI=" GRADLIE_CLI_PATH " ; " + args + " 2>&1";
  std::array<char, 4096> buf;
  RunResult r{-1, {}};
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = std::string("/tmp/gradlie_cli_") + name;
  std::ofstream out(path);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("document round trip is bit exact") {
  GradedLieAlgebra W = build_W(1, {1}, 5);
  std::string text = serialize(W);
  ParsedAlgebra doc = parse_algebra(text);
  REQUIRE(doc.graded());
  CHECK(doc.alg.dim == W.alg.dim);
  CHECK(doc.alg.p == W.alg.p);
  CHECK(doc.alg.labels == W.alg.labels);
  CHECK(*doc.degree == W.degree);
  for (u32 i = 0; i < W.alg.dim; ++i)
    for (u32 j = i + 1; j < W.alg.dim; ++j)
      CHECK(doc.alg.bracket_basis(i, j) == W.alg.bracket_basis(i, j));
  CHECK(serialize(doc.graded_algebra()) == text);

  // Ungraded documents omit the grading field and still round trip.
  std::string bare = serialize(W.alg);
  CHECK(bare.find("grading") == std::string::npos);
  ParsedAlgebra flat = parse_algebra(bare);
  CHECK_FALSE(flat.graded());
  CHECK(serialize(flat.alg) == bare);
}

TEST_CASE("schema violations are rejected") {
  std::string good = serialize(build_W(1, {1}, 5));
  CHECK_NOTHROW(parse_algebra(good));

  auto expect_error = [](const std::string& text, const std::string& needle) {
    try {
      parse_algebra(text);
      FAIL_CHECK("expected a schema error containing: ", needle);
    } catch (const ParseError& e) {
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
    }
  };

  expect_error("not json at all", "JSON");
  expect_error(R"({"format_version":"gradlie/2","p":5,"dim":0,"labels":[],"table":[]})",
               "format_version");
  expect_error(R"({"format_version":"gradlie/1","p":6,"dim":0,"labels":[],"table":[]})",
               "prime");
  expect_error(R"({"format_version":"gradlie/1","p":5,"dim":2,"labels":["a"],"table":[]})",
               "labels");
  // Duplicate (0, 1) key.
  expect_error(R"({"format_version":"gradlie/1","p":5,"dim":2,"labels":["a","b"],
                   "table":[[0,1,[[0,1]]],[0,1,[[1,1]]]]})",
               "duplicate");
  // Zero coefficients must be omitted, and values must be reduced mod p.
  expect_error(R"({"format_version":"gradlie/1","p":5,"dim":2,"labels":["a","b"],
                   "table":[[0,1,[[0,0]]]]})",
               "nonzero");
  expect_error(R"({"format_version":"gradlie/1","p":5,"dim":2,"labels":["a","b"],
                   "table":[[0,1,[[0,7]]]]})",
               "reduced");
  expect_error(R"({"format_version":"gradlie/1","p":5,"dim":2,"labels":["a","b"],
                   "table":[[1,0,[[0,1]]]]})",
               "i < j");
  expect_error(R"({"format_version":"gradlie/1","p":5,"dim":2,"labels":["a","b"],
                   "table":[[0,1,[[2,1]]]]})",
               "range");
  expect_error(R"({"format_version":"gradlie/1","p":5,"dim":2,"labels":["a","b"],
                   "grading":[1],"table":[]})",
               "grading");
}

TEST_CASE("construct verify pipeline") {
  RunResult r = run("$GRADLIE_CLI construct W:2:1,1 --p 5 | $GRADLIE_CLI verify -");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("structure: clean") != std::string::npos);
  CHECK(r.output.find("grading: clean") != std::string::npos);

  // Constructed output is the canonical serialization.
  RunResult doc = run("$GRADLIE_CLI construct H2:2:1,1 --p 5");
  CHECK(doc.exit_code == 0);
  CHECK(doc.output == serialize(build_H(2, {1, 1}, 5, CartanFamily::H2)));

  RunResult rev = run("$GRADLIE_CLI construct K1:3:1,1,1 --reverse-grading | "
                      "$GRADLIE_CLI verify -");
  CHECK(rev.exit_code == 4);  // reversed contact grading fails a hypothesis
  CHECK(rev.output.find("structure: clean") != std::string::npos);

  RunResult classical = run("$GRADLIE_CLI construct classical:G:2:simple:1 --p 7 | "
                            "$GRADLIE_CLI verify -");
  CHECK(classical.exit_code == 0);
}

TEST_CASE("recognize command") {
  RunResult mel = run("$GRADLIE_CLI construct melikyan:1:1 | $GRADLIE_CLI recognize -");
  CHECK(mel.exit_code == 0);
  CHECK(mel.output == "M(2;(1,1)) natural\n");

  RunResult cls = run("$GRADLIE_CLI construct classical:A:2:simple:1 | $GRADLIE_CLI recognize -");
  CHECK(cls.exit_code == 0);
  CHECK(cls.output == "A_2 standard node 1\n");

  // Too small a cap: sound algebra, no catalog entry.
  RunResult miss = run("$GRADLIE_CLI construct W:2:1,1 | $GRADLIE_CLI recognize - --cap 40");
  CHECK(miss.exit_code == 5);
  CHECK(miss.output.find("unrecognized") != std::string::npos);
}

TEST_CASE("failure exit codes") {
  RunResult usage = run("$GRADLIE_CLI construct X:9:1");
  CHECK(usage.exit_code == 1);

  std::string bad_json = write_temp("bad.json", "{ definitely not json");
  RunResult parse_fail = run("$GRADLIE_CLI verify " + bad_json);
  CHECK(parse_fail.exit_code == 2);

  // Valid schema, broken Jacobi identity: [a,b] = c, [a,c] = a, [b,c] = b
  // leaves [[a,b],c] + [[b,c],a] + [[c,a],b] = -2c.
  std::string broken = write_temp(
      "broken.json",
      R"({"format_version":"gradlie/1","p":5,"dim":3,"labels":["a","b","c"],
          "table":[[0,1,[[2,1]]],[0,2,[[0,1]]],[1,2,[[1,1]]]]})");
  RunResult axiom = run("$GRADLIE_CLI verify " + broken);
  CHECK(axiom.exit_code == 3);
  CHECK(axiom.output.find("triple") != std::string::npos);
  // Radical and friends refuse the same input unless told not to verify.
  CHECK(run("$GRADLIE_CLI radical " + broken).exit_code == 3);

  // A graded algebra violating 1-transitivity: sl2 with a central line in
  // degree -2.
  std::string hyp = write_temp(
      "hyp.json",
      R"({"format_version":"gradlie/1","p":5,"dim":4,"labels":["e","h","f","z"],
          "grading":[1,0,-1,-2],
          "table":[[0,1,[[0,3]]],[0,2,[[1,1]]],[1,2,[[2,3]]]]})");
  CHECK(run("$GRADLIE_CLI verify " + hyp).exit_code == 4);
  RunResult rec = run("$GRADLIE_CLI recognize " + hyp);
  CHECK(rec.exit_code == 4);
  CHECK(rec.output.find("hypotheses fail") != std::string::npos);

  // The environment cap bounds constructions.
  RunResult capped = run("GRADLIE_CAP=20 $GRADLIE_CLI construct W:2:1,1");
  CHECK(capped.exit_code == 6);
}

TEST_CASE("radical minimal-ideal decompose catalog") {
  RunResult rad = run("$GRADLIE_CLI construct W:1:1 | $GRADLIE_CLI radical -");
  CHECK(rad.exit_code == 0);
  CHECK(rad.output.find("radical dimension: 0") != std::string::npos);

  RunResult mi = run("$GRADLIE_CLI construct CS:3:1,1,1 | $GRADLIE_CLI minimal-ideal -");
  CHECK(mi.exit_code == 0);
  CHECK(mi.output.find("minimal ideal dimension: 248") != std::string::npos);

  RunResult dec = run("$GRADLIE_CLI construct W:2:1,1 | $GRADLIE_CLI decompose - --degree 1");
  CHECK(dec.exit_code == 0);
  CHECK(dec.output.find("component degree 1: dimension 6") != std::string::npos);
  CHECK(dec.output.find("composition series dims:") != std::string::npos);

  RunResult cat = run("$GRADLIE_CLI catalog --p 5 --cap 64 --collisions");
  CHECK(cat.exit_code == 0);
  CHECK(cat.output.find("W(1;(1)) natural | ") != std::string::npos);
  CHECK(cat.output.find("A_1 standard node 1 | ") != std::string::npos);
  CHECK(cat.output.find("collisions: none") != std::string::npos);
}
