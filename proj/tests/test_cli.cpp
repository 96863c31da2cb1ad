#include "support.hpp"

#include "equichain/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <sstream>
#include <sys/wait.h>

using namespace equichain;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& input = {}) {
  std::ostringstream out, err;
  std::istringstream in(input);
  Run r;
  r.code = cli::run(args, out, err, in);
  r.out = out.str();
  r.err = err.str();
  return r;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

const char* kNonGroup = R"({"group": {"order": 3, "table": [[0,1,2],[1,0,2],[2,2,0]]}, "cells": [1], "boundaries": [[]], "action": [[[[0,1]]],[[[0,1]]],[[[0,1]]]]})";

}  // namespace

TEST(Cli, HomologyOfCircleReflectionInvariants) {
  const auto r = run({"homology", "builtin:circle_reflection", "--which", "invariant", "--coeff", "z"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "\nH_1 = 0, H_0 = Z + Z/2\n")) << r.out;
}

TEST(Cli, HomologyVariants) {
  EXPECT_TRUE(contains(run({"homology", "builtin:sphere_reflection", "--which", "quotient"}).out, "H_2 = 0, H_1 = 0, H_0 = Z"));
  EXPECT_TRUE(contains(run({"homology", "builtin:sphere_reflection", "--which", "fixed", "--coeff", "zp:2"}).out, "H_2 = 0, H_1 = Z/2, H_0 = Z/2"));
  EXPECT_TRUE(contains(run({"homology", "builtin:lens_sphere:3", "--which", "invariant"}).out, "H_3 = Z, H_2 = 0, H_1 = Z/3, H_0 = Z"));
  EXPECT_TRUE(contains(run({"homology", "builtin:torus_diagonal:3", "--coeff", "q"}).out, "H_2 = Z, H_1 = Z^2, H_0 = Z"));
  EXPECT_EQ(run({"homology", "builtin:point:2", "--which", "sideways"}).code, 2);
  EXPECT_EQ(run({"homology", "builtin:point:2", "--coeff", "zp:4"}).code, 2);
}

TEST(Cli, CollapseCheckOnSphereReflection) {
  const auto r = run({"check", "collapse", "builtin:sphere_reflection"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "[pass] E2 = Einf"));
}

TEST(Cli, NonGroupTableIsAnInputError) {
  const auto r = run({"validate", "-"}, kNonGroup);
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "multiplication table not associative at (")) << r.err;
}

TEST(Cli, MalformedDocumentNamesTheField) {
  const auto r = run({"validate", "-"}, R"({"group": {"cyclic": 2}, "cells": "many"})");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "field 'cells'")) << r.err;
  const auto bad_json = run({"homology", "-"}, "{ not json");
  EXPECT_EQ(bad_json.code, 2);
  const auto missing = run({"validate", "/nonexistent/file.json"});
  EXPECT_EQ(missing.code, 2);
}

TEST(Cli, InvalidComplexFailsValidation) {
  const auto r = run({"validate", "-"}, R"({"group": {"cyclic": 1}, "cells": [1, 1, 1], "boundaries": [[[1]], [[1]]]})");
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.out, "square of boundary nonzero at dim 2, cell 0")) << r.out;
  // Other subcommands refuse invalid input.
  EXPECT_EQ(run({"homology", "-"}, R"({"group": {"cyclic": 1}, "cells": [1, 1, 1], "boundaries": [[[1]], [[1]]]})").code, 2);
}

TEST(Cli, ValidateBuiltins) {
  for (const auto& name : spaces::builtin_corpus()) EXPECT_EQ(run({"validate", "builtin:" + name}).code, 0) << name;
}

TEST(Cli, UnknownBuiltinIsAnInputError) {
  const auto r = run({"les", "builtin:moebius"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "UnknownName"));
}

TEST(Cli, ChecksAndExitCodes) {
  EXPECT_EQ(run({"check", "smith", "builtin:sphere_reflection"}).code, 0);
  const auto conner = run({"check", "conner", "builtin:sphere_reflection"});
  EXPECT_EQ(conner.code, 0);
  EXPECT_TRUE(contains(conner.out, "[inapplicable]"));
  EXPECT_EQ(run({"check", "conner", "builtin:cone_of:circle_rotation:3"}).code, 0);
  EXPECT_EQ(run({"check", "coprime:3", "builtin:sphere_reflection"}).code, 0);
  EXPECT_EQ(run({"check", "coprime:2", "builtin:sphere_reflection"}).code, 2);
  EXPECT_EQ(run({"check", "free", "builtin:lens_sphere:5"}).code, 0);
  EXPECT_EQ(run({"check", "free", "builtin:circle_reflection"}).code, 2);
  EXPECT_EQ(run({"check", "nonsense", "builtin:circle_reflection"}).code, 2);
  EXPECT_EQ(run({"les", "builtin:circle_rotation:4"}).code, 2);
}

TEST(Cli, LesHyperPages) {
  const auto les = run({"les", "builtin:sphere_reflection", "--top", "3"});
  EXPECT_EQ(les.code, 0);
  EXPECT_TRUE(contains(les.out, "H_4(X^G;Z/2) = 0"));
  EXPECT_TRUE(contains(les.out, "[pass] exact at H_0(G,X)"));
  const auto hyper = run({"hyper", "builtin:cone_of:circle_rotation:3", "--range", "-4..1"});
  EXPECT_EQ(hyper.code, 0);
  EXPECT_TRUE(contains(hyper.out, "S_0 = Z\nS_-1 = 0\nS_-2 = Z/3\n")) << hyper.out;
  const auto pages = run({"pages", "builtin:sphere_reflection", "--filtration", "II", "--page", "2", "--coeff", "zp:2"});
  EXPECT_EQ(pages.code, 0);
  EXPECT_TRUE(contains(pages.out, "E2 filtration II over Z/2"));
  EXPECT_EQ(run({"pages", "builtin:sphere_reflection", "--coeff", "z"}).code, 2);
  EXPECT_EQ(run({"hyper", "builtin:point:3", "--range", "3..1"}).code, 2);
}

TEST(Cli, RoundTripThroughEmit) {
  const std::vector<std::vector<std::string>> commands = {
      {"validate"}, {"homology", "--which", "invariant"}, {"homology", "--which", "fixed", "--coeff", "zp:2"}, {"les"},
      {"hyper", "--range", "-3..1", "--coeff", "zp:2"}, {"pages", "--coeff", "zp:2", "--page", "1"}, {"check", "smith"},
      {"check", "collapse"}};
  for (const std::string name : {"sphere_reflection", "circle_reflection", "lens_sphere:2", "cone_of:circle_rotation:2",
                                 "cross_polytope_sphere:2:reflection"}) {
    std::vector<std::string> emit{"spaces", "emit"};
    for (const auto& part : spaces::split(name, ':')) emit.push_back(part);
    const auto doc = run(emit);
    ASSERT_EQ(doc.code, 0) << name;
    for (const auto& cmd : commands) {
      auto direct = cmd, piped = cmd;
      direct.insert(direct.begin() + (cmd[0] == "check" ? 2 : 1), "builtin:" + name);
      piped.insert(piped.begin() + (cmd[0] == "check" ? 2 : 1), "-");
      const auto a = run(direct);
      const auto b = run(piped, doc.out);
      EXPECT_EQ(a.code, b.code) << name << " " << cmd[0];
      EXPECT_EQ(a.out, b.out) << name << " " << cmd[0];
    }
  }
}

TEST(Cli, ReportsAreDeterministic) {
  for (const auto& args : std::vector<std::vector<std::string>>{{"les", "builtin:lens_sphere:3", "--json"},
                                                                {"check", "collapse", "--all-builtins"},
                                                                {"check", "smith", "--all-builtins", "--json"},
                                                                {"pages", "builtin:torus_diagonal:2", "--coeff", "zp:2", "--json"}}) {
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, 0);
  }
}

TEST(Cli, JsonReportShape) {
  const auto r = run({"--json", "check", "smith", "builtin:sphere_reflection"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(j.at("command"), "check smith");
  EXPECT_EQ(j.at("input").get<std::string>().size(), 16u);
  EXPECT_EQ(j.at("report").at("verdict"), "pass");
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"command", "input", "report"}));
  const auto les = nlohmann::ordered_json::parse(run({"les", "builtin:sphere_reflection", "--json"}).out);
  EXPECT_TRUE(les.contains("maps"));
}

TEST(Cli, BatchOutputIsSortedByName) {
  const auto r = run({"check", "collapse", "--all-builtins"});
  EXPECT_EQ(r.code, 0);
  std::vector<std::string> names;
  std::istringstream lines(r.out);
  for (std::string l; std::getline(lines, l);)
    if (l.rfind("== ", 0) == 0) names.push_back(l.substr(3));
  EXPECT_EQ(names, spaces::builtin_corpus());
}

TEST(Cli, FuzzBatchUsesSeedFromEnvironment) {
  ::setenv("EQUICHAIN_SEED", "41", 1);
  const auto r = run({"check", "collapse", "--fuzz", "5"});
  ::unsetenv("EQUICHAIN_SEED");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "== fuzz:41\n"));
  EXPECT_TRUE(contains(r.out, "== fuzz:45\n"));
  const auto emitted = run({"spaces", "emit", "fuzz", "41"});
  EXPECT_EQ(emitted.code, 0);
  EXPECT_EQ(run({"validate", "-"}, emitted.out).code, 0);
}

TEST(Cli, ConvertSimplicialDocuments) {
  const std::string doc = R"({"group": {"cyclic": 2}, "vertices": 2, "facets": [[0, 1]], "vertex_action": [[0, 1], [1, 0]]})";
  // The swapped edge is not admissible until subdivided.
  EXPECT_EQ(run({"convert", "-"}, doc).code, 2);
  const auto conv = run({"convert", "-", "--subdivide", "1"}, doc);
  ASSERT_EQ(conv.code, 0) << conv.err;
  EXPECT_EQ(run({"validate", "-"}, conv.out).code, 0);
  EXPECT_TRUE(contains(run({"homology", "-", "--which", "quotient"}, conv.out).out, "H_1 = 0, H_0 = Z"));
  EXPECT_EQ(run({"convert", "builtin:point:2"}).code, 2);
}

TEST(Cli, SpacesList) {
  const auto r = run({"spaces", "list"});
  EXPECT_EQ(r.code, 0);
  for (const auto& e : spaces::catalog()) EXPECT_TRUE(contains(r.out, e.name)) << e.name;
  EXPECT_EQ(run({"spaces", "emit", "nowhere"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(CliProcess, ExitCodesFromTheBinary) {
  auto status = [](const std::string& args) {
    const std::string cmd = std::string(EQUICHAIN_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("check collapse builtin:sphere_reflection"), 0);
  EXPECT_EQ(status("homology builtin:nothing"), 2);
  EXPECT_EQ(status("validate - < " + std::string(EQUICHAIN_TEST_DATA) + "/bad_boundary.json"), 1);
}
