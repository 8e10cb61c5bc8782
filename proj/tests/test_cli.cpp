#include "doctest.h"

#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "chiral/acceptance.hpp"
#include "chiral/errors.hpp"
#include "chiral/io.hpp"

using namespace chiral;

namespace {

const std::string data = std::string(CHIRAL_DATA_DIR) + "/";
const std::string tmp = std::string(CHIRAL_TMP_DIR) + "/";

int run(const std::string& args) {
  const std::string cmd = std::string(CHIRAL_CLI) + " " + args + " >/dev/null 2>&1";
  const int s = std::system(cmd.c_str());
  return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
}

}  // namespace

TEST_CASE("check exit codes") {
  CHECK(run("check " + data + "beta_gamma1.json") == 0);
  CHECK(run("check " + data + "kks_gl2.json") == 0);
  CHECK(run("check " + data + "fixtures/corrupt_bracket.json") == 1);
  CHECK(run("check " + data + "fixtures/malformed.json") == 2);
  CHECK(run("check " + data + "missing.json") == 2);
  CHECK(run("nonsense") == 2);
}

TEST_CASE("partition and coroot validation") {
  CHECK(run("ds-reduce --N 3 --mu 3,1") == 2);
  CHECK(run("ds-reduce --N 2 --mu 1,2") == 2);
  CHECK(run("ihr-verify --N 2 --mu 2 --alpha 1,2") == 2);
  CHECK(run("ihr-verify --N 2 --mu 1,1 --alpha 2,1") == 2);
  CHECK(run("--format xml ds-reduce --N 2 --mu 2") == 2);
}

TEST_CASE("ds-reduce report") {
  REQUIRE(run("--format machine ds-reduce --N 2 --mu 2 --cutoff 3 --out " + tmp + "ds.json") == 0);
  const auto r = nlohmann::json::parse(read_file(tmp + "ds.json"));
  CHECK(r["cohomology"][0]["dims"] == nlohmann::json({1, 1, 3, 5}));
  CHECK(r["generators"].size() == 2);
  CHECK(r["generators"][1]["weight"] == "2");
  CHECK(r["virasoro"]["c"] == "(-6*k^2 - 10*k - 2)/(k + 2)");
  CHECK(r["classical_compare"]["ok"] == true);
  // Machine reports carry no timing and are reproducible.
  REQUIRE(run("--format machine ds-reduce --N 2 --mu 2 --cutoff 3 --out " + tmp + "ds2.json") == 0);
  CHECK(read_file(tmp + "ds.json") == read_file(tmp + "ds2.json"));
}

TEST_CASE("ihr-verify writes a solution that verifies on reload") {
  const std::string sol = tmp + "sol.json";
  REQUIRE(run("ihr-verify --N 2 --mu 1,1 --alpha 1,2 --cutoff 3 --solution " + sol) == 0);
  CHECK(run("--format machine ihr-verify --N 2 --mu 1,1 --alpha 1,2 --cutoff 3 --load " + sol +
            " --out " + tmp + "load.json") == 0);
  const auto r = nlohmann::json::parse(read_file(tmp + "load.json"));
  CHECK(r["embedding"]["certificate"]["pairs_checked"] == 16);
  CHECK(r["stages"]["ok"] == true);
  // A corrupted image fails verification.
  auto s = nlohmann::ordered_json::parse(read_file(sol));
  s["images"]["E11"] = s["images"]["E11"].get<std::string>() + " + p";
  write_file(tmp + "bad.json", s.dump(2));
  CHECK(run("ihr-verify --N 2 --mu 1,1 --alpha 1,2 --cutoff 3 --load " + tmp + "bad.json") == 1);
}

TEST_CASE("acceptance selection") {
  CHECK(select_criteria({"scalars"}) == std::vector<int>{6});
  CHECK(select_criteria({"3", "casimir"}) == std::vector<int>{3, 9});
  CHECK(select_criteria({"ihr"}) == std::vector<int>{7, 8});
  CHECK(select_criteria({}).size() == 10);
  CHECK_THROWS_AS(select_criteria({"11"}), UsageError);
  CHECK(run("accept --only scalars") == 0);
  CHECK(run("accept --only bogus") == 2);
  // A failing row is reported as such and sinks the summary.
  CriterionResult bad;
  bad.id = 2;
  bad.slug = "oracle";
  bad.summary = "injected mismatch";
  const std::string h = human_report({bad});
  CHECK(h.find("FAIL  2 oracle") != std::string::npos);
  CHECK(nlohmann::json::parse(machine_report({bad}))["all_pass"] == false);
}
