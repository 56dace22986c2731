#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include <varlab/varlab.hpp>

#include "support.hpp"

using Catch::Matchers::ContainsSubstring;

namespace {

  struct Run {
    int         code = -1;
    std::string out;
  };

  // Runs the CLI with stderr discarded; stdout is captured.
  Run cli(std::string const& args) {
    std::string cmd = std::string(VARLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    Run         r;
    FILE*       pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) {
      r.out.append(buf, n);
    }
    int status = pclose(pipe);
    r.code     = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  std::string data(std::string const& file) {
    return support::data(file);
  }

  std::filesystem::path scratch(std::string const& name) {
    auto dir = std::filesystem::temp_directory_path() / "varlab_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
  }

}  // namespace

TEST_CASE("build", "[cli]") {
  Run r = cli("build --in " + data("edge.json") + " --variant full");
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("72 elements"));
  CHECK_THAT(cli("build --in " + data("edge.json") + " --variant natural").out,
             ContainsSubstring("73 elements"));

  auto out    = scratch("edge_monoid.json");
  auto labels = scratch("edge_labels.json");
  REQUIRE(cli("build --in " + data("edge.json") + " --out " + out.string() + " --labels-out "
              + labels.string())
              .code
          == 0);
  varlab::json doc = varlab::json::parse(varlab::read_file(out.string()));
  CHECK(doc["monoid"]["size"] == 72);
  CHECK(doc["header"]["tool"] == "varlab");
  CHECK(varlab::parse_monoid(doc["monoid"].dump()).size() == 72);
  CHECK(varlab::json::parse(varlab::read_file(labels.string())).size() == 72);

  CHECK(cli("build --in " + data("two_cycle.json")).code == 3);
  CHECK(cli("build --in /nonexistent.json").code == 2);
  CHECK(cli("build --in " + data("edge.json") + " --variant round").code == 2);
  CHECK(cli("build").code == 2);
}

TEST_CASE("check", "[cli]") {
  CHECK(cli("check --monoid b21 --id x2y2=y2x2").code == 0);
  Run a21 = cli("check --monoid a21 --id x2y2=y2x2");
  CHECK(a21.code == 1);
  varlab::json doc = varlab::json::parse(a21.out);
  CHECK(doc["rows"][0]["verdict"] == "refuted");
  CHECK_FALSE(doc["rows"][0]["witness"].empty());

  CHECK(cli("check --in " + data("edge.json") + " --variant full --id x2y2=y2x2").code == 0);
  CHECK(cli("check --monoid zimin3 --id 'xx=xxx'").code == 0);
  CHECK(cli("check --monoid b21 --id w3=w3p").code == 1);
  CHECK(cli("check --monoid b21 --id 'x2y2=y2x2' --strategy randomized --samples 500").code == 4);
  CHECK(cli("check --monoid b21 --id 'xy=yx' --strategy randomized --samples 5000").code == 1);
  CHECK(cli("check --monoid b21 --id 'x2y2'").code == 2);
  CHECK(cli("check --monoid b21 --id 'x=y' --strategy guess").code == 2);
  CHECK(cli("check --monoid b21 --id w3=w3p --budget-assignments 10").code == 5);
}

TEST_CASE("report formats", "[cli]") {
  std::string const args = "check --monoid a21 --id x2y2=y2x2";
  Run               table = cli("--format table " + args);
  CHECK_THAT(table.out, ContainsSubstring("instance") && ContainsSubstring("verdict"));
  Run csv = cli("--format csv " + args);
  CHECK(csv.out.rfind("instance,identity,verdict,witness,seed,time", 0) == 0);
  CHECK(cli("--format xml " + args).code == 2);
  CHECK(cli(args).out == cli(args).out);
  CHECK(cli(args).out == cli("--workers 3 " + args).out);
}

TEST_CASE("experiments", "[cli]") {
  CHECK(cli("experiment self-failure --in " + data("edge.json")).code == 0);
  CHECK(cli("experiment self-failure --prune --in " + data("path3.json")).code == 0);
  CHECK(cli("experiment self-failure --in " + data("two_cycle.json")).code == 3);
  CHECK(cli("experiment majority-necessity --in " + data("no_majority15.json")).code == 0);
  CHECK(cli("experiment image-classification --k 2 --shape xyxy --max-len 8").code == 0);
  CHECK(cli("experiment image-classification --k 2 --shape zz --max-len 8").code == 2);
  CHECK(cli("experiment zimin-criterion --u w3 --v w3p --zimin-n 4 --probe-samples 2000").code == 0);
  CHECK(cli("experiment zimin-criterion --u 'x y x' --v 'x x y'").code == 1);
  CHECK(cli("experiment rewrite --word w3 --id 'x2y=yx2' --max-image-len 4").code == 0);
  CHECK(cli("experiment rewrite --word 'x x y' --id 'x2y=yx2' --max-image-len 1").code == 1);
  CHECK(cli("experiment zimin-fixtures --fixtures " + data("zimin_fixtures.json")).code == 0);
  CHECK(cli("experiment cross --in " + data("edge.json") + " --in2 " + data("edge.json")).code == 0);
  CHECK(cli("experiment a21-witness --in " + data("edge.json")).code == 1);
  CHECK(cli("experiment b21-witness --in " + data("path3.json")).code == 0);
  CHECK(cli("experiment wn-isoterm --n 3 --mode bounded --max-len 5").code == 0);
  CHECK(cli("experiment nonsense").code == 2);
}

TEST_CASE("gen and validate", "[cli]") {
  Run g = cli("gen --v 9 --girth 4 --seed 3");
  CHECK(g.code == 0);
  auto h = varlab::parse_hypergraph(g.out);
  CHECK(varlab::girth(h.graph).at_least(4));
  REQUIRE(h.seed);
  CHECK(*h.seed == 3);
  CHECK(cli("gen --v 9 --girth 4 --seed 3").out == g.out);
  CHECK(cli("gen --v 6 --girth 4 --edges 50 --seed 1").code == 5);

  auto path = scratch("generated.json");
  varlab::write_file(path.string(), g.out);
  CHECK(cli("validate --in " + path.string()).code
        == (h.graph.has_isolated_vertices() ? 3 : 0));
  CHECK(cli("validate --in " + data("edge.json")).code == 0);
  CHECK(cli("validate --in " + data("two_cycle.json")).code == 3);
  CHECK(cli("validate").code == 2);

  auto bad = scratch("bad.json");
  varlab::write_file(bad.string(), "{\n \"vertices\": [\"u\"],\n \"edges\": [[\"u\"]]\n}\n");
  CHECK(cli("validate --in " + bad.string()).code == 2);
}
