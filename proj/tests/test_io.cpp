#include <catch_amalgamated.hpp>

#include <varlab/varlab.hpp>

#include "support.hpp"

using namespace varlab;
using Catch::Matchers::ContainsSubstring;

namespace {

  std::string error_of(std::string const& text) {
    try {
      parse_hypergraph(text, "h.json");
    } catch (InputError const& e) {
      return e.what();
    }
    return "";
  }

  SeparationReport sample_report() {
    SeparationReport r;
    r.experiment = "sample";
    r.passed     = true;
    r.facts      = {{"vertices", "3"}, {"note", "a,b"}};
    ReportRow row;
    row.instance = "H(3v,1e)";
    row.identity = "p_H = p_H^2";
    row.verdict  = Verdict::refuted;
    row.witness  = {{"y", "t"}, {"x0", "u"}};
    row.strategy = "canonical";
    row.seed     = 42;
    row.seconds  = 1.25;
    r.rows.push_back(row);
    ReportRow second = row;
    second.identity  = "a, \"quoted\"";
    second.verdict   = Verdict::inconclusive;
    second.witness.clear();
    r.rows.push_back(second);
    return r;
  }

}  // namespace

TEST_CASE("hypergraph JSON round trip", "[io]") {
  for (auto const& inst : support::girth4_sweep()) {
    json       doc  = hypergraph_to_json(inst.graph, 7);
    auto       back = parse_hypergraph(doc.dump(2));
    CHECK(back.graph.names() == inst.graph.names());
    CHECK(back.graph.edges() == inst.graph.edges());
    REQUIRE(back.seed);
    CHECK(*back.seed == 7);
  }
  auto plain = parse_hypergraph(hypergraph_to_json(Hypergraph::with_vertices(3, {{0, 1, 2}})).dump());
  CHECK_FALSE(plain.seed);
}

TEST_CASE("hypergraph errors carry the offending line", "[io]") {
  std::string const arity = R"({
  "vertices": ["u", "v", "w", "q"],
  "edges": [
    ["u", "v", "w"],
    ["u", "v"]
  ]
})";
  CHECK_THAT(error_of(arity), ContainsSubstring("h.json:5") && ContainsSubstring("3-uniform"));

  std::string const unknown = R"({
  "vertices": ["u", "v", "w"],
  "edges": [
    ["u", "v", "q"]
  ]
})";
  CHECK_THAT(error_of(unknown), ContainsSubstring("h.json:4") && ContainsSubstring("unknown vertex"));

  std::string const repeated = R"({
  "vertices": ["u", "v", "w"],
  "edges": [["u", "v", "w"],
            ["u", "u", "w"]]
})";
  CHECK_THAT(error_of(repeated), ContainsSubstring("h.json:4") && ContainsSubstring("repeats"));

  std::string const duplicate = R"({
  "vertices": ["u", "v", "w"],
  "edges": [
    ["u", "v", "w"],

    ["w", "v", "u"]
  ]
})";
  CHECK_THAT(error_of(duplicate), ContainsSubstring("h.json:6") && ContainsSubstring("duplicate"));

  std::string const twice = "{\"vertices\": [\"u\",\n \"u\"], \"edges\": []}";
  CHECK_THAT(error_of(twice), ContainsSubstring("h.json:2") && ContainsSubstring("duplicate vertex"));

  CHECK_THAT(error_of("{\n\"vertices\": [\n"), ContainsSubstring("malformed JSON"));
  CHECK_THAT(error_of("[]"), ContainsSubstring("expected an object"));
  CHECK_THAT(error_of(R"({"vertices": [], "edges": [], "seed": -1})"), ContainsSubstring("seed"));
  CHECK_THROWS_AS(load_hypergraph("/nonexistent/h.json"), InputError);
}

TEST_CASE("data fixtures parse", "[io]") {
  CHECK(load_hypergraph(support::data("edge.json")).graph.edges().size() == 1);
  CHECK(girth(load_hypergraph(support::data("two_cycle.json")).graph) == Girth::finite(2));
  auto path = load_hypergraph(support::data("path3.json")).graph;
  CHECK(path.edges().size() == 3);
  CHECK(is_hyperforest(path));
  auto big = load_hypergraph(support::data("no_majority15.json")).graph;
  CHECK(big.vertex_count() == 15);
  Alphabet names;
  auto     fixtures = parse_zimin_fixtures(read_file(support::data("zimin_fixtures.json")), names);
  CHECK(fixtures.size() == 6);
  CHECK_THROWS_AS(parse_zimin_fixtures(R"({"fixtures": [{"id": "x"}]})", names), InputError);
}

TEST_CASE("monoid JSON round trip", "[io]") {
  for (FinMonoid const& m : {brandt_b21(), brandt_a21(), build(Hypergraph::with_vertices(3, {{0, 1, 2}}),
                                                             Variant::full).monoid}) {
    FinMonoid back = parse_monoid(monoid_to_json(m).dump());
    REQUIRE(back.size() == m.size());
    CHECK(back.identity() == m.identity());
    CHECK(back.zero() == m.zero());
    bool same = true;
    for (Element a = 0; a < m.size(); ++a) {
      CHECK(back.label(a) == m.label(a));
      for (Element b = 0; b < m.size(); ++b) {
        same &= back.product(a, b) == m.product(a, b);
      }
    }
    CHECK(same);
  }
}

TEST_CASE("monoid file errors", "[io]") {
  CHECK_THROWS_AS(parse_monoid(R"({"size": 0, "table": [], "identity": 0})"), InputError);
  CHECK_THROWS_AS(parse_monoid(R"({"size": 2, "table": [[0, 1]], "identity": 0})"), InputError);
  std::string const ragged = "{\"size\": 2, \"identity\": 0, \"table\": [\n[0, 1],\n[1]\n]}";
  try {
    parse_monoid(ragged, "m.json");
    FAIL("ragged table accepted");
  } catch (InputError const& e) {
    CHECK_THAT(e.what(), ContainsSubstring("m.json:3"));
  }
  // not associative
  CHECK_THROWS_AS(parse_monoid(R"({"size": 3, "identity": 0,
      "table": [[0, 1, 2], [1, 2, 1], [2, 2, 2]]})"),
                  InputError);
  CHECK_THROWS_AS(parse_monoid(R"({"size": 2, "identity": 0, "zero": 0,
      "table": [[0, 1], [1, 1]]})"),
                  InputError);
  CHECK_THROWS_AS(parse_monoid(R"({"size": "two"})"), InputError);
}

TEST_CASE("report rendering", "[io][report]") {
  SeparationReport r = sample_report();
  ReportHeader     h{"experiment self-failure", {{"in", "edge.json"}}, {42}};

  json doc = report_json(r, h, false);
  CHECK(doc["header"]["tool"] == "varlab");
  CHECK(doc["header"]["seeds"][0] == 42);
  CHECK(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["verdict"] == "refuted");
  CHECK(doc["rows"][0]["witness"]["y"] == "t");
  CHECK(doc["rows"][1]["verdict"] == "inconclusive");
  CHECK_FALSE(doc["rows"][0].contains("seconds"));
  CHECK(report_json(r, h, true)["rows"][0]["seconds"] == 1.25);

  std::string table = render(r, h, {ReportFormat::Kind::table, false});
  CHECK_THAT(table, ContainsSubstring("instance") && ContainsSubstring("witness")
                        && ContainsSubstring("y->t") && ContainsSubstring("sample: passed"));
  CHECK_THAT(render(r, h, {ReportFormat::Kind::table, true}), ContainsSubstring("1.250"));
  CHECK_FALSE(table.find("1.250") != std::string::npos);

  std::string csv = render(r, h, {ReportFormat::Kind::csv, false});
  CHECK(csv.rfind("instance,identity,verdict,witness,seed,time\n", 0) == 0);
  CHECK_THAT(csv, ContainsSubstring("\"a, \"\"quoted\"\"\""));
  CHECK_THAT(csv, ContainsSubstring(",42,\n"));

  CHECK(parse_format("csv") == ReportFormat::Kind::csv);
  CHECK_THROWS_AS(parse_format("xml"), InputError);
  // default rendering is byte-stable
  CHECK(render(r, h, {}) == render(r, h, {}));
  CHECK(json::parse(render(r, h, {})) == doc);
}
