#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "varlab/varlab.hpp"

namespace {

  using namespace varlab;

  enum Exit : int {
    ok           = 0,
    refuted      = 1,
    input        = 2,
    precondition = 3,
    inconclusive = 4,
    budget       = 5,
  };

  struct RunConfig {
    std::uint64_t seed               = 1;
    std::uint64_t budget_assignments = 500000000;
    std::size_t   budget_elements    = 100000;
    std::string   format             = "json";
    std::string   out;
    std::size_t   workers = 1;
    bool          timing  = false;

    std::string in, in2, variant = "full", labels_out;
    std::string monoid = "b21", identity, strategy = "exhaustive";
    std::uint64_t samples = 100000;

    std::string experiment, mode = "permutation", shape = "xyxy", u, v, word, fixtures;
    std::size_t n = 3, max_len = 8, k = 2, zimin_n = 4, max_image_len = 5, battery = 64;
    std::uint64_t probe_samples = 0;
    bool          prune         = false;

    std::size_t gen_v = 9, gen_girth = 4, gen_edges = 0, gen_budget = 2000000;
  };

  void emit(RunConfig const& cfg, std::string const& text) {
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      write_file(cfg.out, text);
    }
  }

  ReportFormat format_of(RunConfig const& cfg) {
    return {parse_format(cfg.format), cfg.timing};
  }

  // Non-report payloads (bundles, witnesses) are JSON in every format, with
  // the header folded in.
  std::string json_payload(ReportHeader const& h, json body) {
    json out;
    out["header"] = header_json(h);
    for (auto& [key, value] : body.items()) {
      out[key] = value;
    }
    return out.dump(2) + "\n";
  }

  int verdict_exit(Verdict v) {
    switch (v) {
      case Verdict::satisfied:
        return Exit::ok;
      case Verdict::refuted:
        return Exit::refuted;
      default:
        return Exit::inconclusive;
    }
  }

  // Calls fn with the named monoid: b21, a21, trivial, zimin<n>, a monoid
  // JSON file, or M_H when --in names a hypergraph.
  int with_monoid(RunConfig const& cfg, std::function<int(FinMonoid const&)> const& finite,
                  std::function<int(ZiminMonoid const&)> const& zimin_fn) {
    if (!cfg.in.empty()) {
      HGMonoidBundle b = build(load_hypergraph(cfg.in).graph, parse_variant(cfg.variant));
      return finite(b.monoid);
    }
    if (cfg.monoid == "b21") {
      return finite(brandt_b21());
    }
    if (cfg.monoid == "a21") {
      return finite(brandt_a21());
    }
    if (cfg.monoid == "trivial") {
      return finite(trivial_monoid());
    }
    if (auto n = detail::number_after(cfg.monoid, "zimin")) {
      return zimin_fn(ZiminMonoid(*n));
    }
    return finite(parse_monoid(read_file(cfg.monoid), cfg.monoid));
  }

  ReportHeader header(RunConfig const& cfg, std::string command, KeyValues config) {
    config.emplace_back("format", cfg.format);
    return {std::move(command), std::move(config), {cfg.seed}};
  }

  int cmd_build(RunConfig const& cfg) {
    LoadedHypergraph h = load_hypergraph(cfg.in);
    Variant          v = parse_variant(cfg.variant);
    HGMonoidBundle   b = build(h.graph, v);
    json             body;
    body["variant"]  = to_string(v);
    body["vertices"] = h.graph.vertex_count();
    body["edges"]    = h.graph.edges().size();
    body["monoid"]   = monoid_to_json(b.monoid);
    if (!cfg.labels_out.empty()) {
      json labels = json::array();
      for (Element x = 0; x < b.monoid.size(); ++x) {
        labels.push_back(b.label(x));
      }
      write_file(cfg.labels_out, labels.dump(2) + "\n");
    }
    std::string summary = "variant " + to_string(v) + ": " + std::to_string(b.monoid.size())
                          + " elements, " + std::to_string(idempotents(b.monoid).size())
                          + " idempotents\n";
    std::cout << summary;
    if (!cfg.out.empty()) {
      write_file(cfg.out, json_payload(header(cfg, "build", {{"in", cfg.in}, {"variant", cfg.variant}}),
                                       body));
    }
    return Exit::ok;
  }

  int cmd_check(RunConfig const& cfg) {
    Alphabet names;
    Identity id = parse_identity(cfg.identity, names);
    Strategy strategy;
    if (cfg.strategy == "randomized") {
      strategy = Strategy::randomized(cfg.samples, cfg.seed);
    } else if (cfg.strategy != "exhaustive") {
      throw InputError("unknown strategy '" + cfg.strategy + "' (exhaustive|randomized)");
    }
    SatisfactionOptions opt;
    opt.max_space = cfg.budget_assignments;
    opt.workers   = cfg.workers;

    auto run = [&](auto const& m) {
      SatisfactionResult res = satisfies(m, id, strategy, opt);
      SeparationReport   r;
      r.experiment = "check";
      r.passed     = res.verdict != Verdict::refuted;
      r.facts      = {{"monoid_size", std::to_string(m.size())},
                      {"space", std::to_string(res.space)}};
      ReportRow row;
      row.instance = cfg.in.empty() ? cfg.monoid : cfg.in + " (" + cfg.variant + ")";
      row.identity = detail::identity_string(id, names);
      row.verdict  = res.verdict;
      if (res.counterexample) {
        row.witness = detail::name_assignment(m, *res.counterexample, names);
      }
      row.strategy = detail::strategy_name(strategy);
      row.seed     = strategy.seed;
      row.samples  = res.checked;
      r.rows.push_back(row);
      emit(cfg, render(r,
                       header(cfg, "check",
                              {{"monoid", cfg.in.empty() ? cfg.monoid : cfg.in},
                               {"identity", cfg.identity},
                               {"strategy", cfg.strategy}}),
                       format_of(cfg)));
      return verdict_exit(res.verdict);
    };
    return with_monoid(
        cfg, [&](FinMonoid const& m) { return run(m); },
        [&](ZiminMonoid const& m) { return run(m); });
  }

  int report_exit(SeparationReport const& r) {
    for (ReportRow const& row : r.rows) {
      if (row.verdict == Verdict::inconclusive) {
        return Exit::inconclusive;
      }
    }
    return r.passed ? Exit::ok : Exit::refuted;
  }

  int cmd_experiment(RunConfig const& cfg) {
    std::string const& name = cfg.experiment;
    KeyValues          echo{{"experiment", name}};
    auto               finish = [&](SeparationReport const& r) {
      emit(cfg, render(r, header(cfg, "experiment", echo), format_of(cfg)));
      return report_exit(r);
    };

    if (name == "self-failure") {
      echo.emplace_back("in", cfg.in);
      return finish(self_failure_check(load_hypergraph(cfg.in).graph, PWordOptions{cfg.prune}));
    }
    if (name == "majority-necessity") {
      echo.emplace_back("in", cfg.in);
      return finish(majority_necessity_experiment(load_hypergraph(cfg.in).graph));
    }
    if (name == "cross") {
      echo.insert(echo.end(), {{"g", cfg.in}, {"h", cfg.in2}});
      CrossOptions opt;
      opt.max_space = cfg.budget_assignments;
      opt.samples   = cfg.samples;
      opt.seed      = cfg.seed;
      opt.workers   = cfg.workers;
      return finish(cross_satisfaction_check(load_hypergraph(cfg.in).graph,
                                             load_hypergraph(cfg.in2).graph, opt));
    }
    if (name == "wn-isoterm") {
      echo.insert(echo.end(), {{"n", std::to_string(cfg.n)}, {"mode", cfg.mode}});
      WnOptions opt;
      if (cfg.mode == "bounded") {
        opt.mode = WnOptions::Mode::bounded;
        echo.emplace_back("max_len", std::to_string(cfg.max_len));
      } else if (cfg.mode != "permutation") {
        throw InputError("unknown mode '" + cfg.mode + "' (permutation|bounded)");
      }
      opt.max_len = cfg.max_len;
      opt.battery = cfg.battery;
      opt.seed    = cfg.seed;
      opt.workers = cfg.workers;
      return finish(wn_isoterm_experiment(cfg.n, opt));
    }
    if (name == "image-classification") {
      echo.insert(echo.end(), {{"k", std::to_string(cfg.k)},
                               {"shape", cfg.shape},
                               {"max_len", std::to_string(cfg.max_len)}});
      ImageShape shape;
      if (cfg.shape == "xyxy") {
        shape = ImageShape::xyxy;
      } else if (cfg.shape == "xyxyx") {
        shape = ImageShape::xyxyx;
      } else {
        throw InputError("unknown shape '" + cfg.shape + "' (xyxy|xyxyx)");
      }
      ImageClassification c = b21_image_classification(cfg.k, shape, cfg.max_len);
      SeparationReport    r;
      r.experiment = "image-classification";
      r.passed     = c.matches;
      r.facts      = {{"candidates", std::to_string(c.candidates)},
                      {"satisfied", std::to_string(c.satisfied.size())},
                      {"expected", std::to_string(c.expected.size())}};
      for (Word const& w : c.satisfied) {
        ReportRow row;
        row.instance = "B21";
        row.identity = "(xy)^" + std::to_string(cfg.k) + (shape == ImageShape::xyxyx ? "x" : "")
                       + " = " + to_string(w, c.names);
        row.verdict  = Verdict::satisfied;
        row.strategy = "exhaustive";
        r.rows.push_back(row);
      }
      return finish(r);
    }
    if (name == "zimin-criterion") {
      echo.insert(echo.end(), {{"u", cfg.u}, {"v", cfg.v}});
      Alphabet         names;
      Word             u = parse_side(cfg.u, names), v = parse_side(cfg.v, names);
      bool             crit = zimin_criterion(u, v);
      SeparationReport r;
      r.experiment = "zimin-criterion";
      r.passed     = true;
      r.facts      = {{"criterion", crit ? "true" : "false"},
                      {"same_content", content(u) == content(v) ? "true" : "false"},
                      {"simple_letters_u", std::to_string(simple_letters(u).size())},
                      {"simple_letters_v", std::to_string(simple_letters(v).size())}};
      if (cfg.probe_samples > 0) {
        echo.emplace_back("zimin_n", std::to_string(cfg.zimin_n));
        SatisfactionResult res =
            zimin_probe(u, v, cfg.zimin_n, cfg.probe_samples, cfg.seed, cfg.workers);
        ReportRow row;
        row.instance = "M(z" + std::to_string(cfg.zimin_n) + ")";
        row.identity = detail::identity_string(Identity{u, v}, names);
        row.verdict  = res.verdict;
        if (res.counterexample) {
          row.witness = detail::name_assignment(ZiminMonoid(cfg.zimin_n), *res.counterexample,
                                                names);
        }
        row.strategy = "randomized";
        row.seed     = cfg.seed;
        row.samples  = res.checked;
        r.rows.push_back(row);
        r.passed = !crit || res.verdict != Verdict::refuted;
      }
      emit(cfg, render(r, header(cfg, "experiment", echo), format_of(cfg)));
      if (!r.passed) {
        return Exit::refuted;
      }
      return crit ? Exit::ok : Exit::refuted;
    }
    if (name == "rewrite") {
      echo.insert(echo.end(), {{"word", cfg.word}, {"identity", cfg.identity},
                               {"max_image_len", std::to_string(cfg.max_image_len)}});
      Alphabet names;
      Word     w  = parse_side(cfg.word, names);
      Identity id = parse_identity(cfg.identity, names);
      auto     apps = find_rewrite_applications(w, id, cfg.max_image_len);
      SeparationReport r;
      r.experiment = "rewrite";
      std::size_t nontrivial = 0;
      for (auto const& a : apps) {
        if (a.trivial) {
          continue;
        }
        ++nontrivial;
        ReportRow row;
        row.instance = "position " + std::to_string(a.position);
        row.identity = detail::identity_string(id, names);
        row.verdict  = Verdict::satisfied;
        for (auto const& [l, img] : a.theta.map()) {
          row.witness.emplace_back(names.name(l), img.empty() ? "1" : to_string(img, names));
        }
        row.strategy = "substitution";
        row.note     = to_string(rewrite_step(w, id, a.position, a.theta), names);
        r.rows.push_back(row);
      }
      r.facts  = {{"applications", std::to_string(apps.size())},
                  {"nontrivial", std::to_string(nontrivial)}};
      r.passed = nontrivial == 0;
      return finish(r);
    }
    if (name == "zimin-fixtures") {
      echo.emplace_back("fixtures", cfg.fixtures);
      Alphabet         names;
      auto             fx = parse_zimin_fixtures(read_file(cfg.fixtures), names, cfg.fixtures);
      SeparationReport r;
      r.experiment = "zimin-fixtures";
      for (ZiminFixture const& f : fx) {
        auto      real = verify_realization(f.word, f.theta, f.zimin_n);
        bool      good = real && (!f.whole || real->image == zimin(f.zimin_n))
                    && (f.expected_image.empty() || to_string(real->image, names) == f.expected_image);
        ReportRow row;
        row.instance = f.id;
        row.identity = to_string(f.word, names) + " -> z" + std::to_string(f.zimin_n);
        row.verdict  = good ? Verdict::satisfied : Verdict::refuted;
        for (auto const& [l, img] : f.theta.map()) {
          row.witness.emplace_back(names.name(l), to_string(img, names));
        }
        row.strategy = "fixture";
        row.note     = real ? to_string(real->image, names) : "not a factor";
        r.rows.push_back(row);
        r.passed = r.passed && good;
      }
      return finish(r);
    }
    if (name == "a21-witness" || name == "b21-witness") {
      echo.emplace_back("in", cfg.in);
      Hypergraph     h = load_hypergraph(cfg.in).graph;
      WitnessOptions opt;
      opt.element_cap = cfg.budget_elements;
      if (name == "a21-witness") {
        A21WitnessReport w = a21_witness(h, opt);
        emit(cfg, json_payload(header(cfg, "experiment", echo), {{"a21_witness", a21_witness_json(w)}}));
        bool laws = std::all_of(w.hat_laws.begin(), w.hat_laws.end(),
                                [](LawCheck const& l) { return l.holds; });
        return laws && w.natural_isomorphic ? Exit::ok : Exit::refuted;
      }
      B21WitnessReport w = b21_witness(h, opt);
      emit(cfg, json_payload(header(cfg, "experiment", echo), {{"b21_witness", b21_witness_json(w)}}));
      return w.refused ? Exit::precondition : Exit::ok;
    }
    throw InputError("unknown experiment '" + name
                     + "' (self-failure|cross|wn-isoterm|image-classification|zimin-criterion|"
                       "rewrite|zimin-fixtures|a21-witness|b21-witness|majority-necessity)");
  }

  int cmd_gen(RunConfig const& cfg) {
    GeneratorOptions opt;
    opt.target_edges        = cfg.gen_edges;
    opt.budget              = cfg.gen_budget;
    GeneratedHypergraph g   = generate_high_girth(cfg.gen_v, cfg.gen_girth, cfg.seed, opt);
    ConditionFlags      f   = check_conditions(g.graph);
    json                meta;
    meta["tool"]        = "varlab";
    meta["version"]     = version;
    meta["min_girth"]   = g.min_girth;
    meta["girth"]       = girth(g.graph).to_string();
    meta["chromatic"]   = g.chromatic;
    meta["candidates"]  = g.candidates;
    meta["best_effort"] = g.best_effort;
    meta["conditions"]  = {{"I", f.I}, {"II", f.II}, {"III", f.III}};
    emit(cfg, hypergraph_to_json(g.graph, g.seed, meta).dump(2) + "\n");
    return g.best_effort ? Exit::budget : Exit::ok;
  }

  int cmd_validate(RunConfig const& cfg) {
    if (cfg.in.empty()) {
      FinMonoid m = parse_monoid(read_file(cfg.monoid), cfg.monoid);
      json      body;
      body["monoid"] = {{"size", m.size()},
                        {"zero", m.zero() ? json(*m.zero()) : json(nullptr)},
                        {"idempotents", idempotents(m).size()}};
      emit(cfg, json_payload(header(cfg, "validate", {{"monoid", cfg.monoid}}), body));
      return Exit::ok;
    }
    Hypergraph     h = load_hypergraph(cfg.in).graph;
    ConditionFlags f = check_conditions(h);
    json           body;
    body["vertices"]   = h.vertex_count();
    body["edges"]      = h.edges().size();
    body["girth"]      = girth(h).to_string();
    body["conditions"] = {{"I", f.I}, {"II", f.II}, {"III", f.III}};
    body["isolated_vertices"] = h.has_isolated_vertices();
    body["hyperforest"]       = is_hyperforest(h);
    if (h.vertex_count() <= 24) {
      FlexReport flex       = flex_report(h);
      body["majority_colourings"] = flex.colourings;
      body["flex_conditions"]     = flex.holds;
      if (!flex.holds) {
        body["flex_failure"] = flex.reason;
      }
      body["chromatic_number"] = chromatic_number(h);
    }
    bool buildable = girth(h).at_least(4) && !h.has_isolated_vertices();
    body["buildable"] = buildable;
    emit(cfg, json_payload(header(cfg, "validate", {{"in", cfg.in}}), body));
    return buildable ? Exit::ok : Exit::precondition;
  }

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App  app{"varlab: hypergraph monoids, identities and separation experiments"};
  app.set_version_flag("--version", std::string(version));
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--seed", cfg.seed, "Seed for every randomized step");
  app.add_option("--budget-assignments", cfg.budget_assignments,
                 "Largest assignment space searched exhaustively")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget-elements", cfg.budget_elements, "Closure cap for witnesses")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Report format")
      ->check(CLI::IsMember({"json", "table", "csv"}));
  app.add_option("--out", cfg.out, "Write the report here instead of stdout");
  app.add_option("--workers", cfg.workers, "Worker threads (never changes output)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--timing", cfg.timing, "Include wall-clock times in reports");

  auto* build_cmd = app.add_subcommand("build", "Build M_H for a hypergraph file");
  build_cmd->add_option("--in", cfg.in, "Hypergraph JSON")->required();
  build_cmd->add_option("--variant", cfg.variant, "natural | sharp | full");
  build_cmd->add_option("--labels-out", cfg.labels_out, "Write element labels here");

  auto* check_cmd = app.add_subcommand("check", "Decide or probe an identity in a monoid");
  check_cmd->add_option("--monoid", cfg.monoid, "b21 | a21 | trivial | zimin<n> | monoid JSON");
  check_cmd->add_option("--in", cfg.in, "Hypergraph JSON: check in M_H instead");
  check_cmd->add_option("--variant", cfg.variant, "Variant for --in");
  check_cmd->add_option("--id", cfg.identity, "Identity, e.g. x2y2=y2x2")->required();
  check_cmd->add_option("--strategy", cfg.strategy, "exhaustive | randomized");
  check_cmd->add_option("--samples", cfg.samples, "Samples for randomized mode");

  auto* exp_cmd = app.add_subcommand("experiment", "Run a named experiment");
  exp_cmd->add_option("name", cfg.experiment, "Experiment name")->required();
  exp_cmd->add_option("--in", cfg.in, "Hypergraph JSON (G for cross)");
  exp_cmd->add_option("--in2", cfg.in2, "Second hypergraph JSON (H for cross)");
  exp_cmd->add_option("--n", cfg.n, "Index n of w_n");
  exp_cmd->add_option("--mode", cfg.mode, "permutation | bounded");
  exp_cmd->add_option("--max-len", cfg.max_len, "Length bound");
  exp_cmd->add_option("--battery", cfg.battery, "Random assignments per candidate");
  exp_cmd->add_option("--k", cfg.k, "Exponent k of (xy)^k");
  exp_cmd->add_option("--shape", cfg.shape, "xyxy | xyxyx");
  exp_cmd->add_option("--u", cfg.u, "Left word");
  exp_cmd->add_option("--v", cfg.v, "Right word");
  exp_cmd->add_option("--zimin-n", cfg.zimin_n, "n of M(z_n) for the probe");
  exp_cmd->add_option("--probe-samples", cfg.probe_samples, "Randomized probe samples");
  exp_cmd->add_option("--samples", cfg.samples, "Samples for randomized fallback");
  exp_cmd->add_option("--word", cfg.word, "Word to rewrite");
  exp_cmd->add_option("--id", cfg.identity, "Identity to rewrite with");
  exp_cmd->add_option("--max-image-len", cfg.max_image_len, "Image length bound");
  exp_cmd->add_option("--fixtures", cfg.fixtures, "Substitution fixture file");
  exp_cmd->add_flag("--prune", cfg.prune, "Prune the p_H block list");

  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded high-girth hypergraph");
  gen_cmd->add_option("--v", cfg.gen_v, "Vertices")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--girth", cfg.gen_girth, "Minimum girth");
  gen_cmd->add_option("--edges", cfg.gen_edges, "Target edge count (0: maximal)");
  gen_cmd->add_option("--candidate-budget", cfg.gen_budget, "3-sets examined");

  auto* val_cmd = app.add_subcommand("validate", "Validate a hypergraph or monoid file");
  val_cmd->add_option("--in", cfg.in, "Hypergraph JSON");
  val_cmd->add_option("--monoid", cfg.monoid, "Monoid JSON");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForVersion const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return Exit::input;
  }

  try {
    if (build_cmd->parsed()) {
      return cmd_build(cfg);
    }
    if (check_cmd->parsed()) {
      return cmd_check(cfg);
    }
    if (exp_cmd->parsed()) {
      return cmd_experiment(cfg);
    }
    if (gen_cmd->parsed()) {
      return cmd_gen(cfg);
    }
    if (val_cmd->parsed()) {
      if (cfg.in.empty() && cfg.monoid == "b21") {
        throw InputError("validate needs --in or --monoid");
      }
      return cmd_validate(cfg);
    }
  } catch (InputError const& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return Exit::input;
  } catch (PreconditionError const& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return Exit::precondition;
  } catch (BudgetExceeded const& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return Exit::budget;
  } catch (Falsified const& e) {
    std::cerr << "falsified: " << e.what() << "\n";
    return Exit::refuted;
  }
  return Exit::input;
}
