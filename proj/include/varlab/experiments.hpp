#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "hypergraph.hpp"
#include "hypermon.hpp"
#include "monoid.hpp"
#include "parallel.hpp"
#include "pword.hpp"
#include "random.hpp"
#include "satisfaction.hpp"
#include "witness.hpp"
#include "words.hpp"
#include "zimin_monoid.hpp"

namespace varlab {

  using KeyValues = std::vector<std::pair<std::string, std::string>>;

  struct ReportRow {
    std::string   instance;
    std::string   identity;
    Verdict       verdict = Verdict::satisfied;
    KeyValues     witness;  // letter -> element label
    std::string   strategy;
    std::uint64_t seed    = 0;
    std::uint64_t samples = 0;
    std::string   note;
    double        seconds = 0;
  };

  struct SeparationReport {
    std::string            experiment;
    bool                   passed = true;  // the experiment's own assertion
    KeyValues              facts;
    std::vector<ReportRow> rows;
  };

  namespace detail {
    class Stopwatch {
     public:
      [[nodiscard]] double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - _start).count();
      }

     private:
      std::chrono::steady_clock::time_point _start = std::chrono::steady_clock::now();
    };

    template <FiniteMonoid M>
    KeyValues name_assignment(M const& m, Assignment const& theta, Alphabet const& names) {
      KeyValues out;
      for (auto [l, x] : theta) {
        out.emplace_back(names.name(l), m.label(x));
      }
      return out;
    }

    inline std::string identity_string(Identity const& id, Alphabet const& names) {
      return to_string(id.lhs, names) + " = " + to_string(id.rhs, names);
    }

    inline std::string strategy_name(Strategy const& s) {
      return s.kind == Strategy::Kind::exhaustive ? "exhaustive" : "randomized";
    }
  }  // namespace detail

  // Under y -> t, x_u -> u the word p_H evaluates to t and p_H^2 to 0.
  inline SeparationReport self_failure_check(Hypergraph const& h, PWordOptions const& popt = {}) {
    detail::Stopwatch clock;
    HGMonoidBundle    b    = build(h, Variant::full);
    PWordPlan         plan = plan_p_word(h, popt);
    Word              p    = p_word(plan);
    Assignment        theta{{letters::y, b.t}};
    for (Vertex v = 0; v < h.vertex_count(); ++v) {
      theta[vertex_letter(v)] = b.vertex[v];
    }
    Element lhs = evaluate(b.monoid, theta, p);
    Element rhs = evaluate(b.monoid, theta, concat(p, p));

    SeparationReport r;
    r.experiment = "self-failure";
    r.facts      = {{"vertices", std::to_string(h.vertex_count())},
                    {"edges", std::to_string(h.edges().size())},
                    {"monoid_size", std::to_string(b.monoid.size())},
                    {"blocks", std::to_string(plan.triple_list.size())},
                    {"p_length", std::to_string(p.size())},
                    {"value_p", b.label(lhs)},
                    {"value_p2", b.label(rhs)}};
    r.passed = lhs == b.t && rhs == *b.monoid.zero();
    if (!r.passed) {
      throw Falsified("self_failure_check: p_H -> " + b.label(lhs) + ", p_H^2 -> "
                      + b.label(rhs) + " under the canonical assignment");
    }
    Alphabet  names;
    ReportRow row;
    row.instance = "H(" + std::to_string(h.vertex_count()) + "v," + std::to_string(h.edges().size())
                   + "e)";
    row.identity = "p_H = p_H^2";
    row.verdict  = Verdict::refuted;
    row.witness  = detail::name_assignment(b.monoid, theta, names);
    row.strategy = "canonical";
    row.note     = "p_H -> t, p_H^2 -> 0";
    row.seconds  = clock.seconds();
    r.rows.push_back(std::move(row));
    return r;
  }

  struct CrossOptions {
    std::uint64_t max_space           = 200000000;
    std::uint64_t node_budget         = 0;
    std::uint64_t samples             = 100000;
    std::uint64_t seed                = 1;
    std::size_t   workers             = 1;
    bool          randomized_fallback = true;
  };

  // M_H |= p_G = p_G^2? Exhaustive with zero-factor pruning when the space
  // fits, otherwise a seeded random battery whose pass is inconclusive.
  inline SeparationReport cross_satisfaction_check(Hypergraph const& g, Hypergraph const& h,
                                                   CrossOptions const& opt = {}) {
    detail::Stopwatch clock;
    HGMonoidBundle    b = build(h, Variant::full);
    Word              p = build_p_word(g);
    Identity          id{p, concat(p, p)};

    SeparationReport r;
    r.experiment = "cross-satisfaction";
    r.facts      = {{"girth_G", girth(g).to_string()},
                    {"girth_H", girth(h).to_string()},
                    {"monoid_size", std::to_string(b.monoid.size())},
                    {"p_G_length", std::to_string(p.size())},
                    {"variables", std::to_string(id.variables().size())},
                    {"wildly_incomparable", wildly_incomparable(g, h) ? "true" : "false"}};

    SatisfactionOptions sopt;
    sopt.max_space   = opt.max_space;
    sopt.node_budget = opt.node_budget;
    sopt.workers     = opt.workers;
    std::uint64_t space = detail::saturating_pow(b.monoid.size(), id.variables().size());
    Strategy      strategy = Strategy::exhaustive();
    if (space > opt.max_space) {
      if (!opt.randomized_fallback) {
        throw BudgetExceeded("cross_satisfaction_check: assignment space exceeds "
                             + std::to_string(opt.max_space));
      }
      strategy = Strategy::randomized(opt.samples, opt.seed);
    }
    SatisfactionResult res = satisfies(b.monoid, id, strategy, sopt);

    Alphabet  names;
    ReportRow row;
    row.instance = "G(" + std::to_string(g.vertex_count()) + "v," + std::to_string(g.edges().size())
                   + "e) in M_H(" + std::to_string(h.vertex_count()) + "v,"
                   + std::to_string(h.edges().size()) + "e)";
    row.identity = "p_G = p_G^2";
    row.verdict  = res.verdict;
    if (res.counterexample) {
      row.witness = detail::name_assignment(b.monoid, *res.counterexample, names);
    }
    row.strategy = detail::strategy_name(strategy);
    row.seed     = strategy.seed;
    row.samples  = res.checked;
    row.seconds  = clock.seconds();
    r.rows.push_back(std::move(row));
    return r;
  }

  struct WnOptions {
    enum class Mode { permutation, bounded } mode = Mode::permutation;
    std::size_t   max_len          = 8;  // bounded mode
    std::size_t   battery          = 64;
    std::uint64_t seed             = 1;
    std::size_t   workers          = 1;
    std::uint64_t candidate_budget = 10000000;
  };

  // Number of distinct rearrangements of w.
  inline std::uint64_t multiset_permutations(Word const& w) {
    std::uint64_t r = 1, k = 0;
    for (auto [l, c] : occurrences(w)) {
      for (std::size_t i = 1; i <= c; ++i) {
        ++k;
        r = r * k / i;  // stays integral: r picks up C(k, i) one step at a time
      }
    }
    return r;
  }

  // Is w_n the only rearrangement of its letters that B21 identifies with
  // w_n? Battery rejection first, exhaustive verification of survivors.
  inline SeparationReport wn_isoterm_experiment(std::size_t n, WnOptions const& opt = {}) {
    detail::Stopwatch clock;
    FinMonoid const   b21 = brandt_b21();
    Word const        w   = w_n(n);
    Alphabet          names;

    SeparationReport r;
    r.experiment = "wn-isoterm";
    r.facts.emplace_back("n", std::to_string(n));
    r.facts.emplace_back("w", to_string(w, names));
    r.facts.emplace_back("mode", opt.mode == WnOptions::Mode::permutation ? "permutation"
                                                                          : "bounded");

    if (opt.mode == WnOptions::Mode::bounded) {
      IsotermOptions iopt;
      iopt.max_len          = opt.max_len;
      iopt.battery          = opt.battery;
      iopt.seed             = opt.seed;
      iopt.candidate_budget = opt.candidate_budget;
      iopt.check.workers    = opt.workers;
      IsotermResult res     = isoterm_search(b21, w, iopt);
      r.facts.emplace_back("max_len", std::to_string(opt.max_len));
      r.facts.emplace_back("candidates", std::to_string(res.candidates));
      r.facts.emplace_back("battery_survivors", std::to_string(res.survivors));
      r.passed = !res.witness;
      ReportRow row;
      row.instance = "B21";
      row.identity = "w_" + std::to_string(n) + " = w'";
      row.verdict  = res.witness ? Verdict::satisfied : Verdict::refuted;
      row.strategy = "bounded";
      row.seed     = opt.seed;
      row.note     = res.witness ? "identified with " + to_string(*res.witness, names)
                                 : "no other word up to the length bound";
      row.seconds  = clock.seconds();
      r.rows.push_back(std::move(row));
      return r;
    }

    std::uint64_t const total = multiset_permutations(w);
    if (total > opt.candidate_budget) {
      throw BudgetExceeded("wn_isoterm_experiment: " + std::to_string(total)
                           + " permutations exceed the candidate budget");
    }
    std::set<Letter> const          con = content(w);
    std::vector<Letter>             vars(con.begin(), con.end());
    std::map<Letter, std::uint32_t> slot;
    for (std::uint32_t i = 0; i < vars.size(); ++i) {
      slot[vars[i]] = i;
    }
    std::vector<std::vector<Element>> battery(opt.battery);
    std::vector<Element>              target(opt.battery);
    Rng                               rng(opt.seed);
    for (std::size_t k = 0; k < opt.battery; ++k) {
      for (std::size_t i = 0; i < vars.size(); ++i) {
        battery[k].push_back(static_cast<Element>(rng.below(b21.size())));
      }
      Element acc = b21.identity();
      for (Letter l : w) {
        acc = b21.product(acc, battery[k][slot[l]]);
      }
      target[k] = acc;
    }

    // One task per distinct first letter; results merge in lexicographic order.
    std::vector<std::uint32_t> sorted;
    for (Letter l : w) {
      sorted.push_back(slot[l]);
    }
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::uint32_t> firsts(sorted.begin(), sorted.end());
    firsts.erase(std::unique(firsts.begin(), firsts.end()), firsts.end());
    std::vector<std::uint64_t>                      scanned(firsts.size(), 0);
    std::vector<std::vector<std::vector<uint32_t>>> passed(firsts.size());
    run_tasks(firsts.size(), opt.workers, [&](std::size_t t) {
      std::vector<std::uint32_t> rest = sorted;
      rest.erase(std::find(rest.begin(), rest.end(), firsts[t]));
      std::vector<std::uint32_t> cand{firsts[t]};
      cand.insert(cand.end(), rest.begin(), rest.end());
      do {
        ++scanned[t];
        bool ok = true;
        for (std::size_t k = 0; k < opt.battery && ok; ++k) {
          Element acc = b21.identity();
          for (std::uint32_t v : cand) {
            acc = b21.product(acc, battery[k][v]);
          }
          ok = acc == target[k];
        }
        if (ok) {
          passed[t].push_back(cand);
        }
      } while (std::next_permutation(cand.begin() + 1, cand.end()));
    });

    std::uint64_t      scanned_total = 0;
    std::vector<Word>  battery_survivors;
    for (std::size_t t = 0; t < firsts.size(); ++t) {
      scanned_total += scanned[t];
      for (auto const& c : passed[t]) {
        Word cw;
        for (std::uint32_t v : c) {
          cw.push_back(vars[v]);
        }
        battery_survivors.push_back(std::move(cw));
      }
    }
    std::vector<Word> survivors;
    for (Word const& c : battery_survivors) {
      if (satisfies(b21, Identity{w, c}).verdict == Verdict::satisfied) {
        survivors.push_back(c);
      }
    }
    bool sole = survivors.size() == 1 && survivors.front() == w;
    r.facts.emplace_back("permutations", std::to_string(scanned_total));
    r.facts.emplace_back("expected_permutations", std::to_string(total));
    r.facts.emplace_back("battery", std::to_string(opt.battery));
    r.facts.emplace_back("battery_survivors", std::to_string(battery_survivors.size()));
    r.facts.emplace_back("exhaustive_survivors", std::to_string(survivors.size()));
    r.facts.emplace_back("sole_survivor", sole ? "true" : "false");
    r.passed = sole && scanned_total == total;

    for (Word const& s : survivors) {
      ReportRow row;
      row.instance = "B21";
      row.identity = detail::identity_string(Identity{w, s}, names);
      row.verdict  = Verdict::satisfied;
      row.strategy = "exhaustive";
      row.note     = "survivor";
      r.rows.push_back(std::move(row));
    }
    Word const         wp  = w_n_prime(n);
    SatisfactionResult res = satisfies(b21, Identity{w, wp});
    ReportRow          row;
    row.instance = "B21";
    row.identity = detail::identity_string(Identity{w, wp}, names);
    row.verdict  = res.verdict;
    if (res.counterexample) {
      row.witness = detail::name_assignment(b21, *res.counterexample, names);
    }
    row.strategy = "exhaustive";
    row.note     = "w'_n";
    row.seed     = opt.seed;
    row.seconds  = clock.seconds();
    r.rows.push_back(std::move(row));
    r.passed = r.passed && res.verdict == Verdict::refuted;
    return r;
  }

  enum class ImageShape { xyxy, xyxyx };

  struct ImageClassification {
    ImageShape        shape = ImageShape::xyxy;
    std::size_t       k = 2, max_len = 0;
    std::uint64_t     candidates = 0;
    std::vector<Word> satisfied;  // length-lex order
    std::vector<Word> expected;
    bool              matches = false;
    Alphabet          names;
    Letter            x, y;
  };

  // All v over {x, y} with |v| <= max_len and B21 |= (xy)^k [x] = v, against
  // the family (xy)^h [x], h >= 2.
  inline ImageClassification b21_image_classification(std::size_t k, ImageShape shape,
                                                      std::size_t max_len) {
    if (k < 2) {
      throw PreconditionError("b21_image_classification: k must be at least 2");
    }
    if (max_len > 20) {
      throw BudgetExceeded("b21_image_classification: 2^max_len candidates too many");
    }
    ImageClassification out;
    out.shape   = shape;
    out.k       = k;
    out.max_len = max_len;
    out.x       = out.names.intern("x");
    out.y       = letters::y;
    Word const xy{out.x, out.y};
    auto       family = [&](std::size_t h) {
      Word f = power(xy, h);
      if (shape == ImageShape::xyxyx) {
        f.push_back(out.x);
      }
      return f;
    };
    Word const      lhs = family(k);
    FinMonoid const b21 = brandt_b21();
    for_each_word({out.x, out.y}, max_len, [&](Word const& v) {
      ++out.candidates;
      if (satisfies(b21, Identity{lhs, v}).verdict == Verdict::satisfied) {
        out.satisfied.push_back(v);
      }
      return false;
    });
    for (std::size_t h = 2; family(h).size() <= max_len; ++h) {
      out.expected.push_back(family(h));
    }
    out.matches = out.satisfied == out.expected;
    return out;
  }

  // Same content and no simple letter on either side.
  inline bool zimin_criterion(Word const& u, Word const& v) {
    return content(u) == content(v) && simple_letters(u).empty() && simple_letters(v).empty();
  }

  // Randomized search for a counterexample to u = v in M(z_n).
  inline SatisfactionResult zimin_probe(Word const& u, Word const& v, std::size_t n,
                                        std::uint64_t samples, std::uint64_t seed,
                                        std::size_t workers = 1) {
    ZiminMonoid         m(n);
    SatisfactionOptions opt;
    opt.workers = workers;
    return satisfies(m, Identity{u, v}, Strategy::randomized(samples, seed), opt);
  }

  // Contrapositive desk check for B21 membership: without a majority
  // 2-colouring the B21 witness must refuse, and p_H = p_H^2 must fail in
  // M_H. Membership itself is not decided here.
  inline SeparationReport majority_necessity_experiment(Hypergraph const& h) {
    detail::Stopwatch clock;
    SeparationReport  r;
    r.experiment     = "majority-necessity";
    bool colourable  = has_majority_colouring(h);
    bool buildable   = girth(h).at_least(4) && !h.has_isolated_vertices();
    r.facts          = {{"vertices", std::to_string(h.vertex_count())},
                        {"edges", std::to_string(h.edges().size())},
                        {"girth", girth(h).to_string()},
                        {"majority_colourable", colourable ? "true" : "false"}};
    std::string const instance = "H(" + std::to_string(h.vertex_count()) + "v,"
                                 + std::to_string(h.edges().size()) + "e)";

    ReportRow wrow;
    wrow.instance = instance;
    wrow.identity = "M_H in B21";
    wrow.strategy = "b21-witness";
    bool witnessed = false;
    if (!colourable || buildable) {
      B21WitnessReport w = b21_witness(h);
      witnessed          = !w.refused;
      wrow.verdict       = witnessed ? Verdict::satisfied : Verdict::refuted;
      wrow.note          = witnessed ? "isomorphism onto M_H verified" : "refused: " + w.refusal;
    } else {
      wrow.verdict = Verdict::inconclusive;
      wrow.note    = "not buildable: needs girth >= 4 and no isolated vertices";
    }
    wrow.seconds = clock.seconds();
    r.rows.push_back(wrow);
    r.facts.emplace_back("witness", witnessed ? "verified" : "none");

    bool separated = false;
    if (buildable) {
      SeparationReport sf = self_failure_check(h);
      separated           = sf.passed;
      ReportRow prow      = sf.rows.at(0);
      prow.instance       = instance;
      prow.seconds        = clock.seconds();
      r.rows.push_back(prow);
    }
    r.facts.emplace_back("p_H_fails", separated ? "true" : "false");
    // A verified witness without a majority colouring would contradict the
    // necessity Lemma.
    r.passed = colourable || (!witnessed && (separated || !buildable));
    return r;
  }

}  // namespace varlab
