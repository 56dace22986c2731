#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "monoid.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "words.hpp"

namespace varlab {

  struct Identity {
    Word lhs;
    Word rhs;

    [[nodiscard]] bool trivial() const {
      return lhs == rhs;
    }

    [[nodiscard]] Identity reversed() const {
      return {rhs, lhs};
    }

    // Variables in order of first occurrence, left side first.
    [[nodiscard]] std::vector<Letter> variables() const {
      std::vector<Letter> out;
      std::set<Letter>    seen;
      for (Word const* w : {&lhs, &rhs}) {
        for (Letter l : *w) {
          if (seen.insert(l).second) {
            out.push_back(l);
          }
        }
      }
      return out;
    }

    bool operator==(Identity const&) const = default;
  };

  enum class Verdict { satisfied, refuted, inconclusive };

  inline std::string to_string(Verdict v) {
    switch (v) {
      case Verdict::satisfied:
        return "satisfied";
      case Verdict::refuted:
        return "refuted";
      default:
        return "inconclusive";
    }
  }

  struct Strategy {
    enum class Kind { exhaustive, randomized } kind = Kind::exhaustive;
    std::uint64_t samples = 0;
    std::uint64_t seed    = 0;

    static Strategy exhaustive() {
      return {};
    }
    static Strategy randomized(std::uint64_t samples, std::uint64_t seed) {
      return {Kind::randomized, samples, seed};
    }
  };

  struct SatisfactionOptions {
    // Exhaustive mode refuses when size^variables exceeds this.
    std::uint64_t max_space = 500000000;
    // Cap on search nodes per top-level branch; 0 disables it.
    std::uint64_t node_budget = 0;
    std::size_t   workers     = 1;
    // Longest factor tested for zero absorption during pruning.
    std::size_t factor_len = 4;
  };

  struct SatisfactionResult {
    Verdict                   verdict = Verdict::satisfied;
    std::optional<Assignment> counterexample;
    Strategy                  strategy;
    std::uint64_t             space   = 0;  // size^variables, saturating
    std::uint64_t             checked = 0;  // randomized samples drawn
  };

  namespace detail {
    inline std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
      std::uint64_t r = 1;
      for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) {
          return std::numeric_limits<std::uint64_t>::max();
        }
        r *= base;
      }
      return r;
    }

    // An identity with letters renamed to 0..k-1 in first-occurrence order.
    struct CompiledIdentity {
      std::vector<Letter>   vars;
      std::vector<uint32_t> sides[2];

      explicit CompiledIdentity(Identity const& id) : vars(id.variables()) {
        std::map<Letter, std::uint32_t> index;
        for (std::uint32_t i = 0; i < vars.size(); ++i) {
          index[vars[i]] = i;
        }
        for (Letter l : id.lhs) {
          sides[0].push_back(index[l]);
        }
        for (Letter l : id.rhs) {
          sides[1].push_back(index[l]);
        }
      }

      Assignment assignment(std::vector<Element> const& values) const {
        Assignment a;
        for (std::size_t i = 0; i < vars.size(); ++i) {
          a[vars[i]] = values[i];
        }
        return a;
      }
    };

    template <FiniteMonoid M>
    Element fold(M const& m, std::vector<std::uint32_t> const& side,
                 std::vector<Element> const& values) {
      Element acc = m.identity();
      for (std::uint32_t v : side) {
        acc = m.product(acc, values[v]);
      }
      return acc;
    }

    // Depth-first search over assignments in lexicographic order of the
    // value vector. A side is known to be zero as soon as one of its short
    // factors is fully assigned and evaluates to zero; both sides zero
    // prunes the subtree, one side zero with the other side fully assigned
    // and nonzero yields the first counterexample of the subtree directly.
    template <FiniteMonoid M>
    class ExhaustiveSearch {
     public:
      ExhaustiveSearch(M const& m, CompiledIdentity const& id, std::size_t factor_len)
          : _m(m), _id(id), _zero(m.zero()), _k(id.vars.size()) {
        for (int s = 0; s < 2; ++s) {
          auto const& side = id.sides[s];
          _last_var[s]     = 0;
          for (auto v : side) {
            _last_var[s] = std::max<std::size_t>(_last_var[s], v + 1);
          }
          _factors[s].resize(_k);
          if (!_zero) {
            continue;
          }
          std::set<std::vector<std::uint32_t>> seen;
          for (std::size_t len = 1; len <= factor_len; ++len) {
            for (std::size_t i = 0; i + len <= side.size(); ++i) {
              std::vector<std::uint32_t> f(side.begin() + i, side.begin() + i + len);
              if (seen.insert(f).second) {
                auto last = *std::max_element(f.begin(), f.end());
                _factors[s][last].push_back(std::move(f));
              }
            }
          }
        }
      }

      // First counterexample with variable 0 fixed to `first`, or none.
      // Returns false from `ok` if the node budget ran out.
      std::optional<std::vector<Element>> run(Element first, std::uint64_t node_budget,
                                              std::atomic<std::size_t> const* stop,
                                              std::size_t my_index, bool& ok) {
        _values.assign(_k, 0);
        _budget   = node_budget;
        _nodes    = 0;
        _stop     = stop;
        _my_index = my_index;
        _aborted  = false;
        std::optional<std::vector<Element>> found;
        if (_k == 0) {
          if (fold(_m, _id.sides[0], _values) != fold(_m, _id.sides[1], _values)) {
            found = _values;
          }
          ok = true;
          return found;
        }
        _values[0] = first;
        found      = visit(1, false, false);
        ok         = !_aborted;
        return found;
      }

     private:
      bool factor_zero(int s, std::size_t var) const {
        for (auto const& f : _factors[s][var]) {
          Element acc = _m.identity();
          for (auto v : f) {
            acc = _m.product(acc, _values[v]);
          }
          if (acc == *_zero) {
            return true;
          }
        }
        return false;
      }

      std::optional<std::vector<Element>> visit(std::size_t depth, bool lz, bool rz) {
        if (++_nodes > _budget && _budget != 0) {
          _aborted = true;
          return std::nullopt;
        }
        if ((_nodes & 0x3ff) == 0 && _stop != nullptr && _stop->load() < _my_index) {
          return std::nullopt;
        }
        std::size_t var = depth - 1;
        if (_zero) {
          lz = lz || factor_zero(0, var);
          rz = rz || factor_zero(1, var);
        }
        if (lz && rz) {
          return std::nullopt;
        }
        bool lfull = _last_var[0] <= depth, rfull = _last_var[1] <= depth;
        if ((lfull || lz) && (rfull || rz)) {
          Element lv = lz ? *_zero : fold(_m, _id.sides[0], _values);
          Element rv = rz ? *_zero : fold(_m, _id.sides[1], _values);
          if (lv == rv) {
            return std::nullopt;
          }
          std::vector<Element> out = _values;
          std::fill(out.begin() + depth, out.end(), 0);
          return out;
        }
        for (Element x = 0; x < _m.size(); ++x) {
          _values[depth] = x;
          if (auto r = visit(depth + 1, lz, rz)) {
            return r;
          }
          if (_aborted) {
            return std::nullopt;
          }
        }
        _values[depth] = 0;
        return std::nullopt;
      }

      M const&                                      _m;
      CompiledIdentity const&                       _id;
      std::optional<Element>                        _zero;
      std::size_t                                   _k;
      std::size_t                                   _last_var[2] = {0, 0};
      std::vector<std::vector<std::vector<uint32_t>>> _factors[2];
      std::vector<Element>                          _values;
      std::uint64_t                                 _budget   = 0;
      std::uint64_t                                 _nodes    = 0;
      std::atomic<std::size_t> const*               _stop     = nullptr;
      std::size_t                                   _my_index = 0;
      bool                                          _aborted  = false;
    };
  }  // namespace detail

  template <FiniteMonoid M>
  SatisfactionResult satisfies(M const& m, Identity const& id,
                               Strategy const&            strategy = Strategy::exhaustive(),
                               SatisfactionOptions const& opt      = {}) {
    detail::CompiledIdentity cid(id);
    SatisfactionResult       res;
    res.strategy = strategy;
    res.space    = detail::saturating_pow(m.size(), cid.vars.size());

    if (strategy.kind == Strategy::Kind::exhaustive) {
      if (res.space > opt.max_space) {
        throw BudgetExceeded("satisfies: assignment space " + std::to_string(m.size()) + "^"
                             + std::to_string(cid.vars.size())
                             + " exceeds the budget; use randomized mode");
      }
      std::size_t tasks = cid.vars.empty() ? 1 : m.size();
      std::vector<std::optional<std::vector<Element>>> found(tasks);
      std::vector<char>                                exhausted(tasks, 0);
      std::atomic<std::size_t>                         stop{tasks};
      run_tasks(tasks, opt.workers, [&](std::size_t t) {
        if (stop.load() < t) {
          return;
        }
        detail::ExhaustiveSearch<M> search(m, cid, opt.factor_len);
        bool                        ok = true;
        found[t] = search.run(static_cast<Element>(t), opt.node_budget, &stop, t, ok);
        exhausted[t] = !ok;
        if (found[t] || !ok) {
          std::size_t cur = stop.load();
          while (t < cur && !stop.compare_exchange_weak(cur, t)) {
          }
        }
      });
      for (std::size_t t = 0; t < tasks; ++t) {
        if (exhausted[t]) {
          throw BudgetExceeded("satisfies: node budget " + std::to_string(opt.node_budget)
                               + " exhausted in branch " + std::to_string(t));
        }
        if (found[t]) {
          res.verdict        = Verdict::refuted;
          res.counterexample = cid.assignment(*found[t]);
          break;
        }
      }
    } else {
      constexpr std::uint64_t block = 4096;
      std::uint64_t const     n     = strategy.samples;
      std::size_t const       nb    = (n + block - 1) / block;
      std::vector<std::optional<std::vector<Element>>> found(nb);
      std::atomic<std::size_t>                         stop{nb};
      run_tasks(nb, opt.workers, [&](std::size_t b) {
        if (stop.load() < b) {
          return;
        }
        Rng                  rng = Rng::for_block(strategy.seed, b);
        std::vector<Element> values(cid.vars.size());
        std::uint64_t        end = std::min<std::uint64_t>(n, (b + 1) * block);
        for (std::uint64_t s = b * block; s < end; ++s) {
          for (auto& v : values) {
            v = static_cast<Element>(rng.below(m.size()));
          }
          if (detail::fold(m, cid.sides[0], values) != detail::fold(m, cid.sides[1], values)) {
            found[b] = values;
            std::size_t cur = stop.load();
            while (b < cur && !stop.compare_exchange_weak(cur, b)) {
            }
            return;
          }
        }
      });
      res.verdict = Verdict::inconclusive;
      res.checked = n;
      for (std::size_t b = 0; b < nb; ++b) {
        if (found[b]) {
          res.verdict        = Verdict::refuted;
          res.counterexample = cid.assignment(*found[b]);
          break;
        }
      }
    }
    if (res.counterexample) {
      if (evaluate(m, *res.counterexample, id.lhs) == evaluate(m, *res.counterexample, id.rhs)) {
        throw Falsified("satisfies: counterexample failed re-verification");
      }
    }
    return res;
  }

  template <FiniteMonoid M>
  bool models(M const& m, Identity const& id) {
    return satisfies(m, id).verdict == Verdict::satisfied;
  }

  // Calls fn(word) for every word over `alphabet` of length <= max_len, in
  // length-lexicographic order; stops early if fn returns true.
  template <typename Fn>
  bool for_each_word(std::vector<Letter> const& alphabet, std::size_t max_len, Fn&& fn) {
    for (std::size_t len = 0; len <= max_len; ++len) {
      if (alphabet.empty() && len > 0) {
        break;
      }
      std::vector<std::size_t> digits(len, 0);
      Word                     w(len, alphabet.empty() ? Letter{} : alphabet[0]);
      while (true) {
        if (fn(static_cast<Word const&>(w))) {
          return true;
        }
        std::size_t i = len;
        while (i > 0 && digits[i - 1] + 1 == alphabet.size()) {
          digits[i - 1] = 0;
          w[i - 1]      = alphabet[0];
          --i;
        }
        if (i == 0) {
          break;
        }
        ++digits[i - 1];
        w[i - 1] = alphabet[digits[i - 1]];
      }
    }
    return false;
  }

  struct IsotermOptions {
    std::size_t                        max_len = 6;
    std::optional<std::vector<Letter>> alphabet;  // default: content of w
    bool                               same_content     = true;
    std::size_t                        battery          = 64;
    std::uint64_t                      seed             = 1;
    std::uint64_t                      candidate_budget = 50000000;
    SatisfactionOptions                check;
  };

  struct IsotermResult {
    std::optional<Word> witness;
    std::uint64_t       candidates = 0;  // words examined
    std::uint64_t       survivors  = 0;  // passed the random battery
  };

  // Bounded search for w' != w with M |= w = w'. Candidates pass a battery
  // of random assignments before the exhaustive check.
  template <FiniteMonoid M>
  IsotermResult isoterm_search(M const& m, Word const& w, IsotermOptions const& opt = {}) {
    std::set<Letter>    con = content(w);
    std::vector<Letter> alphabet =
        opt.alphabet ? *opt.alphabet : std::vector<Letter>(con.begin(), con.end());
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());

    std::uint64_t total = 0;
    for (std::size_t len = 0; len <= opt.max_len; ++len) {
      total += detail::saturating_pow(alphabet.size(), len);
      if (total > opt.candidate_budget) {
        throw BudgetExceeded("isoterm_search: more than " + std::to_string(opt.candidate_budget)
                             + " candidate words");
      }
    }

    std::vector<Letter> letters(con.begin(), con.end());
    for (Letter l : alphabet) {
      if (!con.count(l)) {
        letters.push_back(l);
      }
    }
    std::map<Letter, std::size_t> slot;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      slot[letters[i]] = i;
    }
    std::vector<std::vector<Element>> battery(opt.battery);
    std::vector<Element>              target(opt.battery);
    Rng                               rng(opt.seed);
    for (std::size_t b = 0; b < opt.battery; ++b) {
      battery[b].resize(letters.size());
      for (auto& v : battery[b]) {
        v = static_cast<Element>(rng.below(m.size()));
      }
      Element acc = m.identity();
      for (Letter l : w) {
        acc = m.product(acc, battery[b][slot[l]]);
      }
      target[b] = acc;
    }

    IsotermResult res;
    for_each_word(alphabet, opt.max_len, [&](Word const& cand) {
      if (cand == w) {
        return false;
      }
      if (opt.same_content && content(cand) != con) {
        return false;
      }
      ++res.candidates;
      for (std::size_t b = 0; b < opt.battery; ++b) {
        Element acc = m.identity();
        for (Letter l : cand) {
          acc = m.product(acc, battery[b][slot[l]]);
        }
        if (acc != target[b]) {
          return false;
        }
      }
      ++res.survivors;
      if (satisfies(m, Identity{w, cand}, Strategy::exhaustive(), opt.check).verdict
          == Verdict::satisfied) {
        res.witness = cand;
        return true;
      }
      return false;
    });
    return res;
  }

}  // namespace varlab
