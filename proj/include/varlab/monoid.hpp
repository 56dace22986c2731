#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"
#include "words.hpp"

namespace varlab {

  using Element = std::uint32_t;

  // Anything with a finite element set 0..size()-1 and a product.
  template <typename M>
  concept FiniteMonoid = requires(M const& m, Element a, Element b) {
    { m.size() } -> std::convertible_to<std::size_t>;
    { m.product(a, b) } -> std::convertible_to<Element>;
    { m.identity() } -> std::convertible_to<Element>;
    { m.zero() } -> std::convertible_to<std::optional<Element>>;
    { m.label(a) } -> std::convertible_to<std::string>;
  };

  template <FiniteMonoid M>
  std::vector<Element> idempotents(M const& m) {
    std::vector<Element> out;
    for (Element e = 0; e < m.size(); ++e) {
      if (m.product(e, e) == e) {
        out.push_back(e);
      }
    }
    return out;
  }

  // Elements reachable from the identity by right multiplication with gens,
  // in BFS order (the identity first).
  template <FiniteMonoid M>
  std::vector<Element> closure(M const& m, std::vector<Element> const& gens) {
    std::vector<Element> order{m.identity()};
    std::vector<bool>    seen(m.size(), false);
    seen[m.identity()] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (Element g : gens) {
        Element y = m.product(order[i], g);
        if (!seen[y]) {
          seen[y] = true;
          order.push_back(y);
        }
      }
    }
    return order;
  }

  // Greedy generating set: keep adding the first element not yet generated.
  template <FiniteMonoid M>
  std::vector<Element> generating_set(M const& m, std::vector<Element> hint = {}) {
    std::vector<Element> gens;
    std::vector<bool>    seen(m.size(), false);
    std::vector<Element> reached{m.identity()};
    seen[m.identity()] = true;
    std::size_t done   = 0;
    auto        extend = [&](Element g) {
      gens.push_back(g);
      done = 0;  // new generator: rescan everything reached so far
      for (; done < reached.size(); ++done) {
        for (Element h : gens) {
          Element y = m.product(reached[done], h);
          if (!seen[y]) {
            seen[y] = true;
            reached.push_back(y);
          }
        }
      }
    };
    for (Element g : hint) {
      if (!seen[g]) {
        extend(g);
      }
    }
    for (Element x = 0; x < m.size(); ++x) {
      if (!seen[x]) {
        extend(x);
      }
    }
    return gens;
  }

  template <FiniteMonoid M>
  std::optional<Element> detect_zero(M const& m) {
    for (Element z = 0; z < m.size(); ++z) {
      bool ok = true;
      for (Element a = 0; a < m.size() && ok; ++a) {
        ok = m.product(z, a) == z && m.product(a, z) == z;
      }
      if (ok) {
        return z;
      }
    }
    return std::nullopt;
  }

  struct AssociativityFailure {
    Element a, b, c;
  };

  // Light's test: the set of g with (xg)y = x(gy) for all x, y is closed
  // under products, so it suffices to test g over a generating set.
  template <FiniteMonoid M>
  std::optional<AssociativityFailure> find_nonassociative(M const&                    m,
                                                          std::vector<Element> const& gens) {
    std::size_t const n = m.size();
    for (Element g : gens) {
      for (Element x = 0; x < n; ++x) {
        Element xg = m.product(x, g);
        for (Element y = 0; y < n; ++y) {
          if (m.product(xg, y) != m.product(x, m.product(g, y))) {
            return AssociativityFailure{x, g, y};
          }
        }
      }
    }
    return std::nullopt;
  }

  // Multiplication-table monoid. Construction validates closure, identity
  // laws and associativity, and detects a zero.
  class FinMonoid {
   public:
    FinMonoid() : FinMonoid(1, {0}, 0, {"1"}) {}

    FinMonoid(std::size_t size, std::vector<Element> table, Element identity,
              std::vector<std::string> labels = {}, std::vector<Element> gens_hint = {})
        : _size(size),
          _table(std::move(table)),
          _identity(identity),
          _labels(std::move(labels)) {
      if (_size == 0) {
        throw InputError("monoid must have at least one element");
      }
      if (_table.size() != _size * _size) {
        throw InputError("table has " + std::to_string(_table.size())
                         + " entries, expected " + std::to_string(_size * _size));
      }
      if (_identity >= _size) {
        throw InputError("identity index out of range");
      }
      for (Element v : _table) {
        if (v >= _size) {
          throw InputError("table entry " + std::to_string(v) + " out of range");
        }
      }
      if (!_labels.empty() && _labels.size() != _size) {
        throw InputError("labels length does not match size");
      }
      for (Element a = 0; a < _size; ++a) {
        if (product(_identity, a) != a || product(a, _identity) != a) {
          throw Falsified("identity law fails at element " + label(a));
        }
      }
      _gens = varlab::generating_set(*this, std::move(gens_hint));
      if (auto bad = find_nonassociative(*this, _gens)) {
        throw Falsified("associativity fails: (" + label(bad->a) + "*" + label(bad->b)
                        + ")*" + label(bad->c) + " != " + label(bad->a) + "*("
                        + label(bad->b) + "*" + label(bad->c) + ")");
      }
      _zero = detect_zero(*this);
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return _size;
    }

    [[nodiscard]] Element product(Element a, Element b) const noexcept {
      return _table[std::size_t(a) * _size + b];
    }

    [[nodiscard]] Element identity() const noexcept {
      return _identity;
    }

    [[nodiscard]] std::optional<Element> zero() const noexcept {
      return _zero;
    }

    [[nodiscard]] std::string label(Element a) const {
      return _labels.empty() ? std::to_string(a) : _labels.at(a);
    }

    [[nodiscard]] std::vector<std::string> const& labels() const noexcept {
      return _labels;
    }

    [[nodiscard]] std::optional<Element> find(std::string const& lbl) const {
      auto it = std::find(_labels.begin(), _labels.end(), lbl);
      if (it == _labels.end()) {
        return std::nullopt;
      }
      return static_cast<Element>(it - _labels.begin());
    }

    [[nodiscard]] Element at(std::string const& lbl) const {
      if (auto e = find(lbl)) {
        return *e;
      }
      throw InputError("no element labelled '" + lbl + "'");
    }

    [[nodiscard]] std::vector<Element> const& table() const noexcept {
      return _table;
    }

    [[nodiscard]] std::vector<Element> const& generators() const noexcept {
      return _gens;
    }

    // Full O(n^3) check, for tests that want it independently of Light's test.
    [[nodiscard]] bool is_associative_bruteforce() const {
      for (Element a = 0; a < _size; ++a) {
        for (Element b = 0; b < _size; ++b) {
          Element ab = product(a, b);
          for (Element c = 0; c < _size; ++c) {
            if (product(ab, c) != product(a, product(b, c))) {
              return false;
            }
          }
        }
      }
      return true;
    }

   private:
    std::size_t              _size;
    std::vector<Element>     _table;
    Element                  _identity;
    std::optional<Element>   _zero;
    std::vector<std::string> _labels;
    std::vector<Element>     _gens;
  };

  static_assert(FiniteMonoid<FinMonoid>);

  // Copy any monoid into table form.
  template <FiniteMonoid M>
  FinMonoid to_table(M const& m, std::size_t max_size = 4096) {
    std::size_t n = m.size();
    if (n > max_size) {
      throw BudgetExceeded("to_table: " + std::to_string(n) + " elements exceeds "
                           + std::to_string(max_size));
    }
    std::vector<Element>     table(n * n);
    std::vector<std::string> labels(n);
    for (Element a = 0; a < n; ++a) {
      labels[a] = m.label(a);
      for (Element b = 0; b < n; ++b) {
        table[a * n + b] = m.product(a, b);
      }
    }
    return FinMonoid(n, std::move(table), m.identity(), std::move(labels));
  }

  namespace detail {
    // Table of a monoid given by reduced words over letters, 0 and 1.
    template <typename Reduce>
    FinMonoid from_reduced_words(std::vector<std::string> const& labels, Reduce reduce) {
      std::size_t          n = labels.size();
      std::vector<Element> table(n * n);
      auto                 index = [&](std::string const& w) {
        auto it = std::find(labels.begin(), labels.end(), w);
        if (it == labels.end()) {
          throw Falsified("reduction produced unknown word '" + w + "'");
        }
        return static_cast<Element>(it - labels.begin());
      };
      for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
          std::string const &x = labels[a], &y = labels[b];
          std::string        r;
          if (x == "0" || y == "0") {
            r = "0";
          } else if (x == "1") {
            r = y;
          } else if (y == "1") {
            r = x;
          } else {
            r = reduce(x + y);
          }
          table[a * n + b] = index(r);
        }
      }
      return FinMonoid(n, std::move(table), index("1"), labels);
    }

    template <typename Rules>
    std::string rewrite_to_normal(std::string w, Rules const& rules) {
      bool changed = true;
      while (changed) {
        changed = false;
        for (auto const& [lhs, rhs] : rules) {
          auto pos = w.find(lhs);
          if (pos != std::string::npos) {
            if (rhs == "0") {
              return "0";
            }
            w.replace(pos, lhs.size(), rhs);
            changed = true;
          }
        }
      }
      return w;
    }
  }  // namespace detail

  namespace b21 {
    inline constexpr Element zero = 0, one = 1, a = 2, b = 3, ab = 4, ba = 5;
  }
  namespace a21 {
    inline constexpr Element zero = 0, one = 1, c = 2, d = 3, cd = 4, dc = 5;
  }

  // aa = bb = 0, aba = a, bab = b
  inline FinMonoid brandt_b21() {
    static std::vector<std::pair<std::string, std::string>> const rules{
        {"aa", "0"}, {"bb", "0"}, {"aba", "a"}, {"bab", "b"}};
    return detail::from_reduced_words({"0", "1", "a", "b", "ab", "ba"}, [](std::string w) {
      return detail::rewrite_to_normal(std::move(w), rules);
    });
  }

  // cc = 0, dd = d, cdc = c, dcd = d
  inline FinMonoid brandt_a21() {
    static std::vector<std::pair<std::string, std::string>> const rules{
        {"cc", "0"}, {"dd", "d"}, {"cdc", "c"}, {"dcd", "d"}};
    return detail::from_reduced_words({"0", "1", "c", "d", "cd", "dc"}, [](std::string w) {
      return detail::rewrite_to_normal(std::move(w), rules);
    });
  }

  inline FinMonoid trivial_monoid() {
    return FinMonoid();
  }

  using Assignment = std::map<Letter, Element>;

  template <FiniteMonoid M>
  Element evaluate(M const& m, Assignment const& theta, Word const& w) {
    Element acc = m.identity();
    for (Letter l : w) {
      auto it = theta.find(l);
      if (it == theta.end()) {
        throw InputError("evaluate: letter #" + std::to_string(l.id)
                         + " not covered by the assignment");
      }
      acc = m.product(acc, it->second);
    }
    return acc;
  }

  // Product of a sequence of elements.
  template <FiniteMonoid M>
  Element multiply(M const& m, std::initializer_list<Element> xs) {
    Element acc = m.identity();
    for (Element x : xs) {
      acc = m.product(acc, x);
    }
    return acc;
  }

}  // namespace varlab
