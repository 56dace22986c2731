#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "monoid.hpp"

namespace varlab {

  struct Submonoid {
    FinMonoid            monoid;
    std::vector<Element> embedding;  // sub index -> parent index
  };

  // Closure of gens and the identity; elements in BFS order, identity first.
  template <FiniteMonoid M>
  Submonoid submonoid(M const& m, std::vector<Element> const& gens) {
    std::vector<Element>  elems = closure(m, gens);
    std::vector<Element>  index(m.size(), static_cast<Element>(-1));
    for (Element i = 0; i < elems.size(); ++i) {
      index[elems[i]] = i;
    }
    std::size_t              n = elems.size();
    std::vector<Element>     table(n * n);
    std::vector<std::string> labels(n);
    for (Element i = 0; i < n; ++i) {
      labels[i] = m.label(elems[i]);
      for (Element j = 0; j < n; ++j) {
        Element p = index[m.product(elems[i], elems[j])];
        if (p == static_cast<Element>(-1)) {
          throw Falsified("submonoid closure is not closed; parent is not associative");
        }
        table[i * n + j] = p;
      }
    }
    std::vector<Element> hint;
    for (Element g : gens) {
      hint.push_back(index[g]);
    }
    return {FinMonoid(n, std::move(table), 0, std::move(labels), std::move(hint)),
            std::move(elems)};
  }

  struct Quotient {
    FinMonoid            monoid;
    std::vector<Element> projection;  // parent index -> quotient index
  };

  // Collapse a two-sided ideal to a single zero. Ideal membership of the
  // products is checked against `gens` (any generating set; all elements
  // if empty). Non-ideal elements keep their relative order; the zero comes
  // first.
  template <FiniteMonoid M>
  Quotient rees_quotient(M const& m, std::vector<bool> const& in_ideal,
                         std::vector<Element> gens = {}) {
    std::size_t const n = m.size();
    if (in_ideal.size() != n) {
      throw InputError("rees_quotient: ideal mask has wrong length");
    }
    if (in_ideal[m.identity()]) {
      throw PreconditionError("rees_quotient: identity lies in the ideal");
    }
    if (gens.empty()) {
      gens.resize(n);
      for (Element x = 0; x < n; ++x) {
        gens[x] = x;
      }
    }
    bool any = false;
    for (Element i = 0; i < n; ++i) {
      if (!in_ideal[i]) {
        continue;
      }
      any = true;
      for (Element g : gens) {
        if (!in_ideal[m.product(i, g)] || !in_ideal[m.product(g, i)]) {
          Element bad = !in_ideal[m.product(i, g)] ? m.product(i, g) : m.product(g, i);
          throw PreconditionError("rees_quotient: not an ideal: " + m.label(i) + " and "
                                  + m.label(g) + " multiply to " + m.label(bad)
                                  + " outside the set");
        }
      }
    }
    std::vector<Element>     proj(n);
    std::vector<Element>     keep;
    std::vector<std::string> labels;
    if (any) {
      labels.push_back("0");
    }
    Element next = any ? 1 : 0;
    for (Element x = 0; x < n; ++x) {
      if (in_ideal[x]) {
        proj[x] = 0;
      } else {
        proj[x] = next++;
        keep.push_back(x);
        labels.push_back(m.label(x));
      }
    }
    std::size_t const    q = next;
    std::vector<Element> table(q * q, 0);
    for (Element i = 0; i < keep.size(); ++i) {
      for (Element j = 0; j < keep.size(); ++j) {
        table[proj[keep[i]] * q + proj[keep[j]]] = proj[m.product(keep[i], keep[j])];
      }
    }
    std::vector<Element> hint;
    for (Element g : gens) {
      hint.push_back(proj[g]);
    }
    return {FinMonoid(q, std::move(table), proj[m.identity()], std::move(labels),
                      std::move(hint)),
            std::move(proj)};
  }

  template <FiniteMonoid M>
  Quotient rees_quotient(M const& m, std::vector<Element> const& ideal,
                         std::vector<Element> gens = {}) {
    std::vector<bool> mask(m.size(), false);
    for (Element x : ideal) {
      if (x >= m.size()) {
        throw InputError("rees_quotient: element out of range");
      }
      mask[x] = true;
    }
    return rees_quotient(m, mask, std::move(gens));
  }

}  // namespace varlab
