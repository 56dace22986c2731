#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "monoid.hpp"

namespace varlab {

  struct MorphismOptions {
    bool        injective   = false;
    bool        surjective  = false;
    std::size_t node_budget = 5000000;
  };

  namespace detail {
    // (index, period) of the cyclic submonoid generated by x.
    template <FiniteMonoid M>
    std::pair<std::size_t, std::size_t> power_signature(M const& m, Element x) {
      std::map<Element, std::size_t> first;
      Element                        p = x;
      for (std::size_t k = 1;; ++k) {
        auto [it, fresh] = first.emplace(p, k);
        if (!fresh) {
          return {it->second, k - it->second};
        }
        p = m.product(p, x);
      }
    }

    template <FiniteMonoid M, FiniteMonoid N>
    class MorphismSearch {
     public:
      MorphismSearch(M const& m, N const& n, std::map<Element, Element> const& fixed,
                     MorphismOptions const& opt)
          : _m(m), _n(n), _fixed(fixed), _opt(opt) {
        std::vector<Element> hint;
        for (auto [k, v] : fixed) {
          if (k >= m.size() || v >= n.size()) {
            throw InputError("morphism constraint out of range");
          }
          hint.push_back(k);
        }
        _gens = generating_set(m, hint);
        if (opt.injective) {
          _sig_m.resize(m.size());
          _sig_n.resize(n.size());
          for (Element x = 0; x < m.size(); ++x) {
            _sig_m[x] = power_signature(m, x);
          }
          for (Element y = 0; y < n.size(); ++y) {
            _sig_n[y] = power_signature(n, y);
          }
        }
      }

      std::optional<std::vector<Element>> run() {
        _phi.assign(_m.size(), none);
        _used.assign(_n.size(), 0);
        std::vector<Element> set_here;
        if (!assign(_m.identity(), _n.identity(), set_here)) {
          return std::nullopt;
        }
        _reached.push_back(_m.identity());
        if (search(0)) {
          return _phi;
        }
        return std::nullopt;
      }

     private:
      static constexpr Element none = static_cast<Element>(-1);

      bool assign(Element x, Element y, std::vector<Element>& log) {
        if (_phi[x] != none) {
          return _phi[x] == y;
        }
        if (_opt.injective && _used[y] != 0) {
          return false;
        }
        auto it = _fixed.find(x);
        if (it != _fixed.end() && it->second != y) {
          return false;
        }
        _phi[x] = y;
        ++_used[y];
        log.push_back(x);
        return true;
      }

      void undo(std::vector<Element> const& log, std::size_t reached_before) {
        for (Element x : log) {
          --_used[_phi[x]];
          _phi[x] = none;
        }
        _reached.resize(reached_before);
      }

      // Extend phi over everything generated by gens[0..k], checking
      // phi(x g) = phi(x) phi(g) along the way.
      bool propagate(std::size_t k, std::vector<Element>& log) {
        for (std::size_t i = 0; i < _reached.size(); ++i) {
          Element x = _reached[i];
          for (std::size_t j = 0; j <= k; ++j) {
            Element g  = _gens[j];
            Element xg = _m.product(x, g);
            Element im = _n.product(_phi[x], _phi[g]);
            bool    fresh = _phi[xg] == none;
            if (!assign(xg, im, log)) {
              return false;
            }
            if (fresh) {
              _reached.push_back(xg);
            }
          }
        }
        return true;
      }

      bool search(std::size_t k) {
        if (k == _gens.size()) {
          return finish();
        }
        if (++_nodes > _opt.node_budget) {
          throw BudgetExceeded("morphism search exceeded node budget "
                               + std::to_string(_opt.node_budget));
        }
        Element g = _gens[k];
        std::vector<Element> candidates;
        if (_phi[g] != none) {
          candidates.push_back(_phi[g]);
        } else if (auto it = _fixed.find(g); it != _fixed.end()) {
          candidates.push_back(it->second);
        } else {
          for (Element y = 0; y < _n.size(); ++y) {
            if (!_opt.injective || _sig_m[g] == _sig_n[y]) {
              candidates.push_back(y);
            }
          }
        }
        for (Element y : candidates) {
          std::vector<Element> log;
          std::size_t          before = _reached.size();
          bool                 fresh  = _phi[g] == none;
          if (assign(g, y, log)) {
            if (fresh) {
              _reached.push_back(g);
            }
            if (propagate(k, log) && search(k + 1)) {
              return true;
            }
          }
          undo(log, before);
        }
        return false;
      }

      bool finish() const {
        for (Element a = 0; a < _m.size(); ++a) {
          if (_phi[a] == none) {
            return false;
          }
        }
        for (Element a = 0; a < _m.size(); ++a) {
          for (Element b = 0; b < _m.size(); ++b) {
            if (_phi[_m.product(a, b)] != _n.product(_phi[a], _phi[b])) {
              return false;
            }
          }
        }
        if (_opt.surjective) {
          for (Element y = 0; y < _n.size(); ++y) {
            if (_used[y] == 0) {
              return false;
            }
          }
        }
        return true;
      }

      M const&                                         _m;
      N const&                                         _n;
      std::map<Element, Element> const&                _fixed;
      MorphismOptions                                  _opt;
      std::vector<Element>                             _gens;
      std::vector<Element>                             _phi;
      std::vector<std::size_t>                         _used;
      std::vector<Element>                             _reached;
      std::vector<std::pair<std::size_t, std::size_t>> _sig_m, _sig_n;
      std::size_t                                      _nodes = 0;
    };
  }  // namespace detail

  // Monoid homomorphism M -> N extending the constraints, found by
  // backtracking over images of a generating set of M. The result is
  // checked against the full table before it is returned.
  template <FiniteMonoid M, FiniteMonoid N>
  std::optional<std::vector<Element>>
  find_homomorphism(M const& m, N const& n, std::map<Element, Element> const& constraints = {},
                    MorphismOptions const& opt = {}) {
    return detail::MorphismSearch<M, N>(m, n, constraints, opt).run();
  }

  template <FiniteMonoid M, FiniteMonoid N>
  std::optional<std::vector<Element>>
  find_isomorphism(M const& m, N const& n, std::map<Element, Element> const& constraints = {},
                   MorphismOptions opt = {}) {
    if (m.size() != n.size()) {
      return std::nullopt;
    }
    if (idempotents(m).size() != idempotents(n).size()) {
      return std::nullopt;
    }
    opt.injective  = true;
    opt.surjective = true;
    return find_homomorphism(m, n, constraints, opt);
  }

}  // namespace varlab
