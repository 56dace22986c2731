#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "monoid.hpp"
#include "words.hpp"

namespace varlab {

  // M(z_n): nonempty factors of z_n, a zero and an adjoined identity;
  // u*v = uv when uv is a factor, else 0. A factor is a pair (automaton
  // state, length) of the suffix automaton of z_n, so products cost |v|
  // transitions and no table is needed.
  class ZiminMonoid {
   public:
    static constexpr std::size_t max_n = 8;

    explicit ZiminMonoid(std::size_t n) : _n(n), _word(guarded_zimin(n)) {
      build_automaton();
      enumerate_factors();
    }

    static constexpr Element zero_element     = 0;
    static constexpr Element identity_element = 1;

    [[nodiscard]] std::size_t n() const noexcept {
      return _n;
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return _factors.size() + 2;
    }

    [[nodiscard]] Element identity() const noexcept {
      return identity_element;
    }

    [[nodiscard]] std::optional<Element> zero() const noexcept {
      return zero_element;
    }

    [[nodiscard]] Word factor(Element x) const {
      if (x < 2 || x >= size()) {
        throw InputError("zimin_monoid: element is not a factor");
      }
      Factor const& f = _factors[x - 2];
      return Word(_word.begin() + (f.end + 1 - f.len), _word.begin() + f.end + 1);
    }

    [[nodiscard]] std::string label(Element x) const {
      if (x == zero_element) {
        return "0";
      }
      if (x == identity_element) {
        return "1";
      }
      std::string out;
      for (Letter l : factor(x)) {
        out += "x" + std::to_string(l.id);
      }
      return out;
    }

    [[nodiscard]] std::optional<Element> element_of(Word const& w) const {
      if (w.empty()) {
        return identity_element;
      }
      std::size_t s = 0;
      for (Letter l : w) {
        auto t = step(s, l);
        if (!t) {
          return std::nullopt;
        }
        s = *t;
      }
      return encode(s, w.size());
    }

    [[nodiscard]] Element product(Element a, Element b) const {
      if (a == zero_element || b == zero_element) {
        return zero_element;
      }
      if (a == identity_element) {
        return b;
      }
      if (b == identity_element) {
        return a;
      }
      Factor const& fa = _factors[a - 2];
      Factor const& fb = _factors[b - 2];
      std::size_t   s  = fa.state;
      for (std::size_t i = fb.end + 1 - fb.len; i <= fb.end; ++i) {
        auto t = step(s, _word[i]);
        if (!t) {
          return zero_element;
        }
        s = *t;
      }
      return encode(s, fa.len + fb.len);
    }

   private:
    static Word guarded_zimin(std::size_t n) {
      if (n > max_n) {
        throw PreconditionError("zimin_monoid: n = " + std::to_string(n)
                                + " exceeds the size guard " + std::to_string(max_n));
      }
      return zimin(n);
    }

    struct State {
      std::size_t                          len  = 0;
      long                                 link = -1;
      std::size_t                          end  = 0;  // first end position
      std::map<std::uint32_t, std::size_t> next;
    };

    struct Factor {
      std::size_t state = 0;
      std::size_t len   = 0;
      std::size_t end   = 0;
    };

    std::optional<std::size_t> step(std::size_t s, Letter l) const {
      auto it = _states[s].next.find(l.id);
      if (it == _states[s].next.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    // A state holds the factors of lengths (len(link), len].
    Element encode(std::size_t state, std::size_t length) const {
      std::size_t lo = _states[_states[state].link].len;
      return static_cast<Element>(2 + _offset[state] + (length - lo - 1));
    }

    void build_automaton() {
      _states.push_back(State{});
      std::size_t last = 0;
      for (std::size_t i = 0; i < _word.size(); ++i) {
        std::uint32_t c   = _word[i].id;
        std::size_t   cur = _states.size();
        _states.push_back(State{_states[last].len + 1, -1, i, {}});
        long p = static_cast<long>(last);
        while (p != -1 && !_states[p].next.count(c)) {
          _states[p].next[c] = cur;
          p                  = _states[p].link;
        }
        if (p == -1) {
          _states[cur].link = 0;
        } else {
          std::size_t q = _states[p].next[c];
          if (_states[p].len + 1 == _states[q].len) {
            _states[cur].link = static_cast<long>(q);
          } else {
            std::size_t clone = _states.size();
            State       copy  = _states[q];
            copy.len          = _states[p].len + 1;
            _states.push_back(copy);
            while (p != -1 && _states[p].next[c] == q) {
              _states[p].next[c] = clone;
              p                  = _states[p].link;
            }
            _states[q].link   = static_cast<long>(clone);
            _states[cur].link = static_cast<long>(clone);
          }
        }
        last = cur;
      }
    }

    // Factors are numbered state by state in automaton order, shortest
    // first within a state.
    void enumerate_factors() {
      _offset.assign(_states.size(), 0);
      for (std::size_t s = 1; s < _states.size(); ++s) {
        _offset[s] = _factors.size();
        for (std::size_t len = _states[_states[s].link].len + 1; len <= _states[s].len;
             ++len) {
          _factors.push_back(Factor{s, len, _states[s].end});
        }
      }
    }

    std::size_t              _n;
    Word                     _word;
    std::vector<State>       _states;
    std::vector<std::size_t> _offset;
    std::vector<Factor>      _factors;
  };

  static_assert(FiniteMonoid<ZiminMonoid>);

  inline ZiminMonoid zimin_monoid(std::size_t n) {
    return ZiminMonoid(n);
  }

  // Distinct nonempty factors of z_n: (4^(n+1) - 1) / 3.
  inline std::size_t zimin_factor_count(std::size_t n) {
    return ((std::size_t(1) << (2 * (n + 1))) - 1) / 3;
  }

}  // namespace varlab
