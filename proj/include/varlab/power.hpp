#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "monoid.hpp"

namespace varlab {

  struct PowerOptions {
    std::size_t element_cap = 1000000;
    // Identify every tuple with a zero coordinate with one absorbing
    // element. The result is then the Rees quotient by that ideal directly.
    bool collapse_zero_coordinates = false;
  };

  // Submonoid of base^coords generated by the given tuples. Tuples are
  // interned by their byte string (base must have at most 256 elements).
  class PowerSubmonoid {
   public:
    using Tuple = std::vector<Element>;

    PowerSubmonoid(FinMonoid base, std::size_t coords, std::vector<Tuple> const& gens,
                   PowerOptions const& opt = {})
        : _base(std::move(base)), _coords(coords), _opt(opt) {
      if (_base.size() > 256) {
        throw PreconditionError("direct_power: base monoid larger than 256 elements");
      }
      if (_opt.collapse_zero_coordinates && !_base.zero()) {
        throw PreconditionError("direct_power: collapsing needs a base with zero");
      }
      std::string one(_coords, char(_base.identity()));
      _identity = intern(one);
      for (Tuple const& t : gens) {
        if (t.size() != _coords) {
          throw InputError("direct_power: generator tuple has wrong length");
        }
        std::string key(_coords, '\0');
        for (std::size_t i = 0; i < _coords; ++i) {
          if (t[i] >= _base.size()) {
            throw InputError("direct_power: generator entry out of range");
          }
          key[i] = char(t[i]);
        }
        _gens.push_back(intern(key));
      }
      // Right-multiplication closure from the identity.
      for (std::size_t i = 0; i < _elements.size(); ++i) {
        for (Element g : _gens) {
          intern(multiply(_elements[i], _elements[g]));
        }
      }
      if (_base.zero()) {
        auto it = _index.find(std::string(_coords, char(*_base.zero())));
        if (it != _index.end()) {
          _zero = it->second;
        }
      }
      std::size_t const n = _elements.size();
      if (n <= table_limit) {
        _table.resize(n * n);
        for (Element a = 0; a < n; ++a) {
          for (Element b = 0; b < n; ++b) {
            _table[a * n + b] = lookup(multiply(_elements[a], _elements[b]));
          }
        }
      }
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return _elements.size();
    }

    [[nodiscard]] std::size_t coords() const noexcept {
      return _coords;
    }

    [[nodiscard]] Element identity() const noexcept {
      return _identity;
    }

    [[nodiscard]] std::optional<Element> zero() const noexcept {
      return _zero;
    }

    [[nodiscard]] std::vector<Element> const& generators() const noexcept {
      return _gens;
    }

    [[nodiscard]] FinMonoid const& base() const noexcept {
      return _base;
    }

    [[nodiscard]] Tuple tuple(Element x) const {
      std::string const& k = _elements.at(x);
      Tuple              t(k.size());
      for (std::size_t i = 0; i < k.size(); ++i) {
        t[i] = static_cast<unsigned char>(k[i]);
      }
      return t;
    }

    [[nodiscard]] bool has_zero_coordinate(Element x) const {
      auto z = _base.zero();
      if (!z) {
        return false;
      }
      for (char c : _elements.at(x)) {
        if (static_cast<unsigned char>(c) == *z) {
          return true;
        }
      }
      return false;
    }

    [[nodiscard]] std::optional<Element> find(Tuple const& t) const {
      std::string k(t.size(), '\0');
      for (std::size_t i = 0; i < t.size(); ++i) {
        k[i] = char(t[i]);
      }
      auto it = _index.find(canonical(k));
      if (it == _index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    [[nodiscard]] std::string label(Element x) const {
      if (_opt.collapse_zero_coordinates && _zero && x == *_zero) {
        return "0";
      }
      std::string out = "(";
      std::string const& k = _elements.at(x);
      for (std::size_t i = 0; i < k.size(); ++i) {
        if (i > 0) {
          out += ',';
        }
        out += _base.label(static_cast<unsigned char>(k[i]));
      }
      return out + ")";
    }

    // Tabulated up to table_limit elements, computed coordinatewise beyond.
    [[nodiscard]] Element product(Element a, Element b) const {
      if (!_table.empty()) {
        return _table[std::size_t(a) * _elements.size() + b];
      }
      return lookup(multiply(_elements[a], _elements[b]));
    }

    static constexpr std::size_t table_limit = 4096;

   private:
    std::string multiply(std::string const& x, std::string const& y) const {
      std::string r(_coords, '\0');
      for (std::size_t i = 0; i < _coords; ++i) {
        r[i] = char(_base.product(static_cast<unsigned char>(x[i]),
                                  static_cast<unsigned char>(y[i])));
      }
      return r;
    }

    std::string canonical(std::string const& k) const {
      if (_opt.collapse_zero_coordinates
          && k.find(char(*_base.zero())) != std::string::npos) {
        return std::string(_coords, char(*_base.zero()));
      }
      return k;
    }

    Element intern(std::string const& raw) {
      std::string k  = canonical(raw);
      auto        it = _index.find(k);
      if (it != _index.end()) {
        return it->second;
      }
      if (_elements.size() >= _opt.element_cap) {
        throw BudgetExceeded("direct_power: closure exceeds element cap "
                             + std::to_string(_opt.element_cap) + " (coords "
                             + std::to_string(_coords) + ")");
      }
      Element id = static_cast<Element>(_elements.size());
      _elements.push_back(k);
      _index.emplace(std::move(k), id);
      return id;
    }

    Element lookup(std::string const& raw) const {
      auto it = _index.find(canonical(raw));
      if (it == _index.end()) {
        throw Falsified("direct_power: product escaped the closure");
      }
      return it->second;
    }

    FinMonoid                                _base;
    std::size_t                              _coords;
    PowerOptions                             _opt;
    std::vector<std::string>                 _elements;
    std::unordered_map<std::string, Element> _index;
    std::vector<Element>                     _gens;
    Element                                  _identity = 0;
    std::optional<Element>                   _zero;
    std::vector<Element>                     _table;
  };

  static_assert(FiniteMonoid<PowerSubmonoid>);

  inline PowerSubmonoid direct_power(FinMonoid const& base, std::size_t coords,
                                     std::vector<PowerSubmonoid::Tuple> const& gens,
                                     PowerOptions const& opt = {}) {
    return PowerSubmonoid(base, coords, gens, opt);
  }

}  // namespace varlab
