#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "error.hpp"
#include "io.hpp"
#include "pword.hpp"
#include "satisfaction.hpp"
#include "words.hpp"

namespace varlab {

  namespace detail {
    inline std::string trim(std::string_view s) {
      std::size_t b = 0, e = s.size();
      while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
      }
      while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
      }
      return std::string(s.substr(b, e - b));
    }

    inline std::optional<std::size_t> number_after(std::string const& s, std::string const& prefix,
                                                   std::string const& suffix = "") {
      if (s.size() <= prefix.size() + suffix.size() || s.compare(0, prefix.size(), prefix) != 0
          || s.compare(s.size() - suffix.size(), suffix.size(), suffix) != 0) {
        return std::nullopt;
      }
      std::string digits = s.substr(prefix.size(), s.size() - prefix.size() - suffix.size());
      if (digits.empty() || digits.size() > 6
          || !std::all_of(digits.begin(), digits.end(),
                          [](unsigned char c) { return std::isdigit(c) != 0; })) {
        return std::nullopt;
      }
      return std::stoul(digits);
    }

    class CompactParser {
     public:
      CompactParser(std::string_view text, Alphabet& names) : _s(text), _names(names) {}

      Word parse() {
        Word w = sequence();
        if (_i != _s.size()) {
          fail("unexpected '" + std::string(1, _s[_i]) + "'");
        }
        return w;
      }

     private:
      [[noreturn]] void fail(std::string const& what) const {
        throw InputError("identity syntax: " + what + " at column " + std::to_string(_i + 1)
                         + " of '" + std::string(_s) + "'");
      }

      Word sequence() {
        Word w;
        while (_i < _s.size() && _s[_i] != ')') {
          Word atom;
          if (_s[_i] == '(') {
            ++_i;
            atom = sequence();
            if (_i == _s.size() || _s[_i] != ')') {
              fail("missing ')'");
            }
            ++_i;
          } else if (std::isalpha(static_cast<unsigned char>(_s[_i]))) {
            atom.push_back(_names.intern(std::string(1, _s[_i])));
            ++_i;
          } else {
            fail("expected a letter or '('");
          }
          std::size_t k = exponent();
          for (std::size_t r = 0; r < k; ++r) {
            w.insert(w.end(), atom.begin(), atom.end());
          }
        }
        return w;
      }

      std::size_t exponent() {
        bool caret = _i < _s.size() && _s[_i] == '^';
        if (caret) {
          ++_i;
        }
        std::size_t start = _i;
        while (_i < _s.size() && std::isdigit(static_cast<unsigned char>(_s[_i]))) {
          ++_i;
        }
        if (start == _i) {
          if (caret) {
            fail("expected digits after '^'");
          }
          return 1;
        }
        if (_i - start > 4) {
          fail("exponent too large");
        }
        return std::stoul(std::string(_s.substr(start, _i - start)));
      }

      std::string_view _s;
      Alphabet&        _names;
      std::size_t      _i = 0;
    };
  }  // namespace detail

  // One side of an identity.
  //   fixtures: w<n>, w<n>p (w'_n), zimin<n>, pH:<hypergraph.json>
  //   "1" or empty: the empty word
  //   with whitespace: letter names separated by spaces, each optionally ^k
  //   otherwise compact: single-character letters, groups (..), exponents
  //   written as a digit suffix or ^k, so x2y2 is x x y y.
  inline Word parse_side(std::string_view text, Alphabet& names) {
    std::string s = detail::trim(text);
    if (s.empty() || s == "1") {
      return {};
    }
    if (s.rfind("pH:", 0) == 0) {
      return build_p_word(load_hypergraph(s.substr(3)).graph);
    }
    if (auto n = detail::number_after(s, "w", "p")) {
      return w_n_prime(*n);
    }
    if (auto n = detail::number_after(s, "w")) {
      return w_n(*n);
    }
    if (auto n = detail::number_after(s, "zimin")) {
      return zimin(*n);
    }
    if (s.find_first_of(" \t") != std::string::npos) {
      Word               w;
      std::istringstream in(s);
      std::string        tok;
      while (in >> tok) {
        std::size_t caret = tok.find('^');
        std::size_t k     = 1;
        if (caret != std::string::npos) {
          auto e = detail::number_after(tok.substr(caret), "^");
          if (!e || caret == 0) {
            throw InputError("identity syntax: bad token '" + tok + "'");
          }
          k   = *e;
          tok = tok.substr(0, caret);
        }
        Letter l = names.intern(tok);
        w.insert(w.end(), k, l);
      }
      return w;
    }
    return detail::CompactParser(s, names).parse();
  }

  inline Identity parse_identity(std::string_view text, Alphabet& names) {
    std::size_t eq = text.find('=');
    if (eq == std::string_view::npos || text.find('=', eq + 1) != std::string_view::npos) {
      throw InputError("identity syntax: expected exactly one '=' in '" + std::string(text) + "'");
    }
    return Identity{parse_side(text.substr(0, eq), names), parse_side(text.substr(eq + 1), names)};
  }

}  // namespace varlab
