#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"

namespace varlab {

  struct Letter {
    std::uint32_t id = 0;

    constexpr auto operator<=>(Letter const&) const = default;
  };

  using Word = std::vector<Letter>;

  namespace letters {
    // ids below this bound print as x<id>; named letters live above it.
    inline constexpr std::uint32_t named_base = 1u << 24;

    constexpr Letter x(std::uint32_t i) noexcept {
      return Letter{i};
    }
    inline constexpr Letter y{named_base};
    inline constexpr Letter z{named_base + 1};
  }  // namespace letters

  // Name table. x<k> is always letter k; everything else is interned in
  // order of first use, after the pre-seeded y and z.
  class Alphabet {
   public:
    Alphabet() {
      intern("y");
      intern("z");
    }

    Letter intern(std::string_view name) {
      if (name.empty()) {
        throw InputError("empty letter name");
      }
      if (auto k = indexed(name)) {
        return Letter{*k};
      }
      auto it = _ids.find(std::string(name));
      if (it != _ids.end()) {
        return it->second;
      }
      Letter l{letters::named_base
               + static_cast<std::uint32_t>(_names.size())};
      _names.emplace_back(name);
      _ids.emplace(std::string(name), l);
      return l;
    }

    [[nodiscard]] std::string name(Letter l) const {
      if (l.id < letters::named_base) {
        return "x" + std::to_string(l.id);
      }
      std::size_t k = l.id - letters::named_base;
      if (k < _names.size()) {
        return _names[k];
      }
      return "#" + std::to_string(l.id);
    }

   private:
    static std::optional<std::uint32_t> indexed(std::string_view name) {
      if (name.size() < 2 || name[0] != 'x') {
        return std::nullopt;
      }
      std::uint32_t k = 0;
      auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), k);
      if (ec != std::errc() || ptr != name.data() + name.size()
          || k >= letters::named_base) {
        return std::nullopt;
      }
      return k;
    }

    std::vector<std::string>                _names;
    std::unordered_map<std::string, Letter> _ids;
  };

  inline std::set<Letter> content(Word const& w) {
    return {w.begin(), w.end()};
  }

  inline std::map<Letter, std::size_t> occurrences(Word const& w) {
    std::map<Letter, std::size_t> occ;
    for (Letter l : w) {
      ++occ[l];
    }
    return occ;
  }

  inline std::set<Letter> simple_letters(Word const& w) {
    std::set<Letter> out;
    for (auto [l, n] : occurrences(w)) {
      if (n == 1) {
        out.insert(l);
      }
    }
    return out;
  }

  inline std::set<Letter> non_simple_letters(Word const& w) {
    std::set<Letter> out;
    for (auto [l, n] : occurrences(w)) {
      if (n > 1) {
        out.insert(l);
      }
    }
    return out;
  }

  inline Letter head(Word const& w) {
    if (w.empty()) {
      throw PreconditionError("head: undefined on empty word");
    }
    return w.front();
  }

  inline Letter tail(Word const& w) {
    if (w.empty()) {
      throw PreconditionError("tail: undefined on empty word");
    }
    return w.back();
  }

  inline Word restrict(Word const& w, std::set<Letter> const& keep) {
    Word out;
    std::copy_if(w.begin(), w.end(), std::back_inserter(out), [&](Letter l) {
      return keep.count(l) != 0;
    });
    return out;
  }

  inline Word concat(Word u, Word const& v) {
    u.insert(u.end(), v.begin(), v.end());
    return u;
  }

  inline Word power(Word const& u, std::size_t k) {
    Word out;
    out.reserve(u.size() * k);
    for (std::size_t i = 0; i < k; ++i) {
      out.insert(out.end(), u.begin(), u.end());
    }
    return out;
  }

  // z_0 = x0, z_{n+1} = z_n x_{n+1} z_n
  inline Word zimin(std::size_t n) {
    if (n > 24) {
      throw PreconditionError("zimin: n too large");
    }
    Word w{letters::x(0)};
    for (std::uint32_t k = 1; k <= n; ++k) {
      Word next = w;
      next.push_back(letters::x(k));
      next.insert(next.end(), w.begin(), w.end());
      w = std::move(next);
    }
    return w;
  }

  namespace detail {
    inline Word alternating(std::size_t n, Letter first, Letter second) {
      if (n < 3 || n % 2 == 0) {
        throw PreconditionError("w_n: n must be odd and at least 3, got "
                                + std::to_string(n));
      }
      Word w;
      for (std::size_t i = 0; i < 2 * n; ++i) {
        if (i > 0) {
          w.push_back(i % 2 == 1 ? first : second);
        }
        w.push_back(letters::x(static_cast<std::uint32_t>(i % n + 1)));
      }
      return w;
    }
  }  // namespace detail

  // x1 y x2 z x3 y ... y x_n, length 4n - 1.
  inline Word w_n(std::size_t n) {
    return detail::alternating(n, letters::y, letters::z);
  }

  inline Word w_n_prime(std::size_t n) {
    return detail::alternating(n, letters::z, letters::y);
  }

  // Start positions of every occurrence of u in w.
  inline std::vector<std::size_t> factor_positions(Word const& u, Word const& w) {
    std::vector<std::size_t> out;
    if (u.size() > w.size()) {
      return out;
    }
    for (std::size_t i = 0; i + u.size() <= w.size(); ++i) {
      if (std::equal(u.begin(), u.end(), w.begin() + i)) {
        out.push_back(i);
      }
    }
    return out;
  }

  inline bool is_factor(Word const& u, Word const& w) {
    if (u.empty()) {
      return true;
    }
    if (u.size() > w.size()) {
      return false;
    }
    return std::search(w.begin(), w.end(), u.begin(), u.end()) != w.end();
  }

  class Substitution {
   public:
    Substitution() = default;
    Substitution(std::initializer_list<std::pair<const Letter, Word>> init)
        : _map(init) {}

    void set(Letter l, Word image) {
      _map[l] = std::move(image);
    }

    [[nodiscard]] bool defines(Letter l) const {
      return _map.count(l) != 0;
    }

    // Letters outside the domain map to themselves.
    [[nodiscard]] Word image(Letter l) const {
      auto it = _map.find(l);
      return it == _map.end() ? Word{l} : it->second;
    }

    [[nodiscard]] std::map<Letter, Word> const& map() const noexcept {
      return _map;
    }

    bool operator==(Substitution const&) const = default;

   private:
    std::map<Letter, Word> _map;
  };

  inline Word apply_substitution(Substitution const& theta, Word const& w) {
    Word out;
    for (Letter l : w) {
      auto it = theta.map().find(l);
      if (it == theta.map().end()) {
        out.push_back(l);
      } else {
        out.insert(out.end(), it->second.begin(), it->second.end());
      }
    }
    return out;
  }

  inline bool is_squarefree(Word const& w) {
    std::size_t n = w.size();
    for (std::size_t p = 1; 2 * p <= n; ++p) {
      for (std::size_t i = 0; i + 2 * p <= n; ++i) {
        if (std::equal(w.begin() + i, w.begin() + i + p, w.begin() + i + p)) {
          return false;
        }
      }
    }
    return true;
  }

  inline std::pair<Letter, std::size_t> max_letter_occurrences(Word const& u) {
    if (u.empty()) {
      throw PreconditionError("max_letter_occurrences: undefined on empty word");
    }
    Letter m = *std::max_element(u.begin(), u.end());
    return {m, static_cast<std::size_t>(std::count(u.begin(), u.end(), m))};
  }

  inline std::string to_string(Word const& w, Alphabet const& names = Alphabet()) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0) {
        out += ' ';
      }
      out += names.name(w[i]);
    }
    return out;
  }

  // Whitespace-separated letter names.
  inline Word parse_word(std::string_view text, Alphabet& names) {
    Word              w;
    std::istringstream in{std::string(text)};
    std::string       tok;
    while (in >> tok) {
      w.push_back(names.intern(tok));
    }
    return w;
  }

  inline std::vector<std::uint32_t> to_ids(Word const& w) {
    std::vector<std::uint32_t> out;
    out.reserve(w.size());
    for (Letter l : w) {
      out.push_back(l.id);
    }
    return out;
  }

}  // namespace varlab
