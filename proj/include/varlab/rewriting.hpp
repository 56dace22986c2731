#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "satisfaction.hpp"
#include "words.hpp"

namespace varlab {

  // Replace the occurrence of theta(lhs) at `position` by theta(rhs).
  // Letters outside the domain of theta stand for themselves.
  inline Word rewrite_step(Word const& w, Identity const& id, std::size_t position,
                           Substitution const& theta) {
    Word from = apply_substitution(theta, id.lhs);
    Word to   = apply_substitution(theta, id.rhs);
    if (position + from.size() > w.size()
        || !std::equal(from.begin(), from.end(), w.begin() + static_cast<std::ptrdiff_t>(position))) {
      throw PreconditionError("rewrite_step: theta(lhs) does not occur at position "
                              + std::to_string(position));
    }
    Word out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(position));
    out.insert(out.end(), to.begin(), to.end());
    out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(position + from.size()), w.end());
    return out;
  }

  struct RewriteApplication {
    std::size_t  position = 0;
    Substitution theta;
    bool         trivial = false;  // theta(lhs) = theta(rhs)
  };

  // Every (position, theta) with |theta(x)| <= max_image_len for the lhs
  // letters, at least one of them nonempty, and theta(lhs) occurring in w
  // at position. Ordered by position, then by image lengths.
  inline std::vector<RewriteApplication>
  find_rewrite_applications(Word const& w, Identity const& id, std::size_t max_image_len,
                            std::size_t budget = 1000000) {
    std::vector<Letter> vars;
    for (Letter l : id.lhs) {
      if (std::find(vars.begin(), vars.end(), l) == vars.end()) {
        vars.push_back(l);
      }
    }
    std::vector<RewriteApplication> out;
    std::map<Letter, std::pair<std::size_t, std::size_t>> bound;  // letter -> [begin, len)

    auto emit = [&](std::size_t position) {
      Substitution theta;
      bool         nonempty = false;
      for (Letter v : vars) {
        auto [b, len] = bound.at(v);
        theta.set(v, Word(w.begin() + static_cast<std::ptrdiff_t>(b),
                          w.begin() + static_cast<std::ptrdiff_t>(b + len)));
        nonempty = nonempty || len > 0;
      }
      if (!nonempty) {
        return;
      }
      if (out.size() >= budget) {
        throw BudgetExceeded("find_rewrite_applications: more than " + std::to_string(budget)
                             + " applications");
      }
      bool trivial = apply_substitution(theta, id.lhs) == apply_substitution(theta, id.rhs);
      out.push_back({position, std::move(theta), trivial});
    };

    auto match = [&](auto&& self, std::size_t i, std::size_t at, std::size_t position) -> void {
      if (i == id.lhs.size()) {
        emit(position);
        return;
      }
      Letter l  = id.lhs[i];
      auto   it = bound.find(l);
      if (it != bound.end()) {
        auto [b, len] = it->second;
        if (at + len <= w.size()
            && std::equal(w.begin() + static_cast<std::ptrdiff_t>(b),
                          w.begin() + static_cast<std::ptrdiff_t>(b + len),
                          w.begin() + static_cast<std::ptrdiff_t>(at))) {
          self(self, i + 1, at + len, position);
        }
        return;
      }
      for (std::size_t len = 0; len <= max_image_len && at + len <= w.size(); ++len) {
        bound[l] = {at, len};
        self(self, i + 1, at + len, position);
        bound.erase(l);
      }
    };
    for (std::size_t p = 0; p <= w.size(); ++p) {
      match(match, 0, p, p);
    }
    return out;
  }

  struct Realization {
    Substitution theta;
    Word         image;
    std::size_t  position = 0;  // of the image inside z_N
  };

  // Does theta(w) occur in z_N? Letters of w must all be in the domain.
  inline std::optional<Realization> verify_realization(Word const& w, Substitution const& theta,
                                                       std::size_t N) {
    for (Letter l : w) {
      if (!theta.defines(l) || theta.image(l).empty()) {
        return std::nullopt;
      }
    }
    Word img = apply_substitution(theta, w);
    auto pos = factor_positions(img, zimin(N));
    if (pos.empty()) {
      return std::nullopt;
    }
    return Realization{theta, img, pos.front()};
  }

  // Search for theta with nonempty images of length <= max_image_len and
  // theta(w) a factor of z_N. Start positions in z_N ascending, then image
  // lengths ascending in order of first occurrence in w.
  inline std::optional<Realization> zimin_realization(Word const& w, std::size_t N,
                                                      std::size_t max_image_len,
                                                      std::uint64_t node_budget = 50000000) {
    Word const                                            z = zimin(N);
    std::map<Letter, std::pair<std::size_t, std::size_t>> bound;
    std::uint64_t                                         nodes = 0;
    std::optional<Realization>                            found;

    auto search = [&](auto&& self, std::size_t i, std::size_t at, std::size_t start) -> bool {
      if (++nodes > node_budget) {
        throw BudgetExceeded("zimin_realization: node budget " + std::to_string(node_budget)
                             + " exhausted");
      }
      if (i == w.size()) {
        Substitution theta;
        for (auto [l, span] : bound) {
          theta.set(l, Word(z.begin() + static_cast<std::ptrdiff_t>(span.first),
                            z.begin() + static_cast<std::ptrdiff_t>(span.first + span.second)));
        }
        found = Realization{theta, Word(z.begin() + static_cast<std::ptrdiff_t>(start),
                                        z.begin() + static_cast<std::ptrdiff_t>(at)),
                            start};
        return true;
      }
      Letter l  = w[i];
      auto   it = bound.find(l);
      if (it != bound.end()) {
        auto [b, len] = it->second;
        return at + len <= z.size()
               && std::equal(z.begin() + static_cast<std::ptrdiff_t>(b),
                             z.begin() + static_cast<std::ptrdiff_t>(b + len),
                             z.begin() + static_cast<std::ptrdiff_t>(at))
               && self(self, i + 1, at + len, start);
      }
      for (std::size_t len = 1; len <= max_image_len && at + len <= z.size(); ++len) {
        bound[l] = {at, len};
        if (self(self, i + 1, at + len, start)) {
          return true;
        }
        bound.erase(l);
      }
      return false;
    };
    if (w.empty()) {
      return Realization{};
    }
    for (std::size_t s = 0; s < z.size(); ++s) {
      if (search(search, 0, s, s)) {
        return found;
      }
    }
    return std::nullopt;
  }

}  // namespace varlab
