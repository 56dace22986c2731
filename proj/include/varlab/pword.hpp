#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "hypergraph.hpp"
#include "words.hpp"

namespace varlab {

  using Block = std::array<Vertex, 3>;

  struct PWordPlan {
    enum class Provenance { deterministic, seeded };
    std::vector<Block> triple_list;
    Provenance         provenance = Provenance::deterministic;
    std::uint64_t      seed       = 0;
    bool               pruned     = false;
  };

  struct PWordConditions {
    bool        alpha = false;
    bool        beta  = false;
    bool        gamma = false;
    std::string failure;  // first violated instance, empty when all hold

    [[nodiscard]] bool all() const {
      return alpha && beta && gamma;
    }
  };

  // Letter x_v for vertex v.
  inline Letter vertex_letter(Vertex v) {
    return letters::x(v);
  }

  inline PWordConditions check_pword_conditions(Hypergraph const& h,
                                                std::vector<Block> const& list) {
    PWordConditions c;
    std::size_t const n = h.vertex_count();
    auto              nm = [&](Vertex v) { return h.name(v); };

    c.alpha = true;
    std::set<Block> seen;
    for (Block const& b : list) {
      Edge e = b;
      std::sort(e.begin(), e.end());
      if (e[0] == e[1] || e[1] == e[2] || !h.has_edge(e[0], e[1], e[2])) {
        c.alpha   = false;
        c.failure = "(alpha) block " + nm(b[0]) + nm(b[1]) + nm(b[2]) + " is not an edge";
        break;
      }
      seen.insert(b);
    }
    if (c.alpha) {
      for (Edge const& e : h.edges()) {
        Block p = e;
        do {
          if (!seen.count(p)) {
            c.alpha   = false;
            c.failure = "(alpha) permutation " + nm(p[0]) + nm(p[1]) + nm(p[2]) + " missing";
            break;
          }
        } while (std::next_permutation(p.begin(), p.end()));
        if (!c.alpha) {
          break;
        }
      }
    }

    std::vector<std::uint8_t> junction(n * n, 0);
    for (std::size_t i = 0; i + 1 < list.size(); ++i) {
      junction[list[i][2] * n + list[i + 1][0]] = 1;
    }
    c.beta = true;
    for (Vertex u = 0; u < n && c.beta; ++u) {
      for (Vertex v = 0; v < n; ++v) {
        if (!junction[u * n + v]) {
          c.beta = false;
          if (c.failure.empty()) {
            c.failure = "(beta) no junction " + nm(u) + " -> " + nm(v);
          }
          break;
        }
      }
    }

    // sandwiched[(edge, u')] for blocks x_u x_v x_w between u' ... u'
    std::set<std::pair<Edge, Vertex>> sandwiched;
    for (std::size_t j = 1; j + 1 < list.size(); ++j) {
      if (list[j - 1][2] == list[j + 1][0]) {
        Edge e = list[j];
        std::sort(e.begin(), e.end());
        sandwiched.insert({e, list[j - 1][2]});
      }
    }
    c.gamma = true;
    for (Edge const& e : h.edges()) {
      for (Vertex u = 0; u < n && c.gamma; ++u) {
        if (u == e[0] || u == e[1] || u == e[2]) {
          continue;
        }
        if (!sandwiched.count({e, u})) {
          c.gamma = false;
          if (c.failure.empty()) {
            c.failure = "(gamma) edge " + nm(e[0]) + nm(e[1]) + nm(e[2]) + " never between "
                        + nm(u) + " and " + nm(u);
          }
        }
      }
    }
    return c;
  }

  struct PWordOptions {
    bool prune = false;
  };

  // Constructive list: every permutation of every edge, then for each
  // ordered pair (u, v) a block ending in u followed by one starting with
  // v, then for each edge and outside vertex u' a triple (.. u')(edge)(u' ..).
  inline PWordPlan plan_p_word(Hypergraph const& h, PWordOptions const& opt = {}) {
    if (h.has_isolated_vertices()) {
      throw PreconditionError("build_p_word: every vertex must lie in a hyperedge");
    }
    std::size_t const n = h.vertex_count();
    std::vector<Block> ending(n), starting(n);
    for (Vertex v = 0; v < n; ++v) {
      Edge const& e = h.edges()[h.incident(v).front()];
      Block       b = e;
      std::stable_partition(b.begin(), b.end(), [&](Vertex x) { return x != v; });
      ending[v] = b;
      std::stable_partition(b.begin(), b.end(), [&](Vertex x) { return x == v; });
      starting[v] = b;
    }
    PWordPlan plan;
    for (Edge const& e : h.edges()) {
      Block p = e;
      do {
        plan.triple_list.push_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
    }
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = 0; v < n; ++v) {
        plan.triple_list.push_back(ending[u]);
        plan.triple_list.push_back(starting[v]);
      }
    }
    for (Edge const& e : h.edges()) {
      for (Vertex u = 0; u < n; ++u) {
        if (u == e[0] || u == e[1] || u == e[2]) {
          continue;
        }
        plan.triple_list.push_back(ending[u]);
        plan.triple_list.push_back(e);
        plan.triple_list.push_back(starting[u]);
      }
    }
    if (opt.prune) {
      for (std::size_t i = plan.triple_list.size(); i-- > 0;) {
        std::vector<Block> trial = plan.triple_list;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        if (check_pword_conditions(h, trial).all()) {
          plan.triple_list = std::move(trial);
        }
      }
      plan.pruned = true;
    }
    PWordConditions c = check_pword_conditions(h, plan.triple_list);
    if (!c.all()) {
      throw Falsified("build_p_word: constructed list violates " + c.failure);
    }
    return plan;
  }

  // prod (y w_i)^2 y
  inline Word p_word(PWordPlan const& plan) {
    Word out;
    for (Block const& b : plan.triple_list) {
      for (int rep = 0; rep < 2; ++rep) {
        out.push_back(letters::y);
        for (Vertex v : b) {
          out.push_back(vertex_letter(v));
        }
      }
    }
    out.push_back(letters::y);
    return out;
  }

  inline Word build_p_word(Hypergraph const& h, PWordOptions const& opt = {}) {
    return p_word(plan_p_word(h, opt));
  }

}  // namespace varlab
