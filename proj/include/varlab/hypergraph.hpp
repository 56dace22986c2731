#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"
#include "random.hpp"

namespace varlab {

  using Vertex = std::uint32_t;
  using Edge   = std::array<Vertex, 3>;  // sorted ascending

  // Finite 3-uniform hypergraph; vertices are 0..n-1 with display names.
  class Hypergraph {
   public:
    Hypergraph() = default;

    Hypergraph(std::vector<std::string> names, std::vector<Edge> edges)
        : _names(std::move(names)) {
      std::set<std::string> seen_names;
      for (auto const& n : _names) {
        if (!seen_names.insert(n).second) {
          throw InputError("duplicate vertex name '" + n + "'");
        }
      }
      _incident.resize(_names.size());
      std::set<Edge> seen;
      for (Edge e : edges) {
        std::sort(e.begin(), e.end());
        for (Vertex v : e) {
          if (v >= _names.size()) {
            throw InputError("edge uses vertex index " + std::to_string(v)
                             + " outside 0.." + std::to_string(_names.size()));
          }
        }
        if (e[0] == e[1] || e[1] == e[2]) {
          throw InputError("edge with repeated vertex: not 3-uniform");
        }
        if (!seen.insert(e).second) {
          throw InputError("duplicate edge {" + _names[e[0]] + "," + _names[e[1]]
                           + "," + _names[e[2]] + "}");
        }
        std::size_t idx = _edges.size();
        _edges.push_back(e);
        for (Vertex v : e) {
          _incident[v].push_back(idx);
        }
        for (auto [a, b, c] : {std::array{e[0], e[1], e[2]},
                               std::array{e[0], e[2], e[1]},
                               std::array{e[1], e[2], e[0]}}) {
          _completions[key(a, b)].push_back(c);
        }
      }
      _sorted = _edges;
      std::sort(_sorted.begin(), _sorted.end());
    }

    // Vertices named v0, v1, ...
    static Hypergraph with_vertices(std::size_t n, std::vector<Edge> edges) {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < n; ++i) {
        names.push_back("v" + std::to_string(i));
      }
      return Hypergraph(std::move(names), std::move(edges));
    }

    [[nodiscard]] std::size_t vertex_count() const noexcept {
      return _names.size();
    }

    [[nodiscard]] std::vector<Edge> const& edges() const noexcept {
      return _edges;
    }

    [[nodiscard]] std::string const& name(Vertex v) const {
      return _names.at(v);
    }

    [[nodiscard]] std::vector<std::string> const& names() const noexcept {
      return _names;
    }

    [[nodiscard]] std::vector<std::size_t> const& incident(Vertex v) const {
      return _incident.at(v);
    }

    [[nodiscard]] bool has_edge(Vertex a, Vertex b, Vertex c) const {
      Edge e{a, b, c};
      std::sort(e.begin(), e.end());
      return std::binary_search(_sorted.begin(), _sorted.end(), e);
    }

    // Third vertices w with {u,v,w} an edge.
    [[nodiscard]] std::vector<Vertex> const& completions(Vertex u, Vertex v) const {
      static std::vector<Vertex> const none;
      auto it = _completions.find(key(u, v));
      return it == _completions.end() ? none : it->second;
    }

    [[nodiscard]] bool extends(Vertex u, Vertex v) const {
      return u != v && !completions(u, v).empty();
    }

    [[nodiscard]] bool has_isolated_vertices() const {
      return std::any_of(_incident.begin(), _incident.end(),
                         [](auto const& inc) { return inc.empty(); });
    }

    [[nodiscard]] std::optional<Vertex> find_vertex(std::string const& n) const {
      auto it = std::find(_names.begin(), _names.end(), n);
      if (it == _names.end()) {
        return std::nullopt;
      }
      return static_cast<Vertex>(it - _names.begin());
    }

   private:
    static std::uint64_t key(Vertex u, Vertex v) noexcept {
      if (u > v) {
        std::swap(u, v);
      }
      return (std::uint64_t(u) << 32) | v;
    }

    std::vector<std::string>                               _names;
    std::vector<Edge>                                      _edges;
    std::vector<Edge>                                      _sorted;
    std::vector<std::vector<std::size_t>>                  _incident;
    std::unordered_map<std::uint64_t, std::vector<Vertex>> _completions;
  };

  class Girth {
   public:
    static constexpr Girth infinite() noexcept {
      return Girth();
    }
    static constexpr Girth finite(std::size_t n) noexcept {
      Girth g;
      g._length = n;
      return g;
    }

    [[nodiscard]] constexpr bool is_infinite() const noexcept {
      return _length == npos;
    }

    [[nodiscard]] std::size_t length() const {
      if (is_infinite()) {
        throw PreconditionError("girth is infinite");
      }
      return _length;
    }

    [[nodiscard]] constexpr bool at_least(std::size_t n) const noexcept {
      return _length >= n;
    }

    [[nodiscard]] constexpr bool greater_than(std::size_t n) const noexcept {
      return _length > n;
    }

    [[nodiscard]] std::string to_string() const {
      return is_infinite() ? "infinity" : std::to_string(_length);
    }

    constexpr bool operator==(Girth const&) const = default;

   private:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
    std::size_t                  _length = npos;
  };

  // Shortest cycle of the bipartite incidence graph, halved.
  inline Girth girth(Hypergraph const& h) {
    std::size_t const nv = h.vertex_count();
    std::size_t const n  = nv + h.edges().size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < h.edges().size(); ++i) {
      for (Vertex v : h.edges()[i]) {
        adj[v].push_back(nv + i);
        adj[nv + i].push_back(v);
      }
    }
    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(n), parent(n);
    constexpr std::size_t unseen = std::numeric_limits<std::size_t>::max();
    for (std::size_t s = 0; s < n; ++s) {
      std::fill(dist.begin(), dist.end(), unseen);
      dist[s]   = 0;
      parent[s] = unseen;
      std::queue<std::size_t> q;
      q.push(s);
      while (!q.empty()) {
        std::size_t x = q.front();
        q.pop();
        if (2 * dist[x] + 1 >= best) {
          break;
        }
        for (std::size_t y : adj[x]) {
          if (dist[y] == unseen) {
            dist[y]   = dist[x] + 1;
            parent[y] = x;
            q.push(y);
          } else if (y != parent[x]) {
            best = std::min(best, dist[x] + dist[y] + 1);
          }
        }
      }
    }
    if (best == std::numeric_limits<std::size_t>::max()) {
      return Girth::infinite();
    }
    return Girth::finite(best / 2);
  }

  inline bool is_hyperforest(Hypergraph const& h) {
    return girth(h).is_infinite();
  }

  struct ConditionFlags {
    bool I   = false;  // every pair lies in at most one edge
    bool II  = false;  // a triple whose three pairs all extend is an edge
    bool III = false;  // every 4-set contains a non-extending pair

    bool operator==(ConditionFlags const&) const = default;
  };

  inline ConditionFlags check_conditions(Hypergraph const& h) {
    ConditionFlags f{true, true, true};
    std::size_t const n = h.vertex_count();
    for (Vertex u = 0; u < n && f.I; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (h.completions(u, v).size() > 1) {
          f.I = false;
          break;
        }
      }
    }
    for (Vertex u = 0; u < n && f.II; ++u) {
      for (Vertex v = u + 1; v < n && f.II; ++v) {
        if (!h.extends(u, v)) {
          continue;
        }
        for (Vertex w = v + 1; w < n; ++w) {
          if (h.extends(u, w) && h.extends(v, w) && !h.has_edge(u, v, w)) {
            f.II = false;
            break;
          }
        }
      }
    }
    for (Vertex a = 0; a < n && f.III; ++a) {
      for (Vertex b = a + 1; b < n && f.III; ++b) {
        if (!h.extends(a, b)) {
          continue;
        }
        for (Vertex c = b + 1; c < n && f.III; ++c) {
          if (!h.extends(a, c) || !h.extends(b, c)) {
            continue;
          }
          for (Vertex d = c + 1; d < n; ++d) {
            if (h.extends(a, d) && h.extends(b, d) && h.extends(c, d)) {
              f.III = false;
              break;
            }
          }
        }
      }
    }
    return f;
  }

  // The relation {u,v} == {x,y} iff both complete through a common third
  // vertex, with all non-extending pairs in one extra class. Under (I) the
  // class of an extending pair is determined by its unique completion.
  class PairPartition {
   public:
    static constexpr std::size_t non_extending = std::numeric_limits<std::size_t>::max();

    explicit PairPartition(Hypergraph const& h) : _n(h.vertex_count()) {
      if (!check_conditions(h).I) {
        throw PreconditionError(
            "pair equivalence undefined: some pair lies in two edges (girth < 3)");
      }
      _opposite.assign(_n * _n, none);
      for (Edge const& e : h.edges()) {
        auto set = [&](Vertex a, Vertex b, Vertex c) {
          _opposite[a * _n + b] = c;
          _opposite[b * _n + a] = c;
        };
        set(e[0], e[1], e[2]);
        set(e[0], e[2], e[1]);
        set(e[1], e[2], e[0]);
      }
    }

    // The class of an extending pair is named by its completing vertex.
    [[nodiscard]] std::size_t class_of(Vertex u, Vertex v) const {
      if (u == v || u >= _n || v >= _n) {
        throw InputError("class_of: expects two distinct vertices");
      }
      Vertex w = _opposite[u * _n + v];
      return w == none ? non_extending : w;
    }

    [[nodiscard]] bool equivalent(Vertex u, Vertex v, Vertex x, Vertex y) const {
      return class_of(u, v) == class_of(x, y);
    }

    // Members of every class, keyed by class id, each list of sorted pairs.
    [[nodiscard]] std::map<std::size_t, std::vector<std::pair<Vertex, Vertex>>>
    classes() const {
      std::map<std::size_t, std::vector<std::pair<Vertex, Vertex>>> out;
      for (Vertex u = 0; u < _n; ++u) {
        for (Vertex v = u + 1; v < _n; ++v) {
          out[class_of(u, v)].emplace_back(u, v);
        }
      }
      return out;
    }

   private:
    static constexpr Vertex none = std::numeric_limits<Vertex>::max();
    std::size_t             _n;
    std::vector<Vertex>     _opposite;
  };

  inline PairPartition pair_equivalence(Hypergraph const& h) {
    return PairPartition(h);
  }

  using Colouring = std::vector<std::uint8_t>;

  inline bool is_proper_colouring(Hypergraph const& h, Colouring const& c) {
    return std::none_of(h.edges().begin(), h.edges().end(), [&](Edge const& e) {
      return c[e[0]] == c[e[1]] && c[e[1]] == c[e[2]];
    });
  }

  inline bool is_majority_colouring(Hypergraph const& h, Colouring const& c) {
    return std::all_of(h.edges().begin(), h.edges().end(), [&](Edge const& e) {
      return c[e[0]] + c[e[1]] + c[e[2]] == 2 && c[e[0]] <= 1 && c[e[1]] <= 1
             && c[e[2]] <= 1;
    });
  }

  namespace detail {
    class KColouring {
     public:
      KColouring(Hypergraph const& h, std::size_t k) : _h(h), _k(k) {
        _order.resize(h.vertex_count());
        for (Vertex v = 0; v < _order.size(); ++v) {
          _order[v] = v;
        }
        std::stable_sort(_order.begin(), _order.end(), [&](Vertex a, Vertex b) {
          return h.incident(a).size() > h.incident(b).size();
        });
        _colour.assign(h.vertex_count(), unset);
      }

      std::optional<Colouring> solve() {
        if (search(0, 0)) {
          return _colour;
        }
        return std::nullopt;
      }

     private:
      static constexpr std::uint8_t unset = 0xff;

      bool ok(Vertex v) const {
        for (std::size_t ei : _h.incident(v)) {
          Edge const& e = _h.edges()[ei];
          if (_colour[e[0]] != unset && _colour[e[0]] == _colour[e[1]]
              && _colour[e[1]] == _colour[e[2]]) {
            return false;
          }
        }
        return true;
      }

      bool search(std::size_t i, std::size_t used) {
        if (i == _order.size()) {
          return true;
        }
        Vertex      v     = _order[i];
        std::size_t limit = std::min(_k, used + 1);
        for (std::size_t c = 0; c < limit; ++c) {
          _colour[v] = static_cast<std::uint8_t>(c);
          if (ok(v) && search(i + 1, std::max(used, c + 1))) {
            return true;
          }
        }
        _colour[v] = unset;
        return false;
      }

      Hypergraph const&   _h;
      std::size_t         _k;
      std::vector<Vertex> _order;
      Colouring           _colour;
    };
  }  // namespace detail

  inline std::optional<Colouring> find_colouring(Hypergraph const& h, std::size_t k) {
    if (k == 0) {
      return h.vertex_count() == 0 ? std::optional<Colouring>(Colouring{})
                                   : std::nullopt;
    }
    return detail::KColouring(h, k).solve();
  }

  inline bool is_colourable(Hypergraph const& h, std::size_t k) {
    return find_colouring(h, k).has_value();
  }

  inline std::size_t chromatic_number(Hypergraph const& h) {
    std::size_t k = 1;
    while (!is_colourable(h, k)) {
      ++k;
    }
    return k;
  }

  namespace detail {
    // Vertices in index order, colour 0 tried before 1, so colourings come
    // out in lexicographic order.
    class MajorityEnumerator {
     public:
      MajorityEnumerator(Hypergraph const& h, std::size_t limit, bool first_only)
          : _h(h), _limit(limit), _first_only(first_only) {
        _colour.assign(h.vertex_count(), unset);
      }

      std::vector<Colouring> run() {
        search(0);
        return std::move(_found);
      }

     private:
      static constexpr std::uint8_t unset = 0xff;

      bool ok(Vertex v) const {
        for (std::size_t ei : _h.incident(v)) {
          std::size_t zeros = 0, assigned = 0;
          for (Vertex u : _h.edges()[ei]) {
            if (_colour[u] != unset) {
              ++assigned;
              zeros += _colour[u] == 0;
            }
          }
          if (zeros > 1 || (assigned == 3 && zeros != 1)) {
            return false;
          }
        }
        return true;
      }

      bool search(Vertex v) {
        if (v == _colour.size()) {
          if (_found.size() >= _limit) {
            throw BudgetExceeded("majority colouring enumeration exceeded "
                                 + std::to_string(_limit) + " colourings");
          }
          _found.push_back(_colour);
          return _first_only;
        }
        for (std::uint8_t c : {0, 1}) {
          _colour[v] = c;
          if (ok(v) && search(v + 1)) {
            return true;
          }
        }
        _colour[v] = unset;
        return false;
      }

      Hypergraph const&      _h;
      std::size_t            _limit;
      bool                   _first_only;
      Colouring              _colour;
      std::vector<Colouring> _found;
    };
  }  // namespace detail

  inline std::vector<Colouring> majority_colourings(Hypergraph const& h,
                                                    std::size_t limit = 1u << 20) {
    return detail::MajorityEnumerator(h, limit, false).run();
  }

  inline bool has_majority_colouring(Hypergraph const& h) {
    return !detail::MajorityEnumerator(h, 1, true).run().empty();
  }

  struct FlexReport {
    bool                                     holds = true;
    std::optional<std::pair<Vertex, Vertex>> failing_pair;
    std::string                              reason;
    std::size_t                              colourings = 0;
  };

  // Hypotheses of the flexible-colouring criterion: every pair u != v takes
  // the colour pairs (1,1), (0,1), (1,0) somewhere, and every non-extending
  // pair also takes (0,0).
  inline FlexReport flex_report(Hypergraph const& h,
                                std::vector<Colouring> const& colourings) {
    FlexReport r;
    r.colourings = colourings.size();
    std::size_t const n = h.vertex_count();
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        unsigned seen = 0;
        for (auto const& c : colourings) {
          seen |= 1u << (2 * c[u] + c[v]);
        }
        if ((seen & 0b1110u) != 0b1110u) {
          r.holds        = false;
          r.failing_pair = {u, v};
          r.reason       = "pair {" + h.name(u) + "," + h.name(v)
                     + "} misses one of (1,1),(0,1),(1,0)";
          return r;
        }
        if (!h.extends(u, v) && (seen & 1u) == 0) {
          r.holds        = false;
          r.failing_pair = {u, v};
          r.reason       = "non-extending pair {" + h.name(u) + "," + h.name(v)
                     + "} never coloured (0,0)";
          return r;
        }
      }
    }
    return r;
  }

  inline FlexReport flex_report(Hypergraph const& h) {
    return flex_report(h, majority_colourings(h));
  }

  inline bool flex_conditions(Hypergraph const& h) {
    return flex_report(h).holds;
  }

  // 1 + n + C(n,2) + C(n,3)
  inline std::size_t small_subsets_count(std::size_t n) {
    if (n < 2) {
      return 1 + n;
    }
    return 1 + n + n * (n - 1) / 2 + n * (n - 1) * (n - 2) / 6;
  }

  inline bool wildly_incomparable(Hypergraph const& g, Hypergraph const& h) {
    Girth gg = girth(g), gh = girth(h);
    if (!gg.at_least(4) || !gh.at_least(4)) {
      return false;
    }
    if (is_colourable(g, 5) || is_colourable(h, 5)) {
      return false;
    }
    auto dominates = [](Girth ga, Hypergraph const& a, Hypergraph const& b) {
      std::size_t nb = b.vertex_count();
      return ga.greater_than(3 * nb + 1)
             && !is_colourable(a, small_subsets_count(nb) + 1);
    };
    return dominates(gg, g, h) || dominates(gh, h, g);
  }

  struct GeneratedHypergraph {
    Hypergraph    graph;
    std::uint64_t seed        = 0;
    std::size_t   min_girth   = 0;
    std::size_t   candidates  = 0;  // 3-sets examined
    bool          best_effort = false;
    std::size_t   chromatic   = 0;
  };

  struct GeneratorOptions {
    std::size_t target_edges = 0;        // 0: as many as the rule allows
    std::size_t budget       = 2000000;  // 3-sets examined
  };

  // Seeded greedy construction. 3-sets are visited in a seeded random order
  // and an edge is kept unless it would close a cycle shorter than
  // min_girth: adding e creates exactly the cycles e + (path between two of
  // its vertices), so the check is a BFS distance per vertex pair of e.
  inline GeneratedHypergraph generate_high_girth(std::size_t v, std::size_t min_girth,
                                                 std::uint64_t          seed,
                                                 GeneratorOptions const& opt = {}) {
    if (v < 3) {
      throw PreconditionError("generate_high_girth: need at least 3 vertices");
    }
    std::vector<Edge> triples;
    for (Vertex a = 0; a < v; ++a) {
      for (Vertex b = a + 1; b < v; ++b) {
        for (Vertex c = b + 1; c < v; ++c) {
          triples.push_back({a, b, c});
        }
      }
    }
    Rng rng(seed);
    rng.shuffle(triples);

    std::vector<Edge>                     kept;
    std::vector<std::vector<std::size_t>> incident(v);
    // Edge-steps between two vertices, stopping once `cap` is reached.
    auto distance = [&](Vertex from, Vertex to, std::size_t cap) {
      std::vector<std::size_t> dist(v, cap);
      std::vector<bool>        used(kept.size(), false);
      std::queue<Vertex>       q;
      dist[from] = 0;
      q.push(from);
      while (!q.empty()) {
        Vertex x = q.front();
        q.pop();
        if (x == to) {
          return dist[x];
        }
        if (dist[x] + 1 >= cap) {
          continue;
        }
        for (std::size_t ei : incident[x]) {
          if (used[ei]) {
            continue;
          }
          used[ei] = true;
          for (Vertex y : kept[ei]) {
            if (dist[y] > dist[x] + 1) {
              dist[y] = dist[x] + 1;
              q.push(y);
            }
          }
        }
      }
      return dist[to];
    };

    GeneratedHypergraph out;
    out.seed      = seed;
    out.min_girth = min_girth;
    for (Edge const& e : triples) {
      if (opt.target_edges != 0 && kept.size() >= opt.target_edges) {
        break;
      }
      if (out.candidates >= opt.budget) {
        break;
      }
      ++out.candidates;
      bool accept = true;
      for (auto [a, b] : {std::pair{e[0], e[1]}, std::pair{e[0], e[2]},
                          std::pair{e[1], e[2]}}) {
        // new cycle length = 1 + distance(a, b)
        if (1 + distance(a, b, min_girth) < min_girth) {
          accept = false;
          break;
        }
      }
      if (accept) {
        for (Vertex x : e) {
          incident[x].push_back(kept.size());
        }
        kept.push_back(e);
      }
    }
    std::sort(kept.begin(), kept.end());
    out.graph       = Hypergraph::with_vertices(v, kept);
    out.best_effort = opt.target_edges != 0 && kept.size() < opt.target_edges;
    out.chromatic   = chromatic_number(out.graph);
    return out;
  }

}  // namespace varlab
