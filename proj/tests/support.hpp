#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <varlab/hypergraph.hpp>
#include <varlab/random.hpp>

namespace support {

  struct Instance {
    std::string        name;
    varlab::Hypergraph graph;
  };

  inline std::string data(std::string const& file) {
    return std::string(VARLAB_DATA_DIR) + "/" + file;
  }

  // The girth >= 4 isomorphism classes with at most 3 edges and no isolated
  // vertex. A triangle of edges has girth 3 and is excluded.
  inline std::vector<Instance> small_girth4_classes() {
    using varlab::Hypergraph;
    return {
        {"edge", Hypergraph::with_vertices(3, {{0, 1, 2}})},
        {"two-disjoint", Hypergraph::with_vertices(6, {{0, 1, 2}, {3, 4, 5}})},
        {"two-sharing", Hypergraph::with_vertices(5, {{0, 1, 2}, {2, 3, 4}})},
        {"three-disjoint", Hypergraph::with_vertices(9, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}})},
        {"sharing-plus-one", Hypergraph::with_vertices(8, {{0, 1, 2}, {2, 3, 4}, {5, 6, 7}})},
        {"path", Hypergraph::with_vertices(7, {{0, 1, 2}, {2, 3, 4}, {4, 5, 6}})},
        {"star", Hypergraph::with_vertices(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}})},
    };
  }

  // Seeded relabellings of the classes: vertex names permuted, edges
  // listed in shuffled order.
  inline std::vector<Instance> relabelled_sample(std::size_t count, std::uint64_t seed) {
    auto          classes = small_girth4_classes();
    varlab::Rng   rng(seed);
    std::vector<Instance> out;
    for (std::size_t i = 0; i < count; ++i) {
      Instance const&          base = classes[i % classes.size()];
      std::size_t              n    = base.graph.vertex_count();
      std::vector<varlab::Vertex> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      rng.shuffle(perm);
      std::vector<varlab::Edge> edges;
      for (varlab::Edge e : base.graph.edges()) {
        edges.push_back({perm[e[0]], perm[e[1]], perm[e[2]]});
      }
      rng.shuffle(edges);
      out.push_back({base.name + "#" + std::to_string(i), varlab::Hypergraph::with_vertices(n, edges)});
    }
    return out;
  }

  inline std::vector<Instance> girth4_sweep(std::uint64_t seed = 20240607) {
    auto all    = small_girth4_classes();
    auto sample = relabelled_sample(21, seed);
    all.insert(all.end(), sample.begin(), sample.end());
    return all;
  }

  // Uniform random 3-uniform hypergraph for property sweeps.
  inline varlab::Hypergraph random_hypergraph(varlab::Rng& rng, std::size_t max_vertices,
                                              std::size_t max_edges) {
    std::size_t n = 3 + rng.below(max_vertices - 2);
    std::vector<varlab::Edge> triples;
    for (varlab::Vertex a = 0; a < n; ++a) {
      for (varlab::Vertex b = a + 1; b < n; ++b) {
        for (varlab::Vertex c = b + 1; c < n; ++c) {
          triples.push_back({a, b, c});
        }
      }
    }
    rng.shuffle(triples);
    std::size_t m = rng.below(std::min(max_edges, triples.size()) + 1);
    triples.resize(m);
    return varlab::Hypergraph::with_vertices(n, triples);
  }

}  // namespace support
