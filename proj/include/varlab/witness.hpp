#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "constructions.hpp"
#include "error.hpp"
#include "hypergraph.hpp"
#include "hypermon.hpp"
#include "monoid.hpp"
#include "morphism.hpp"
#include "power.hpp"

namespace varlab {

  struct LawCheck {
    std::string law;
    bool        holds = true;
    std::string detail;  // first failing instance
  };

  struct WitnessOptions {
    std::size_t max_coords  = 64;
    std::size_t element_cap = 100000;
    // Close modulo the zero-coordinate ideal instead of closing fully and
    // taking the Rees quotient afterwards. Same quotient, smaller closure.
    bool collapse = true;
  };

  struct A21WitnessReport {
    std::size_t coords        = 0;
    std::size_t pair_coords   = 0;
    std::size_t p_coords      = 0;  // non-extending pairs
    std::size_t vertex_coords = 0;
    std::size_t closure_size  = 0;
    std::size_t quotient_size = 0;
    std::size_t natural_size  = 0;
    std::size_t full_size     = 0;

    std::vector<LawCheck> hat_laws;

    // T/I against the natural monoid, generators pinned t^ -> t, u^ -> u.
    bool                                  natural_isomorphic = false;
    std::optional<std::vector<Element>>   natural_iso;  // T/I index -> natural index
    // Pairs of natural-monoid elements that T/I identifies, when the map
    // natural -> T/I exists but is not injective.
    bool                                             natural_maps_onto = false;
    std::vector<std::pair<std::string, std::string>> identified;
    // M_H is a homomorphic image of T/I: the membership conclusion.
    bool full_is_quotient = false;

    std::vector<PowerSubmonoid::Tuple> generator_tuples;  // t^ first, then u^
    std::vector<std::string>           coordinate_names;
  };

  // Generators t^, u^ in A21^N with N = C(V,2) + P + V, P the non-extending
  // pairs, following the six-case definition (with a = c, b = d).
  inline A21WitnessReport a21_witness(Hypergraph const& h, WitnessOptions const& opt = {}) {
    if (!girth(h).at_least(4)) {
      throw PreconditionError("a21_witness: girth " + girth(h).to_string() + " < 4");
    }
    std::size_t const                      nv = h.vertex_count();
    std::vector<std::pair<Vertex, Vertex>> pairs, nonext;
    for (Vertex u = 0; u < nv; ++u) {
      for (Vertex v = u + 1; v < nv; ++v) {
        pairs.push_back({u, v});
        if (!h.extends(u, v)) {
          nonext.push_back({u, v});
        }
      }
    }
    A21WitnessReport r;
    r.pair_coords   = pairs.size();
    r.p_coords      = nonext.size();
    r.vertex_coords = nv;
    r.coords        = pairs.size() + nonext.size() + nv;
    if (r.coords > opt.max_coords) {
      throw BudgetExceeded("a21_witness: " + std::to_string(r.coords)
                           + " coordinates exceed the budget "
                           + std::to_string(opt.max_coords));
    }
    for (auto [u, v] : pairs) {
      r.coordinate_names.push_back("{" + h.name(u) + "," + h.name(v) + "}");
    }
    for (auto [u, v] : nonext) {
      r.coordinate_names.push_back("{" + h.name(u) + "," + h.name(v) + "}'");
    }
    for (Vertex v = 0; v < nv; ++v) {
      r.coordinate_names.push_back(h.name(v));
    }

    using namespace a21;
    PowerSubmonoid::Tuple that;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      that.push_back(c);
    }
    for (std::size_t i = 0; i < nonext.size() + nv; ++i) {
      that.push_back(d);
    }
    r.generator_tuples.push_back(that);
    for (Vertex v = 0; v < nv; ++v) {
      PowerSubmonoid::Tuple vh;
      for (auto [p, q] : pairs) {
        vh.push_back(v == p || v == q ? one : d);
      }
      for (auto [p, q] : nonext) {
        vh.push_back(v == p || v == q ? c : one);
      }
      for (Vertex p = 0; p < nv; ++p) {
        vh.push_back(p == v ? c : one);
      }
      r.generator_tuples.push_back(vh);
    }

    PowerSubmonoid T(brandt_a21(), r.coords, r.generator_tuples,
                     PowerOptions{opt.element_cap, opt.collapse});
    r.closure_size = T.size();
    Element const               th = T.generators()[0];
    std::vector<Element> const  vh(T.generators().begin() + 1, T.generators().end());

    auto mul = [&](std::initializer_list<Element> xs) { return multiply(T, xs); };
    auto in_I = [&](Element x) { return T.has_zero_coordinate(x); };
    LawCheck l1{"(1) tt, tut, tuvt in I", true, {}}, l2{"(2) uv = vu", true, {}},
        l3{"(3) uu in I", true, {}}, l4{"(4) uv in I for non-extending pairs", true, {}},
        l5{"(5) tuvwt = t on edges", true, {}};
    auto fail = [](LawCheck& l, std::string d) {
      if (l.holds) {
        l.holds  = false;
        l.detail = std::move(d);
      }
    };
    if (!in_I(mul({th, th}))) {
      fail(l1, "tt");
    }
    for (Vertex u = 0; u < nv; ++u) {
      if (!in_I(mul({th, vh[u], th}))) {
        fail(l1, "t" + h.name(u) + "t");
      }
      if (!in_I(mul({vh[u], vh[u]}))) {
        fail(l3, h.name(u) + h.name(u));
      }
      for (Vertex v = 0; v < nv; ++v) {
        if (!in_I(mul({th, vh[u], vh[v], th}))) {
          fail(l1, "t" + h.name(u) + h.name(v) + "t");
        }
        if (mul({vh[u], vh[v]}) != mul({vh[v], vh[u]})) {
          fail(l2, h.name(u) + h.name(v));
        }
        if (u != v && !h.extends(u, v) && !in_I(mul({vh[u], vh[v]}))) {
          fail(l4, h.name(u) + h.name(v));
        }
      }
    }
    for (Edge const& e : h.edges()) {
      if (mul({th, vh[e[0]], vh[e[1]], vh[e[2]], th}) != th) {
        fail(l5, "t" + h.name(e[0]) + h.name(e[1]) + h.name(e[2]) + "t");
      }
    }
    r.hat_laws = {l1, l2, l3, l4, l5};

    std::vector<bool> mask(T.size());
    for (Element x = 0; x < T.size(); ++x) {
      mask[x] = in_I(x);
    }
    Quotient q      = rees_quotient(T, mask, T.generators());
    r.quotient_size = q.monoid.size();

    HGMonoidBundle nat  = build(h, Variant::natural);
    HGMonoidBundle full = build(h, Variant::full);
    r.natural_size      = nat.monoid.size();
    r.full_size         = full.monoid.size();

    std::map<Element, Element> to_nat{{q.projection[th], nat.t}};
    std::map<Element, Element> to_full{{q.projection[th], full.t}};
    std::map<Element, Element> from_nat{{nat.t, q.projection[th]}};
    for (Vertex v = 0; v < nv; ++v) {
      to_nat[q.projection[vh[v]]]  = nat.vertex[v];
      to_full[q.projection[vh[v]]] = full.vertex[v];
      from_nat[nat.vertex[v]]      = q.projection[vh[v]];
    }
    r.natural_iso        = find_isomorphism(q.monoid, nat.monoid, to_nat);
    r.natural_isomorphic = r.natural_iso.has_value();
    if (!r.natural_isomorphic) {
      auto phi = find_homomorphism(nat.monoid, q.monoid, from_nat,
                                   MorphismOptions{false, true, 5000000});
      r.natural_maps_onto = phi.has_value();
      if (phi) {
        std::map<Element, Element> first;
        for (Element x = 0; x < nat.monoid.size(); ++x) {
          auto [it, fresh] = first.emplace((*phi)[x], x);
          if (!fresh) {
            r.identified.emplace_back(nat.label(it->second), nat.label(x));
          }
        }
      }
    }
    r.full_is_quotient = find_homomorphism(q.monoid, full.monoid, to_full,
                                           MorphismOptions{false, true, 5000000})
                             .has_value();
    if (!r.full_is_quotient) {
      throw Falsified("a21_witness: M_H is not a homomorphic image of T_H/I");
    }
    return r;
  }

  struct B21WitnessReport {
    bool                   refused = false;
    std::string            refusal;
    std::vector<Colouring> colourings;
    std::size_t            closure_size  = 0;
    std::size_t            quotient_size = 0;
    std::size_t            full_size     = 0;
    std::vector<Element>   iso;  // T/I index -> M_H index
    std::vector<PowerSubmonoid::Tuple> generator_tuples;
  };

  // Coordinates are the majority 2-colourings; t^ = b everywhere and
  // u^(g) = 1 if g(u) = 1, a if g(u) = 0.
  inline B21WitnessReport b21_witness(Hypergraph const& h, WitnessOptions opt = {}) {
    B21WitnessReport r;
    r.colourings = majority_colourings(h, 4096);
    FlexReport flex = flex_report(h, r.colourings);
    if (!flex.holds) {
      r.refused = true;
      r.refusal = r.colourings.empty()
                      ? "no majority 2-colouring exists"
                      : "flexible-colouring hypotheses fail: " + flex.reason;
      return r;
    }
    if (!girth(h).at_least(4) || h.has_isolated_vertices()) {
      throw PreconditionError("b21_witness: needs girth >= 4 and no isolated vertices");
    }
    using namespace b21;
    std::size_t const     nc = r.colourings.size();
    PowerSubmonoid::Tuple that(nc, b);
    r.generator_tuples.push_back(that);
    for (Vertex u = 0; u < h.vertex_count(); ++u) {
      PowerSubmonoid::Tuple uh;
      for (auto const& g : r.colourings) {
        uh.push_back(g[u] == 1 ? one : a);
      }
      r.generator_tuples.push_back(uh);
    }
    PowerSubmonoid T(brandt_b21(), nc, r.generator_tuples,
                     PowerOptions{opt.element_cap, opt.collapse});
    r.closure_size = T.size();
    std::vector<bool> mask(T.size());
    for (Element x = 0; x < T.size(); ++x) {
      mask[x] = T.has_zero_coordinate(x);
    }
    Quotient       q    = rees_quotient(T, mask, T.generators());
    HGMonoidBundle full = build(h, Variant::full);
    r.quotient_size     = q.monoid.size();
    r.full_size         = full.monoid.size();
    std::map<Element, Element> fix{{q.projection[T.generators()[0]], full.t}};
    for (Vertex u = 0; u < h.vertex_count(); ++u) {
      Element gen = q.projection[T.generators()[u + 1]];
      auto [it, fresh] = fix.emplace(gen, full.vertex[u]);
      if (!fresh && it->second != full.vertex[u]) {
        throw Falsified("b21_witness: two generators coincide in T/I");
      }
    }
    auto iso = find_isomorphism(q.monoid, full.monoid, fix);
    if (!iso) {
      throw Falsified("b21_witness: T/I (" + std::to_string(r.quotient_size)
                      + " elements) is not isomorphic to M_H ("
                      + std::to_string(r.full_size) + " elements)");
    }
    r.iso = *iso;
    return r;
  }

}  // namespace varlab
