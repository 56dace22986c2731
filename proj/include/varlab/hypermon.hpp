#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "constructions.hpp"
#include "error.hpp"
#include "hypergraph.hpp"
#include "monoid.hpp"
#include "morphism.hpp"

namespace varlab {

  // natural: rules (1)-(5); sharp: adds (6), (7); full: adds (8).
  enum class Variant { natural, sharp, full };

  inline std::string to_string(Variant v) {
    switch (v) {
      case Variant::natural:
        return "natural";
      case Variant::sharp:
        return "sharp";
      default:
        return "full";
    }
  }

  inline Variant parse_variant(std::string const& s) {
    if (s == "natural") {
      return Variant::natural;
    }
    if (s == "sharp") {
      return Variant::sharp;
    }
    if (s == "full") {
      return Variant::full;
    }
    throw InputError("unknown variant '" + s + "' (natural|sharp|full)");
  }

  // A product of 0..3 vertices inside one edge. The key depends on size:
  // 1 -> vertex; 2 -> pair index (natural, sharp) or completing vertex, i.e.
  // the pair-equivalence class (full); 3 -> edge index (natural) or 0 for
  // the collapsed element e (sharp, full).
  struct Payload {
    std::uint8_t  size = 0;
    std::uint32_t key  = 0;

    auto operator<=>(Payload const&) const = default;
  };

  struct HGElement {
    enum class Kind : std::uint8_t { zero, one, vprod, tform };
    Kind    kind = Kind::zero;
    Payload left;   // the payload of a vprod, or the left side of s t s'
    Payload right;  // right side of a tform

    auto operator<=>(HGElement const&) const = default;

    static HGElement zero() {
      return {};
    }
    static HGElement one() {
      return {Kind::one, {}, {}};
    }
    static HGElement vprod(Payload p) {
      return {Kind::vprod, p, {}};
    }
    static HGElement tform(Payload l, Payload r) {
      return {Kind::tform, l, r};
    }
  };

  namespace detail {
    // The multiplication of vertex products, per variant.
    class PayloadAlgebra {
     public:
      PayloadAlgebra(Hypergraph const& h, Variant v) : _h(h), _v(v) {
        std::size_t n = h.vertex_count();
        _pair_index.assign(n * n, none);
        for (Vertex a = 0; a < n; ++a) {
          for (Vertex b = a + 1; b < n; ++b) {
            if (h.extends(a, b)) {
              _pair_index[a * n + b] = _pair_index[b * n + a]
                  = static_cast<std::uint32_t>(_pairs.size());
              _pairs.push_back({a, b});
            }
          }
        }
        _edge_index.clear();
        for (std::size_t i = 0; i < h.edges().size(); ++i) {
          _edge_index[h.edges()[i]] = static_cast<std::uint32_t>(i);
        }
      }

      std::vector<Payload> payloads() const {
        std::vector<Payload> out{Payload{}};
        for (Vertex v = 0; v < _h.vertex_count(); ++v) {
          out.push_back({1, v});
        }
        if (_v == Variant::full) {
          for (Vertex w = 0; w < _h.vertex_count(); ++w) {
            out.push_back({2, w});
          }
        } else {
          for (std::uint32_t i = 0; i < _pairs.size(); ++i) {
            out.push_back({2, i});
          }
        }
        if (_v == Variant::natural) {
          for (std::uint32_t i = 0; i < _h.edges().size(); ++i) {
            out.push_back({3, i});
          }
        } else if (!_h.edges().empty()) {
          out.push_back({3, 0});
        }
        return out;
      }

      // Product of two vertex products; nullopt is 0.
      std::optional<Payload> merge(Payload a, Payload b) const {
        if (a.size == 0) {
          return b;
        }
        if (b.size == 0) {
          return a;
        }
        if (a.size + b.size > 3) {
          return std::nullopt;
        }
        if (a.size == 1 && b.size == 1) {
          Vertex u = a.key, v = b.key;
          if (u == v || !_h.extends(u, v)) {
            return std::nullopt;
          }
          return pair_payload(u, v);
        }
        if (a.size == 2) {
          std::swap(a, b);
        }
        // a is a vertex x, b a 2-element product
        Vertex x = a.key;
        if (_v == Variant::full) {
          // [p,q] with completion w: x p q is an edge iff x == w
          if (x != b.key) {
            return std::nullopt;
          }
          return Payload{3, 0};
        }
        auto [p, q] = _pairs[b.key];
        if (x == p || x == q || !_h.has_edge(x, p, q)) {
          return std::nullopt;
        }
        if (_v == Variant::natural) {
          Edge e{x, p, q};
          std::sort(e.begin(), e.end());
          return Payload{3, _edge_index.at(e)};
        }
        return Payload{3, 0};
      }

      // Does s t r * l' t s' survive, i.e. is r u l' an edge?
      bool closes_edge(Payload r, Payload l) const {
        auto m = merge(r, l);
        return m && m->size == 3;
      }

      bool is_e(Payload p) const {
        return p.size == 3 && _v != Variant::natural;
      }

      Payload pair_payload(Vertex u, Vertex v) const {
        if (_v == Variant::full) {
          return {2, _h.completions(u, v).at(0)};
        }
        return {2, _pair_index[u * _h.vertex_count() + v]};
      }

      std::string name(Payload p) const {
        switch (p.size) {
          case 0:
            return "";
          case 1:
            return _h.name(p.key);
          case 2:
            if (_v == Variant::full) {
              auto [u, v] = class_representative(p.key);
              return "[" + _h.name(u) + "," + _h.name(v) + "]";
            }
            return join({_pairs[p.key].first, _pairs[p.key].second});
          default:
            if (_v == Variant::natural) {
              Edge const& e = _h.edges()[p.key];
              return join({e[0], e[1], e[2]});
            }
            return "e";
        }
      }

      // Vertices that make up a payload (size 2 in full: a representative).
      std::vector<Vertex> spell(Payload p) const {
        switch (p.size) {
          case 0:
            return {};
          case 1:
            return {p.key};
          case 2:
            if (_v == Variant::full) {
              auto [u, v] = class_representative(p.key);
              return {u, v};
            }
            return {_pairs[p.key].first, _pairs[p.key].second};
          default:
            if (_v == Variant::natural) {
              Edge const& e = _h.edges()[p.key];
              return {e[0], e[1], e[2]};
            }
            Edge const& e = _h.edges().at(0);
            return {e[0], e[1], e[2]};
        }
      }

     private:
      static constexpr std::uint32_t none = static_cast<std::uint32_t>(-1);

      std::pair<Vertex, Vertex> class_representative(Vertex w) const {
        for (auto [a, b] : _pairs) {
          if (_h.completions(a, b).at(0) == w) {
            return {a, b};
          }
        }
        throw Falsified("pair class without members");
      }

      std::string join(std::vector<Vertex> const& vs) const {
        bool        short_names = std::all_of(vs.begin(), vs.end(), [&](Vertex v) {
          return _h.name(v).size() == 1;
        });
        std::string out;
        for (std::size_t i = 0; i < vs.size(); ++i) {
          if (i > 0 && !short_names) {
            out += '.';
          }
          out += _h.name(vs[i]);
        }
        return out;
      }

      Hypergraph const&                      _h;
      Variant                                _v;
      std::vector<std::pair<Vertex, Vertex>> _pairs;
      std::vector<std::uint32_t>             _pair_index;
      std::map<Edge, std::uint32_t>          _edge_index;
    };
  }  // namespace detail

  struct HGMonoidBundle {
    Hypergraph             hypergraph;
    Variant                variant = Variant::full;
    FinMonoid              monoid;
    std::vector<HGElement> elements;  // index -> normal form
    Element                t = 0;
    std::vector<Element>   vertex;    // vertex -> generator element
    std::optional<Element> e;         // the collapsed edge product (sharp, full)

    [[nodiscard]] std::string label(Element x) const {
      return monoid.label(x);
    }

    [[nodiscard]] Element index_of(HGElement const& el) const {
      auto it = std::find(elements.begin(), elements.end(), el);
      if (it == elements.end()) {
        throw InputError("element not in the bundle");
      }
      return static_cast<Element>(it - elements.begin());
    }

    // Product of generators spelled as a list; `t_marker` stands for t.
    [[nodiscard]] Element spell(std::vector<Vertex> const& word, Vertex t_marker) const {
      Element acc = monoid.identity();
      for (Vertex v : word) {
        acc = monoid.product(acc, v == t_marker ? t : vertex.at(v));
      }
      return acc;
    }
  };

  struct RuleViolation {
    std::string rule;
    std::string detail;
  };

  // Checks rules (1)-(8) as they apply to the bundle's variant.
  inline std::vector<RuleViolation> check_presentation_rules(HGMonoidBundle const& b) {
    std::vector<RuleViolation> bad;
    FinMonoid const&           m = b.monoid;
    Hypergraph const&          h = b.hypergraph;
    Element const              z = *m.zero();
    auto mul = [&](std::initializer_list<Element> xs) { return multiply(m, xs); };
    auto nm  = [&](Vertex v) { return h.name(v); };
    std::size_t const n = h.vertex_count();
    if (mul({b.t, b.t}) != z) {
      bad.push_back({"1", "tt != 0"});
    }
    for (Vertex u = 0; u < n; ++u) {
      Element U = b.vertex[u];
      if (mul({b.t, U, b.t}) != z) {
        bad.push_back({"1", "t" + nm(u) + "t != 0"});
      }
      if (mul({U, U}) != z) {
        bad.push_back({"3", nm(u) + nm(u) + " != 0"});
      }
      for (Vertex v = 0; v < n; ++v) {
        Element V = b.vertex[v];
        if (mul({b.t, U, V, b.t}) != z) {
          bad.push_back({"1", "t" + nm(u) + nm(v) + "t != 0"});
        }
        if (mul({U, V}) != mul({V, U})) {
          bad.push_back({"2", nm(u) + nm(v) + " != " + nm(v) + nm(u)});
        }
        if (u != v && !h.extends(u, v) && mul({U, V}) != z) {
          bad.push_back({"4", nm(u) + nm(v) + " != 0"});
        }
      }
    }
    std::optional<Element> first_e;
    for (Edge const& e : h.edges()) {
      Element E = mul({b.vertex[e[0]], b.vertex[e[1]], b.vertex[e[2]]});
      if (mul({b.t, E, b.t}) != b.t) {
        bad.push_back({"5", "t" + nm(e[0]) + nm(e[1]) + nm(e[2]) + "t != t"});
      }
      if (b.variant != Variant::natural) {
        if (first_e && *first_e != E) {
          bad.push_back({"6", "edge products differ"});
        }
        first_e = E;
        if (mul({E, b.t, E}) != E) {
          bad.push_back({"7", "ete != e"});
        }
      }
    }
    if (b.variant == Variant::full) {
      PairPartition part(h);
      for (auto const& [cls, members] : part.classes()) {
        if (cls == PairPartition::non_extending) {
          continue;
        }
        Element first = mul({b.vertex[members[0].first], b.vertex[members[0].second]});
        for (auto [u, v] : members) {
          if (mul({b.vertex[u], b.vertex[v]}) != first) {
            bad.push_back({"8", nm(u) + nm(v) + " differs within its class"});
          }
        }
      }
    }
    return bad;
  }

  // The monoid presented by rules (1)-(8) for the variant, synthesized from
  // normal forms: 0, 1, vertex products s, and s t s'.
  inline HGMonoidBundle build(Hypergraph const& h, Variant variant) {
    if (h.has_isolated_vertices()) {
      throw PreconditionError("build: hypergraph has an isolated vertex");
    }
    Girth g = girth(h);
    if (!g.at_least(4)) {
      throw PreconditionError("build: girth " + g.to_string() + " < 4");
    }
    detail::PayloadAlgebra alg(h, variant);
    std::vector<Payload>   pl = alg.payloads();

    HGMonoidBundle b;
    b.hypergraph = h;
    b.variant    = variant;
    auto& els    = b.elements;
    els.push_back(HGElement::zero());
    els.push_back(HGElement::one());
    for (Payload p : pl) {
      if (p.size > 0) {
        els.push_back(HGElement::vprod(p));
      }
    }
    for (Payload l : pl) {
      for (Payload r : pl) {
        if (alg.is_e(l) && alg.is_e(r)) {
          continue;  // e t e = e
        }
        els.push_back(HGElement::tform(l, r));
      }
    }
    std::map<HGElement, Element> index;
    for (Element i = 0; i < els.size(); ++i) {
      index[els[i]] = i;
    }
    auto normal = [&](HGElement x) {
      if (x.kind == HGElement::Kind::tform && alg.is_e(x.left) && alg.is_e(x.right)) {
        return index.at(HGElement::vprod(x.left));
      }
      return index.at(x);
    };
    auto product = [&](HGElement const& x, HGElement const& y) -> Element {
      using K = HGElement::Kind;
      if (x.kind == K::zero || y.kind == K::zero) {
        return 0;
      }
      if (x.kind == K::one) {
        return index.at(y);
      }
      if (y.kind == K::one) {
        return index.at(x);
      }
      if (x.kind == K::vprod && y.kind == K::vprod) {
        auto m = alg.merge(x.left, y.left);
        return m ? normal(HGElement::vprod(*m)) : 0;
      }
      if (x.kind == K::vprod) {
        auto m = alg.merge(x.left, y.left);
        return m ? normal(HGElement::tform(*m, y.right)) : 0;
      }
      if (y.kind == K::vprod) {
        auto m = alg.merge(x.right, y.left);
        return m ? normal(HGElement::tform(x.left, *m)) : 0;
      }
      if (!alg.closes_edge(x.right, y.left)) {
        return 0;
      }
      return normal(HGElement::tform(x.left, y.right));
    };

    std::size_t const        n = els.size();
    std::vector<Element>     table(n * n);
    std::vector<std::string> labels(n);
    for (Element i = 0; i < n; ++i) {
      for (Element j = 0; j < n; ++j) {
        table[i * n + j] = product(els[i], els[j]);
      }
      switch (els[i].kind) {
        case HGElement::Kind::zero:
          labels[i] = "0";
          break;
        case HGElement::Kind::one:
          labels[i] = "1";
          break;
        case HGElement::Kind::vprod:
          labels[i] = alg.name(els[i].left);
          break;
        case HGElement::Kind::tform:
          labels[i] = alg.name(els[i].left) + "|t|" + alg.name(els[i].right);
          break;
      }
    }
    b.t = index.at(HGElement::tform({}, {}));
    for (Vertex v = 0; v < h.vertex_count(); ++v) {
      b.vertex.push_back(index.at(HGElement::vprod({1, v})));
    }
    if (variant != Variant::natural && !h.edges().empty()) {
      b.e = index.at(HGElement::vprod({3, 0}));
    }
    std::vector<Element> gens{b.t};
    gens.insert(gens.end(), b.vertex.begin(), b.vertex.end());
    b.monoid = FinMonoid(n, std::move(table), 1, std::move(labels), gens);
    if (closure(b.monoid, gens).size() != n) {
      throw Falsified("build: normal forms are not all generated by t and the vertices");
    }
    auto bad = check_presentation_rules(b);
    if (!bad.empty()) {
      throw Falsified("build: rule (" + bad[0].rule + ") fails: " + bad[0].detail);
    }
    return b;
  }

  struct IdempotentProfile {
    std::vector<Element> idempotents;
    std::vector<Element> predicted;
  };

  // Idempotents must be exactly 0, 1 and the s t s' with s, s' disjoint and
  // s u s' an edge.
  inline IdempotentProfile idempotent_profile(HGMonoidBundle const& b) {
    if (b.variant != Variant::full) {
      throw PreconditionError("idempotent_profile: needs the full variant");
    }
    IdempotentProfile out;
    out.idempotents = idempotents(b.monoid);
    for (Element x = 0; x < b.elements.size(); ++x) {
      HGElement const& el = b.elements[x];
      bool             predicted = false;
      switch (el.kind) {
        case HGElement::Kind::zero:
        case HGElement::Kind::one:
          predicted = true;
          break;
        case HGElement::Kind::vprod:
          break;
        case HGElement::Kind::tform: {
          Payload l = el.left, r = el.right;
          if (l.size + r.size != 3) {
            break;
          }
          if (l.size == 0 || r.size == 0) {
            predicted = true;
            break;
          }
          Payload one = l.size == 1 ? l : r, two = l.size == 1 ? r : l;
          // full variant: a pair class is named by its completing vertex
          predicted = one.key == two.key;
          break;
        }
      }
      if (predicted) {
        out.predicted.push_back(x);
      }
    }
    if (out.predicted != out.idempotents) {
      std::vector<Element> diff;
      std::set_symmetric_difference(out.predicted.begin(), out.predicted.end(),
                                    out.idempotents.begin(), out.idempotents.end(),
                                    std::back_inserter(diff));
      throw Falsified("idempotent_profile: element " + b.label(diff.at(0))
                      + " contradicts the characterization");
    }
    return out;
  }

  // All idempotents commute, and e != f non-trivial gives ef = fe = 0.
  inline bool commuting_idempotents_check(HGMonoidBundle const& b) {
    FinMonoid const& m    = b.monoid;
    auto             idem = idempotents(m);
    Element          z    = *m.zero();
    for (Element e : idem) {
      for (Element f : idem) {
        if (m.product(e, f) != m.product(f, e)) {
          return false;
        }
        bool trivial = e == f || e == z || f == z || e == m.identity() || f == m.identity();
        if (!trivial && m.product(e, f) != z) {
          return false;
        }
      }
    }
    return true;
  }

  struct EmbeddingReport {
    Element              ete = 0;
    Submonoid            sub;
    std::vector<Element> b21_image;  // B21 element -> M_H element
  };

  // <t, ete> is a copy of B21.
  inline EmbeddingReport b21_inside(HGMonoidBundle const& b) {
    if (b.variant != Variant::full) {
      throw PreconditionError("b21_inside: needs the full variant");
    }
    if (!b.e) {
      throw PreconditionError("b21_inside: hypergraph has no edges");
    }
    FinMonoid const& m = b.monoid;
    EmbeddingReport  r;
    r.ete = multiply(m, {*b.e, b.t, *b.e});
    r.sub = submonoid(m, {b.t, r.ete});
    auto iso = find_isomorphism(brandt_b21(), r.sub.monoid);
    if (!iso) {
      throw Falsified("b21_inside: <t, ete> is not isomorphic to B21 ("
                      + std::to_string(r.sub.monoid.size()) + " elements)");
    }
    for (Element x : *iso) {
      r.b21_image.push_back(r.sub.embedding[x]);
    }
    return r;
  }

}  // namespace varlab
