#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "error.hpp"
#include "hypergraph.hpp"
#include "monoid.hpp"
#include "words.hpp"

namespace varlab {

  using json = nlohmann::ordered_json;

  namespace detail {
    inline std::size_t line_of(std::string const& text, std::size_t offset) {
      offset = std::min(offset, text.size());
      return 1 + static_cast<std::size_t>(
                     std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
    }

    // Byte offset of element `index` of the array stored under the top-level
    // key `key`; npos if the scan fails. nlohmann does not keep positions.
    inline std::size_t locate_element(std::string const& text, std::string const& key,
                                      std::size_t index) {
      std::size_t depth = 0, i = 0, n = text.size();
      auto        skip_string = [&]() {
        std::size_t start = ++i;
        while (i < n && text[i] != '"') {
          i += text[i] == '\\' ? 2 : 1;
        }
        return text.substr(start, i - start);
      };
      while (i < n) {
        char ch = text[i];
        if (ch == '"') {
          std::string s = skip_string();
          ++i;
          if (depth == 1 && s == key) {
            while (i < n && text[i] != '[') {
              ++i;
            }
            std::size_t inner = 0, count = 0;
            ++i;
            while (i < n) {
              while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) {
                ++i;
              }
              if (inner == 0 && count == index) {
                return i;
              }
              if (text[i] == '"') {
                skip_string();
              } else if (text[i] == '[' || text[i] == '{') {
                ++inner;
              } else if (text[i] == ']' || text[i] == '}') {
                if (inner == 0) {
                  return std::string::npos;
                }
                --inner;
              } else if (text[i] == ',' && inner == 0) {
                ++count;
              }
              ++i;
            }
            return std::string::npos;
          }
          continue;
        }
        if (ch == '{' || ch == '[') {
          ++depth;
        } else if (ch == '}' || ch == ']') {
          --depth;
        }
        ++i;
      }
      return std::string::npos;
    }

    inline std::string where(std::string const& source, std::string const& text,
                             std::string const& key, std::size_t index) {
      std::size_t off = locate_element(text, key, index);
      std::string loc = source;
      if (off != std::string::npos) {
        loc += ":" + std::to_string(line_of(text, off));
      }
      return loc;
    }

    inline json parse_json(std::string const& text, std::string const& source) {
      try {
        return json::parse(text);
      } catch (json::parse_error const& e) {
        throw InputError(source + ":" + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1))
                         + ": malformed JSON (" + e.what() + ")");
      }
    }
  }  // namespace detail

  inline std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw InputError("cannot open '" + path + "'");
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  inline void write_file(std::string const& path, std::string const& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw InputError("cannot write '" + path + "'");
    }
    out << content;
  }

  struct LoadedHypergraph {
    Hypergraph                   graph;
    std::optional<std::uint64_t> seed;
  };

  // {"vertices": [...], "edges": [["u","v","w"], ...]} with an optional
  // "seed"; errors name the source line of the offending entry.
  inline LoadedHypergraph parse_hypergraph(std::string const& text,
                                           std::string const& source = "<input>") {
    json doc = detail::parse_json(text, source);
    if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array()
        || !doc.contains("edges") || !doc["edges"].is_array()) {
      throw InputError(source + ":1: expected an object with arrays \"vertices\" and \"edges\"");
    }
    std::vector<std::string>              names;
    std::map<std::string, Vertex>         index;
    for (std::size_t i = 0; i < doc["vertices"].size(); ++i) {
      json const& v = doc["vertices"][i];
      if (!v.is_string()) {
        throw InputError(detail::where(source, text, "vertices", i) + ": vertex "
                         + std::to_string(i) + " is not a string");
      }
      std::string name = v.get<std::string>();
      if (!index.emplace(name, static_cast<Vertex>(names.size())).second) {
        throw InputError(detail::where(source, text, "vertices", i) + ": duplicate vertex '"
                         + name + "'");
      }
      names.push_back(name);
    }
    std::vector<Edge> edges;
    std::set<Edge>    seen;
    for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
      json const& e   = doc["edges"][i];
      std::string loc = detail::where(source, text, "edges", i);
      if (!e.is_array() || e.size() != 3) {
        throw InputError(loc + ": edge " + std::to_string(i) + " has "
                         + (e.is_array() ? std::to_string(e.size()) + " vertices" : "no vertex list")
                         + ", expected exactly 3 (3-uniform)");
      }
      Edge out{};
      for (std::size_t k = 0; k < 3; ++k) {
        if (!e[k].is_string() || !index.count(e[k].get<std::string>())) {
          throw InputError(loc + ": edge " + std::to_string(i) + " names unknown vertex "
                           + e[k].dump());
        }
        out[k] = index[e[k].get<std::string>()];
      }
      std::sort(out.begin(), out.end());
      if (out[0] == out[1] || out[1] == out[2]) {
        throw InputError(loc + ": edge " + std::to_string(i)
                         + " repeats a vertex, expected 3 distinct vertices (3-uniform)");
      }
      if (!seen.insert(out).second) {
        throw InputError(loc + ": edge " + std::to_string(i) + " is a duplicate");
      }
      edges.push_back(out);
    }
    LoadedHypergraph r{Hypergraph(std::move(names), std::move(edges)), std::nullopt};
    if (doc.contains("seed")) {
      if (!doc["seed"].is_number_unsigned()) {
        throw InputError(source + ": \"seed\" must be a non-negative integer");
      }
      r.seed = doc["seed"].get<std::uint64_t>();
    }
    return r;
  }

  inline LoadedHypergraph load_hypergraph(std::string const& path) {
    return parse_hypergraph(read_file(path), path);
  }

  inline json hypergraph_to_json(Hypergraph const& h, std::optional<std::uint64_t> seed = {},
                                 json metadata = nullptr) {
    json doc;
    doc["vertices"] = h.names();
    json edges      = json::array();
    for (Edge const& e : h.edges()) {
      edges.push_back({h.name(e[0]), h.name(e[1]), h.name(e[2])});
    }
    doc["edges"] = edges;
    if (seed) {
      doc["seed"] = *seed;
    }
    if (!metadata.is_null()) {
      doc["metadata"] = metadata;
    }
    return doc;
  }

  template <FiniteMonoid M>
  json monoid_to_json(M const& m) {
    json doc;
    doc["size"]     = m.size();
    doc["identity"] = m.identity();
    doc["zero"]     = m.zero() ? json(*m.zero()) : json(nullptr);
    json labels     = json::array();
    json table      = json::array();
    for (Element a = 0; a < m.size(); ++a) {
      labels.push_back(m.label(a));
      json row = json::array();
      for (Element b = 0; b < m.size(); ++b) {
        row.push_back(m.product(a, b));
      }
      table.push_back(row);
    }
    doc["labels"] = labels;
    doc["table"]  = table;
    return doc;
  }

  inline FinMonoid parse_monoid(std::string const& text, std::string const& source = "<input>") {
    json doc = detail::parse_json(text, source);
    try {
      std::size_t n = doc.at("size").get<std::size_t>();
      if (n == 0) {
        throw InputError(source + ": size must be positive");
      }
      json const& rows = doc.at("table");
      if (!rows.is_array() || rows.size() != n) {
        throw InputError(source + ": table must have " + std::to_string(n) + " rows");
      }
      std::vector<Element> table;
      for (std::size_t a = 0; a < n; ++a) {
        if (!rows[a].is_array() || rows[a].size() != n) {
          throw InputError(detail::where(source, text, "table", a) + ": row "
                           + std::to_string(a) + " must have " + std::to_string(n) + " entries");
        }
        for (json const& x : rows[a]) {
          table.push_back(x.get<Element>());
        }
      }
      std::vector<std::string> labels;
      if (doc.contains("labels")) {
        labels = doc["labels"].get<std::vector<std::string>>();
      }
      Element const identity = doc.at("identity").get<Element>();
      std::optional<FinMonoid> parsed;
      try {
        parsed.emplace(n, std::move(table), identity, std::move(labels));
      } catch (Falsified const& e) {
        // a bad table is bad input, not a refuted claim
        throw InputError(source + ": " + e.what());
      }
      FinMonoid& m = *parsed;
      if (doc.contains("zero") && !doc["zero"].is_null()
          && (!m.zero() || *m.zero() != doc["zero"].get<Element>())) {
        throw InputError(source + ": declared zero " + doc["zero"].dump()
                         + " is not the zero of the table");
      }
      return m;
    } catch (json::exception const& e) {
      throw InputError(source + ": bad monoid file (" + e.what() + ")");
    }
  }

  struct ZiminFixture {
    std::string  id;
    Word         word;
    Substitution theta;
    std::size_t  zimin_n = 0;
    bool         whole   = false;  // image must equal z_n, not just occur in it
    std::string  expected_image;    // printed form, letters space separated
  };

  // {"version": 1, "fixtures": [{"id", "word", "theta": {letter: image},
  //  "zimin", "whole", "image"}]}; words are whitespace-separated names.
  inline std::vector<ZiminFixture> parse_zimin_fixtures(std::string const& text, Alphabet& names,
                                                        std::string const& source = "<input>") {
    json doc = detail::parse_json(text, source);
    std::vector<ZiminFixture> out;
    try {
      for (std::size_t i = 0; i < doc.at("fixtures").size(); ++i) {
        json const&  f = doc["fixtures"][i];
        ZiminFixture z;
        z.id   = f.at("id").get<std::string>();
        z.word = parse_word(f.at("word").get<std::string>(), names);
        for (auto const& [letter, image] : f.at("theta").items()) {
          z.theta.set(names.intern(letter), parse_word(image.get<std::string>(), names));
        }
        z.zimin_n        = f.at("zimin").get<std::size_t>();
        z.whole          = f.value("whole", false);
        z.expected_image = f.value("image", std::string());
        out.push_back(std::move(z));
      }
    } catch (json::exception const& e) {
      throw InputError(source + ": bad fixture file (" + e.what() + ")");
    }
    return out;
  }

}  // namespace varlab
