#pragma once

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "experiments.hpp"
#include "io.hpp"
#include "witness.hpp"

namespace varlab {

  inline constexpr char const* version = "1.0.0";

  // Reproducibility header carried by every report.
  struct ReportHeader {
    std::string                command;
    KeyValues                  config;
    std::vector<std::uint64_t> seeds;
  };

  struct ReportFormat {
    enum class Kind { json, table, csv } kind = Kind::json;
    bool timing = false;  // off by default so reruns are byte-identical
  };

  inline ReportFormat::Kind parse_format(std::string const& s) {
    if (s == "json") {
      return ReportFormat::Kind::json;
    }
    if (s == "table") {
      return ReportFormat::Kind::table;
    }
    if (s == "csv") {
      return ReportFormat::Kind::csv;
    }
    throw InputError("unknown format '" + s + "' (json|table|csv)");
  }

  inline json header_json(ReportHeader const& h) {
    json out;
    out["tool"]    = "varlab";
    out["version"] = version;
    out["command"] = h.command;
    json cfg       = json::object();
    for (auto const& [k, v] : h.config) {
      cfg[k] = v;
    }
    out["config"] = cfg;
    out["seeds"]  = h.seeds;
    return out;
  }

  inline json key_values_json(KeyValues const& kv) {
    json out = json::object();
    for (auto const& [k, v] : kv) {
      out[k] = v;
    }
    return out;
  }

  inline json report_json(SeparationReport const& r, ReportHeader const& h, bool timing) {
    json out;
    out["header"]     = header_json(h);
    out["experiment"] = r.experiment;
    out["passed"]     = r.passed;
    out["facts"]      = key_values_json(r.facts);
    json rows         = json::array();
    for (ReportRow const& row : r.rows) {
      json j;
      j["instance"] = row.instance;
      j["identity"] = row.identity;
      j["verdict"]  = to_string(row.verdict);
      j["witness"]  = key_values_json(row.witness);
      j["strategy"] = row.strategy;
      j["seed"]     = row.seed;
      j["samples"]  = row.samples;
      if (!row.note.empty()) {
        j["note"] = row.note;
      }
      if (timing) {
        j["seconds"] = row.seconds;
      }
      rows.push_back(j);
    }
    out["rows"] = rows;
    return out;
  }

  namespace detail {
    inline std::string witness_text(KeyValues const& w) {
      std::string s;
      for (auto const& [k, v] : w) {
        s += (s.empty() ? "" : " ") + k + "->" + v;
      }
      return s.empty() ? "-" : s;
    }

    inline std::string csv_field(std::string const& s) {
      if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
      }
      std::string out = "\"";
      for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
      }
      return out + "\"";
    }

    inline std::string seconds_text(double s) {
      std::ostringstream o;
      o << std::fixed << std::setprecision(3) << s;
      return o.str();
    }
  }  // namespace detail

  // Columns: instance, identity, verdict, witness, seed, time.
  inline std::string report_table(SeparationReport const& r, ReportHeader const& h, bool timing) {
    std::vector<std::vector<std::string>> cells{
        {"instance", "identity", "verdict", "witness", "seed", "time"}};
    for (ReportRow const& row : r.rows) {
      cells.push_back({row.instance, row.identity, to_string(row.verdict),
                       detail::witness_text(row.witness), std::to_string(row.seed),
                       timing ? detail::seconds_text(row.seconds) : "-"});
    }
    std::vector<std::size_t> width(6, 0);
    for (auto const& line : cells) {
      for (std::size_t c = 0; c < line.size(); ++c) {
        width[c] = std::max(width[c], line[c].size());
      }
    }
    std::ostringstream out;
    out << "# varlab " << version << " " << h.command;
    for (auto const& [k, v] : h.config) {
      out << " " << k << "=" << v;
    }
    out << "\n# " << r.experiment << ": " << (r.passed ? "passed" : "FAILED") << "\n";
    for (auto const& [k, v] : r.facts) {
      out << "#   " << k << " = " << v << "\n";
    }
    for (auto const& line : cells) {
      for (std::size_t c = 0; c < line.size(); ++c) {
        out << std::left << std::setw(static_cast<int>(width[c] + 2)) << line[c];
      }
      out << "\n";
    }
    return out.str();
  }

  inline std::string report_csv(SeparationReport const& r, bool timing) {
    std::ostringstream out;
    out << "instance,identity,verdict,witness,seed,time\n";
    for (ReportRow const& row : r.rows) {
      out << detail::csv_field(row.instance) << ',' << detail::csv_field(row.identity) << ','
          << to_string(row.verdict) << ',' << detail::csv_field(detail::witness_text(row.witness))
          << ',' << row.seed << ',' << (timing ? detail::seconds_text(row.seconds) : "") << "\n";
    }
    return out.str();
  }

  inline std::string render(SeparationReport const& r, ReportHeader const& h,
                            ReportFormat const& f) {
    switch (f.kind) {
      case ReportFormat::Kind::table:
        return report_table(r, h, f.timing);
      case ReportFormat::Kind::csv:
        return report_csv(r, f.timing);
      default:
        return report_json(r, h, f.timing).dump(2) + "\n";
    }
  }

  inline json a21_witness_json(A21WitnessReport const& r) {
    json out;
    out["coordinates"] = {{"total", r.coords},
                          {"pairs", r.pair_coords},
                          {"non_extending_pairs", r.p_coords},
                          {"vertices", r.vertex_coords}};
    out["coordinate_names"] = r.coordinate_names;
    out["generators"]       = r.generator_tuples;
    out["closure_size"]     = r.closure_size;
    out["quotient_size"]    = r.quotient_size;
    out["natural_size"]     = r.natural_size;
    out["full_size"]        = r.full_size;
    json laws               = json::array();
    for (LawCheck const& l : r.hat_laws) {
      laws.push_back({{"law", l.law}, {"holds", l.holds}, {"detail", l.detail}});
    }
    out["hat_laws"]           = laws;
    out["natural_isomorphic"] = r.natural_isomorphic;
    if (r.natural_iso) {
      out["natural_iso"] = *r.natural_iso;
    }
    out["natural_maps_onto"] = r.natural_maps_onto;
    json ident               = json::array();
    for (auto const& [a, b] : r.identified) {
      ident.push_back({a, b});
    }
    out["identified"]       = ident;
    out["full_is_quotient"] = r.full_is_quotient;
    return out;
  }

  inline json b21_witness_json(B21WitnessReport const& r) {
    json out;
    out["refused"] = r.refused;
    if (r.refused) {
      out["refusal"] = r.refusal;
    }
    json cols = json::array();
    for (Colouring const& c : r.colourings) {
      std::string s;
      for (std::uint8_t x : c) {
        s += char('0' + x);
      }
      cols.push_back(s);
    }
    out["colourings"]    = cols;
    out["generators"]    = r.generator_tuples;
    out["closure_size"]  = r.closure_size;
    out["quotient_size"] = r.quotient_size;
    out["full_size"]     = r.full_size;
    out["iso"]           = r.iso;
    return out;
  }

}  // namespace varlab
