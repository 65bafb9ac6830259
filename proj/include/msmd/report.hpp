#pragma once

// Text and JSON renderings of result types, shared by the CLI and the tests.

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "msmd/asymptotics.hpp"
#include "msmd/construction.hpp"
#include "msmd/csv.hpp"
#include "msmd/exact.hpp"
#include "msmd/expansion.hpp"
#include "msmd/localization.hpp"
#include "msmd/signature.hpp"

namespace msmd {

using json = nlohmann::ordered_json;

inline json witness_json(const std::optional<std::pair<Vertex, Vertex>>& w) {
  if (!w) return nullptr;
  return json::array({w->first, w->second});
}

inline json verdict_json(const ResolvingVerdict& v) {
  return json{{"kind", std::string(to_string(v.kind))}, {"resolving", v.resolving}, {"witness", witness_json(v.witness)}};
}

inline json dimension_json(const DimensionResult& r) {
  json beta_ms = r.beta_ms.is_finite() ? json(r.beta_ms.value()) : json("inf");
  json ms_witness = r.beta_ms.is_finite() ? json(r.beta_ms_witness) : json(nullptr);
  return json{{"beta", r.beta},
              {"beta_ms_out", r.beta_ms_out},
              {"beta_ms", beta_ms},
              {"witnesses", {{"beta", r.beta_witness}, {"beta_ms_out", r.beta_ms_out_witness}, {"beta_ms", ms_witness}}},
              {"subsets_examined",
               {{"beta", r.beta_examined},
                {"beta_ms_out", r.beta_ms_out_examined},
                {"beta_ms", r.beta_ms_examined},
                {"total", r.subsets_examined()}}}};
}

inline json round_log_json(const ConstructionResult& c) {
  json log = json::array();
  for (const auto& rec : c.rounds) {
    json row{{"round", rec.round},
             {"r", rec.r},
             {"sample_size", rec.sample_size},
             {"verdict", rec.resolving ? "resolving" : (rec.sample_size == 0 ? "empty" : "collision")}};
    if (rec.witness) row["witness"] = witness_json(rec.witness);
    log.push_back(std::move(row));
  }
  return log;
}

// `vertex,k0,k1,...,kD`
inline void write_signature_csv(std::ostream& os, const SignatureTable& table) {
  std::vector<std::string> header{"vertex"};
  for (std::size_t k = 0; k < table.width(); ++k) header.push_back("k" + std::to_string(k));
  CsvWriter out(os, header);
  for (Vertex v = 0; v < table.order(); ++v) {
    std::vector<std::string> cells{std::to_string(v)};
    for (auto c : table.row(v)) cells.push_back(std::to_string(c));
    out.row(cells);
  }
}

// `level,atypical,typical,allowed_coords`
inline void write_census_csv(std::ostream& os, const TypicalityReport& rep) {
  CsvWriter out(os, {"level", "atypical", "typical", "allowed_coords"});
  for (const auto& l : rep.levels) {
    out.row({std::to_string(l.level), std::to_string(l.atypical), std::to_string(l.typical),
             std::to_string(l.allowed_coords)});
  }
}

inline void write_expansion_csv(std::ostream& os, const ExpansionReport& rep) {
  CsvWriter out(os, {"level", "set_size", "predicted", "samples", "within", "min_ratio", "mean_ratio", "max_ratio",
                     "max_abs_deviation", "tolerance", "gamma", "flagged"});
  for (const auto& l : rep.levels) {
    out.row({std::to_string(l.level), std::to_string(l.set_size), format_real(l.predicted), std::to_string(l.samples),
             std::to_string(l.within), format_real(l.min_ratio), format_real(l.mean_ratio), format_real(l.max_ratio),
             format_real(l.max_abs_deviation), format_real(l.tolerance), format_real(rep.params.gamma),
             l.flagged() ? "1" : "0"});
  }
}

inline std::string format_exponent(double v) { return format_real(v); }
inline std::string format_exponent(const Rational& v) { return v.to_string(); }

// `x,y,level`
template <Exponent Real>
void write_curves_csv(std::ostream& os, const std::vector<ExponentCurve<Real>>& curves) {
  CsvWriter out(os, {"x", "y", "level"});
  for (const auto& c : curves) {
    for (const auto& p : c.points) out.row({format_exponent(p.x), format_exponent(p.y), format_exponent(c.level)});
  }
}

}  // namespace msmd
