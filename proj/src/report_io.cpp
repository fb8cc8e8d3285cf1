#include "kgres/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace kgres::io {

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or_inf(const json& v) {
  return v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json to_json(const ResonanceReport& report) {
  json doc;
  doc["schema"] = kReportSchema;
  doc["c"] = report.c;
  doc["options"] = {{"r_max", report.options.r_max},
                    {"grid_step", report.options.grid_step},
                    {"tau_sep", report.options.tau_sep}};
  json phases = json::array();
  for (const auto& idx : report.resonant_phases()) phases.push_back(to_string(idx));
  doc["resonant_phases"] = phases;

  json comps = json::array();
  for (const auto& comp : report.components) {
    json orbit_labels = json::array();
    for (const auto& member : orbit(comp.idx)) orbit_labels.push_back(to_string(member));
    const auto src = comp.source_radii();
    comps.push_back({{"phase", to_string(comp.idx)},
                     {"orbit", orbit_labels},
                     {"R", comp.radius},
                     {"lambda", comp.lambda},
                     {"order", comp.order},
                     {"tangent", comp.tangent},
                     {"order_fit_ok", comp.order_fit_ok},
                     {"outcome_radius", comp.outcome_radius()},
                     {"source_radii", {src[0], src[1]}}});
  }
  doc["components"] = comps;
  doc["outcome_radii"] = report.outcome_radii;
  doc["source_radii"] = report.source_radii;
  doc["separated"] = report.separated;
  doc["min_gap"] = finite_or_null(report.min_gap);
  doc["delta0"] = report.delta0;
  doc["warnings"] = report.warnings;
  return doc;
}

ResonanceReport report_from_json(const json& doc) {
  if (!doc.contains("schema") || doc["schema"] != kReportSchema) {
    throw std::runtime_error("not a resonance-report/1 document");
  }
  try {
    ResonanceReport r;
    r.c = doc.at("c").get<double>();
    const auto& opt = doc.at("options");
    r.options.r_max = opt.at("r_max").get<double>();
    r.options.grid_step = opt.at("grid_step").get<double>();
    r.options.tau_sep = opt.at("tau_sep").get<double>();
    for (const auto& c : doc.at("components")) {
      ResonantComponent comp;
      comp.idx = parse_phase_index(c.at("phase").get<std::string>());
      comp.radius = c.at("R").get<double>();
      comp.lambda = c.at("lambda").get<double>();
      comp.order = c.at("order").get<int>();
      comp.tangent = c.at("tangent").get<bool>();
      comp.order_fit_ok = c.at("order_fit_ok").get<bool>();
      r.components.push_back(comp);
    }
    r.outcome_radii = doc.at("outcome_radii").get<std::vector<double>>();
    r.source_radii = doc.at("source_radii").get<std::vector<double>>();
    r.separated = doc.at("separated").get<bool>();
    r.min_gap = number_or_inf(doc.at("min_gap"));
    r.delta0 = doc.at("delta0").get<double>();
    r.warnings = doc.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed resonance report: ") + e.what());
  }
}

json to_json(const ConstantsSearch& search, double A, int n) {
  json doc;
  doc["schema"] = kConstantsSchema;
  doc["A"] = A;
  doc["n"] = n;
  doc["feasible"] = search.budget.has_value();
  doc["binding_inequality"] = search.binding_inequality;
  doc["binding_slack"] = search.binding_slack;
  if (search.budget) {
    const auto& b = *search.budget;
    doc["budget"] = {{"delta1", b.delta1}, {"delta2", b.delta2}, {"delta3", b.delta3},
                     {"N", b.N},           {"slack", b.slack}};
  } else {
    doc["budget"] = nullptr;
  }
  return doc;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "c,separated,min_gap\n";
  for (const auto& row : rows) {
    out << format_double(row.c) << ',' << (row.separated ? "true" : "false") << ','
        << (std::isfinite(row.min_gap) ? format_double(row.min_gap) : std::string("inf")) << '\n';
  }
}

}  // namespace kgres::io
