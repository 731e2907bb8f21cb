#include "hyperratio/serialize.hpp"

namespace hyperratio {

std::string radius_text(const Real& radius) { return radius.to_decimal(6, MPFR_RNDU); }

Json to_json(const SeriesValue& value) {
  Json out;
  out["value"] = value.value.to_decimal();
  out["error_radius"] = radius_text(value.error_radius);
  out["terms_used"] = value.terms_used;
  if (value.exact) out["exact"] = to_string(*value.exact);
  return out;
}

Json to_json(const ConditionReport& report) {
  Json clauses = Json::array();
  for (const auto& clause : report.clauses) {
    clauses.push_back({{"clause", clause.name}, {"passed", clause.passed}, {"detail", clause.detail}});
  }
  return Json{{"theorem", report.theorem}, {"passed", report.passed()}, {"clauses", clauses}};
}

Json to_json(const Certificate& cert) {
  Json out;
  out["kind"] = to_string(cert.kind);
  out["range"] = Json::array({cert.lo, cert.hi});
  out["holds"] = cert.holds;
  out["strict"] = cert.strict;
  out["direction"] = to_string(cert.direction);
  out["forced"] = cert.forced;
  if (cert.first_violation) {
    const auto& v = *cert.first_violation;
    Json violation;
    violation["index"] = v.index;
    if (v.inner_index) violation["k"] = *v.inner_index;
    violation["lhs"] = to_string(v.lhs);
    violation["rhs"] = to_string(v.rhs);
    out["violation"] = violation;
  } else {
    out["violation"] = nullptr;
  }
  return out;
}

Json to_json(const CoeffCertificate& cert) {
  Json out = to_json(cert.coeff_ratio);
  out["conditions"] = to_json(cert.conditions);
  out["w_certificate"] = to_json(cert.w_ratio);
  out["consistent"] = cert.consistent();
  return out;
}

Json to_json(const MonotoneReport& report) {
  Json out;
  out["target"] = report.target;
  out["verdict"] = to_string(report.monotone);
  out["nondecreasing"] = report.nondecreasing;
  out["worst_margin"] = report.worst_margin.to_decimal(12, MPFR_RNDD);
  if (report.grid.size() > 1) {
    out["worst_location"] = Json::array({report.grid[report.worst_location.first].to_decimal(),
                                         report.grid[report.worst_location.second].to_decimal()});
  }
  out["turan"] = to_string(report.turan);
  out["turan_floor"] = to_string(report.turan_floor);
  out["turan_min"] = report.turan_min.to_decimal(12, MPFR_RNDD);
  if (report.ceiling) {
    out["ceiling"] = to_string(*report.ceiling);
    out["below_ceiling"] = to_string(report.below_ceiling);
    out["ceiling_margin"] = report.ceiling_margin.to_decimal(12, MPFR_RNDD);
  }
  out["beyond_theorem_domain"] = report.beyond_theorem_domain;
  out["escalations"] = report.escalations;
  Json points = Json::array();
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    points.push_back({{"x", report.grid[i].to_decimal()},
                      {"value", report.values[i].value.to_decimal()},
                      {"error_radius", radius_text(report.values[i].error_radius)},
                      {"bits", report.bits_used[i]}});
  }
  out["points"] = points;
  return out;
}

Json to_json(const ThetaResult& theta) {
  return Json{{"n", theta.n},
              {"theta", theta.theta.value.to_decimal()},
              {"error_radius", radius_text(theta.theta.error_radius)},
              {"in_bounds", theta.in_bounds}};
}

Json to_json(const EPowerBounds& bounds) {
  auto bound_text = [](const SeriesValue& v) -> Json {
    if (v.exact) return to_string(*v.exact);
    return to_json(v);
  };
  return Json{{"n", bounds.n},
              {"lower", bound_text(bounds.lower)},
              {"upper", bound_text(bounds.upper)},
              {"e_power", to_json(bounds.e_power)},
              {"lower_holds", bounds.lower_holds},
              {"upper_holds", bounds.upper_holds}};
}

std::string to_csv(const MonotoneReport& report) {
  std::string out = "x,value,error_radius\n";
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    out += report.grid[i].to_decimal() + "," + report.values[i].value.to_decimal() + "," +
           radius_text(report.values[i].error_radius) + "\n";
  }
  return out;
}

}  // namespace hyperratio
