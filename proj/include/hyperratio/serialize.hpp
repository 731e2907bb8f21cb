#pragma once

#include <json.hpp>

#include <string>

#include "hyperratio/conditions.hpp"
#include "hyperratio/exp_sections.hpp"
#include "hyperratio/ratio_kernel.hpp"
#include "hyperratio/series_value.hpp"
#include "hyperratio/turan_suite.hpp"

namespace hyperratio {

using Json = nlohmann::ordered_json;

// Reals are written as decimal strings, rationals as "p/q" strings.
Json to_json(const SeriesValue& value);
Json to_json(const ConditionReport& report);
// {kind, range: [lo, hi], holds, strict, direction, forced,
//  violation: {index, [k,] lhs, rhs} | null}
Json to_json(const Certificate& cert);
Json to_json(const CoeffCertificate& cert);
Json to_json(const MonotoneReport& report);
Json to_json(const ThetaResult& theta);
Json to_json(const EPowerBounds& bounds);

// Header "x,value,error_radius", one row per grid point.
std::string to_csv(const MonotoneReport& report);

// Radius text is rounded upward so the printed enclosure stays valid.
std::string radius_text(const Real& radius);

}  // namespace hyperratio
