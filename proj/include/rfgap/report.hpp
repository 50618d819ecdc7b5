#pragma once

// JSON views of the analysis objects. Objects use sorted keys, so output is
// a pure function of the values.

#include <json.hpp>

#include "rfgap/bochner.hpp"
#include "rfgap/grassmann.hpp"
#include "rfgap/kahler.hpp"

namespace rfgap {

using nlohmann::json;

json to_json(const Plane2& p);
json to_json(const ExtremaReport& e);
json to_json(const BergerReport& b);
json to_json(const CorollarySlacks& s);
json to_json(const GapCertificate& c);
json to_json(const HolExtremaReport& h);
json to_json(const SiuYangCertificate& c);
json to_json(const KahlerPinchingSlacks& s);

struct PolygonReportOptions {
  double delta = 1.0;
  int grid = 2001;
  RegionKind region = RegionKind::min_point;
  bool dump_grid = false;
};

/// Vertices, tagged candidates, exact and grid extrema, the piecewise bound
/// and the sign bound of the region.
json polygon_report(const PolygonReportOptions& options);

/// The six gap constants with their defining relations.
json thresholds_report();

}  // namespace rfgap
