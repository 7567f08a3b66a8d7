#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "dynamo/laminate.hpp"
#include "dynamo/oracle.hpp"
#include "dynamo/planewave.hpp"
#include "dynamo/types.hpp"

namespace dynamo {

using json = nlohmann::json;

// Triple:      {"B":[x,y,z], "u":[x,y,z], "E":[x,y,z]}
// HullParams:  {"r":..., "s":...}
// Numbers are written with shortest round-trip precision.

json to_json(const Vec3& v);
json to_json(const Triple& z);
json to_json(const HullParams& p);
json to_json(const SeparationWitness& w);
json to_json(const LaminateConditions& c);
json to_json(const WaveVector& xi);
json to_json(const ResidualReport& r);
json to_json(const ConvergenceReport& r);
json to_json(const StaircaseResult& r);

/// {"lambda":..., "z1":Triple, "z2":Triple, "residuals":{...}}
json to_json(const Decomposition& d, const VerificationReport& v, double lambda_mu_residual);

/// {"checked":n, "failures":[...], "max_residual":..., "seed":..., ...}
json to_json(const HullCheckReport& r);

/// Throws DynamoError(InvalidArgument) on a malformed or non-finite value.
Vec3 vec3_from_json(const json& j);
Triple triple_from_json(const json& j);
HullParams hull_params_from_json(const json& j);

/// Parses a Triple document from text.
Triple parse_triple(const std::string& text);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double x);

inline constexpr const char* kSampleCsvHeader = "Bx,By,Bz,ux,uy,uz,Ex,Ey,Ez,in_hull,g1,g2,g3";

/// One CSV row (no newline) matching kSampleCsvHeader.
std::string sample_csv_row(const Triple& z, const HullParams& p, ConeKind kind, const Tolerances& tol);

}  // namespace dynamo
