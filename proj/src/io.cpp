#include "dynamo/io.hpp"

#include <charconv>
#include <cmath>

#include "dynamo/core.hpp"

namespace dynamo {

namespace {

// Non-finite doubles (e.g. undefined convergence ratios) become null.
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

[[noreturn]] void bad_input(const std::string& what) { throw DynamoError(ErrorKind::InvalidArgument, what); }

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

json to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json to_json(const Triple& z) { return {{"B", to_json(z.B)}, {"u", to_json(z.u)}, {"E", to_json(z.E)}}; }

json to_json(const HullParams& p) { return {{"r", p.r()}, {"s", p.s()}}; }

json to_json(const SeparationWitness& w) {
  return {{"separator", std::string(to_string(w.separator))},
          {"value", w.value},
          {"g1", w.g1},
          {"g2", w.g2},
          {"g3", w.g3}};
}

json to_json(const LaminateConditions& c) {
  return {{"Ebar", to_json(c.Ebar)},       {"Bbar", to_json(c.Bbar)},
          {"ubar", to_json(c.ubar)},       {"alpha_B", c.alpha_B},
          {"alpha_u", c.alpha_u},          {"plane", std::string(to_string(c.plane))},
          {"root_value", c.root_value},    {"iterations", c.iterations}};
}

json to_json(const WaveVector& xi) { return {{"xi_x", to_json(xi.xi_x)}, {"xi_t", xi.xi_t}}; }

json to_json(const ResidualReport& r) {
  json j = {{"grid", {{"n", r.grid.n}, {"h", r.grid.h}}}, {"gauss", r.gauss}, {"faraday", r.faraday}};
  if (r.incompressible) j["incompressibility"] = r.incompressibility;
  j["time_dependent"] = r.time_dependent;
  return j;
}

json to_json(const ConvergenceReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels) levels.push_back(to_json(l));
  auto ratios = [](const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(number(x));
    return a;
  };
  json j = {{"levels", levels}, {"ratios", {{"gauss", ratios(r.gauss_ratios)}, {"faraday", ratios(r.faraday_ratios)}}}};
  if (!r.incompressibility_ratios.empty()) j["ratios"]["incompressibility"] = ratios(r.incompressibility_ratios);
  return j;
}

json to_json(const StaircaseResult& r) {
  return {{"average", to_json(r.average)},     {"target", to_json(r.target)},
          {"z1_fraction", r.z1_fraction},      {"average_error", r.average_error},
          {"weak_error", r.weak_error},        {"n_osc", r.n_osc},
          {"normal", to_json(r.normal)}};
}

json to_json(const Decomposition& d, const VerificationReport& v, double lambda_mu_residual) {
  return {{"lambda", d.lambda},
          {"z1", to_json(d.z1)},
          {"z2", to_json(d.z2)},
          {"residuals",
           {{"endpoint", v.endpoint_residual},
            {"cone", v.cone_residual},
            {"lambda", v.lambda_residual},
            {"reconstruction", v.reconstruction_residual},
            {"lambda_mu", lambda_mu_residual},
            {"max", v.max_residual}}},
          {"passed", v.passed}};
}

json to_json(const HullCheckReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"stage", f.stage},
                        {"index", f.index},
                        {"point", to_json(f.point)},
                        {"reason", f.reason},
                        {"residual", number(f.residual)}});
  }
  json j = {{"checked", r.checked()},
            {"failures", failures},
            {"failure_count", r.failure_count},
            {"max_residual", r.max_residual},
            {"seed", r.seed},
            {"params", to_json(r.params)},
            {"kind", std::string(to_string(r.kind))},
            {"inner",
             {{"checked", r.inner_checked},
              {"violations", r.inner_violations},
              {"max_abs_g1", r.inner_max_g1},
              {"max_excess_ratio", r.inner_max_excess_ratio},
              {"pair_attempts", r.pair_stats.attempts},
              {"pair_accepted", r.pair_stats.accepted}}},
            {"surjective",
             {{"checked", r.hull_checked},
              {"failures", r.decomposition_failures},
              {"max_residual", r.max_residual},
              {"max_lambda_mu_residual", r.max_lambda_mu_residual}}}};
  if (has_velocity_constraint(r.kind)) {
    j["surjective"]["extra_checks"] = json::array({"u.E = 0", "u.(Bbar x ubar) = 0"});
    j["surjective"]["max_velocity_orthogonality"] = r.max_velocity_orthogonality;
  }
  return j;
}

Vec3 vec3_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) bad_input("expected an array of 3 numbers");
  double c[3];
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number()) bad_input("expected an array of 3 numbers");
    c[i] = j[i].get<double>();
  }
  if (!std::isfinite(c[0]) || !std::isfinite(c[1]) || !std::isfinite(c[2])) bad_input("non-finite component");
  return {c[0], c[1], c[2]};
}

Triple triple_from_json(const json& j) {
  if (!j.is_object()) bad_input("Triple must be a JSON object");
  for (const char* key : {"B", "u", "E"}) {
    if (!j.contains(key)) bad_input(std::string("Triple is missing \"") + key + "\"");
  }
  return {vec3_from_json(j.at("B")), vec3_from_json(j.at("u")), vec3_from_json(j.at("E"))};
}

HullParams hull_params_from_json(const json& j) {
  if (!j.is_object() || !j.contains("r") || !j.contains("s") || !j["r"].is_number() || !j["s"].is_number()) {
    bad_input("HullParams must be {\"r\":number, \"s\":number}");
  }
  try {
    return HullParams(j["r"].get<double>(), j["s"].get<double>());
  } catch (const std::invalid_argument& e) {
    bad_input(e.what());
  }
}

Triple parse_triple(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad_input(std::string("invalid JSON: ") + e.what());
  }
  return triple_from_json(j);
}

std::string sample_csv_row(const Triple& z, const HullParams& p, ConeKind kind, const Tolerances& tol) {
  std::string row;
  for (const Vec3* v : {&z.B, &z.u, &z.E}) {
    row += format_double(v->x) + "," + format_double(v->y) + "," + format_double(v->z) + ",";
  }
  row += in_hull(z, p, kind, tol) ? "true" : "false";
  row += "," + format_double(eval_g1(z)) + "," + format_double(eval_g2(z, p)) + "," + format_double(eval_g3(z));
  return row;
}

}  // namespace dynamo
