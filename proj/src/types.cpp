#include "dynamo/types.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace dynamo {

Triple Triple::checked(const Vec3& B, const Vec3& u, const Vec3& E) {
  Triple z{B, u, E};
  if (!z.is_finite()) throw std::invalid_argument("Triple: non-finite component");
  return z;
}

HullParams::HullParams(double r, double s) : r_(r), s_(s) {
  if (!(std::isfinite(r) && std::isfinite(s) && r > 0.0 && s > 0.0)) {
    throw std::invalid_argument("HullParams: r and s must be finite and positive");
  }
}

double HullParams::scale() const { return std::max({r_, s_, 1.0}); }

void Tolerances::validate() const {
  if (!(eps_mem > 0.0 && eps_root > 0.0 && eps_residual > 0.0)) {
    throw std::invalid_argument("Tolerances: all tolerances must be positive");
  }
  if (!(eps_root < eps_mem)) throw std::invalid_argument("Tolerances: eps_root must be below eps_mem");
}

Tolerances Tolerances::with_membership(double eps_mem) {
  Tolerances t;
  t.eps_mem = eps_mem;
  t.validate();
  return t;
}

namespace {

struct KindName {
  ConeKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 4> kKindNames{{
    {ConeKind::NonStationary, "nonstationary"},
    {ConeKind::NonStationaryIncompressible, "nonstationary-incompressible"},
    {ConeKind::Stationary, "stationary"},
    {ConeKind::StationaryIncompressible, "stationary-incompressible"},
}};

}  // namespace

std::string_view to_string(ConeKind kind) {
  for (const auto& k : kKindNames) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

std::optional<ConeKind> parse_cone_kind(std::string_view name) {
  for (const auto& k : kKindNames) {
    if (k.name == name) return k.kind;
  }
  return std::nullopt;
}

std::string_view to_string(Separator s) {
  switch (s) {
    case Separator::None: return "none";
    case Separator::G1: return "G1";
    case Separator::G2: return "G2";
    case Separator::G3: return "G3";
  }
  return "none";
}

}  // namespace dynamo
