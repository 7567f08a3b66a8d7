#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dynamo/vec3.hpp"

namespace dynamo {

/// A state (B, u, E) in R^9: magnetic field, velocity, electric field.
struct Triple {
  Vec3 B;
  Vec3 u;
  Vec3 E;

  /// Builds a triple, rejecting NaN/Inf components.
  static Triple checked(const Vec3& B, const Vec3& u, const Vec3& E);

  bool is_finite() const { return B.is_finite() && u.is_finite() && E.is_finite(); }
  double norm() const { return std::sqrt(B.norm2() + u.norm2() + E.norm2()); }

  Triple& operator+=(const Triple& o) {
    B += o.B;
    u += o.u;
    E += o.E;
    return *this;
  }
  Triple& operator-=(const Triple& o) {
    B -= o.B;
    u -= o.u;
    E -= o.E;
    return *this;
  }
  Triple& operator*=(double a) {
    B *= a;
    u *= a;
    E *= a;
    return *this;
  }

  friend bool operator==(const Triple&, const Triple&) = default;
};

inline Triple operator+(Triple a, const Triple& b) { return a += b; }
inline Triple operator-(Triple a, const Triple& b) { return a -= b; }
inline Triple operator*(double s, Triple a) { return a *= s; }

/// Ohm's-law point (B, u, B x u).
inline Triple ohm_point(const Vec3& B, const Vec3& u) { return {B, u, cross(B, u)}; }

/// Amplitude bounds of the constraint set: |B| = r, |u| = s.
class HullParams {
 public:
  HullParams() = default;
  HullParams(double r, double s);

  double r() const { return r_; }
  double s() const { return s_; }
  /// max(r, s, 1); linear amplitude scale used by tolerance policy.
  double scale() const;

 private:
  double r_ = 1.0;
  double s_ = 1.0;
};

struct Tolerances {
  double eps_mem = 1e-9;        // membership slack
  double eps_root = 1e-12;      // bisection bracket width / degeneracy threshold
  double eps_residual = 1e-8;   // discretized PDE residual slack

  /// Throws std::invalid_argument unless all positive and eps_root < eps_mem.
  void validate() const;
  static Tolerances with_membership(double eps_mem);
};

enum class ConeKind { NonStationary, NonStationaryIncompressible, Stationary, StationaryIncompressible };

std::string_view to_string(ConeKind kind);
std::optional<ConeKind> parse_cone_kind(std::string_view name);

/// True for the kinds whose wave cone carries the extra u.E = 0 condition.
constexpr bool has_velocity_constraint(ConeKind kind) { return kind == ConeKind::StationaryIncompressible; }

enum class Separator { None, G1, G2, G3 };

std::string_view to_string(Separator s);

/// Which separating function excludes a point from the hull, and its value.
struct SeparationWitness {
  Separator separator = Separator::None;
  double value = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;
};

enum class ErrorKind { NotInHull, NotInCone, DegenerateCall, InvalidArgument };

class DynamoError : public std::runtime_error {
 public:
  DynamoError(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class NotInHullError : public DynamoError {
 public:
  NotInHullError(const std::string& what, SeparationWitness witness)
      : DynamoError(ErrorKind::NotInHull, what), witness_(witness) {}
  const SeparationWitness& witness() const { return witness_; }

 private:
  SeparationWitness witness_;
};

}  // namespace dynamo
