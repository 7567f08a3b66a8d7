#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dynamo {

/// Real 3-vector. Components are finite; use Vec3::checked() to build one
/// from untrusted input.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  static Vec3 checked(double x, double y, double z) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
      throw std::invalid_argument("Vec3: non-finite component");
    }
    return {x, y, z};
  }

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double a) {
    x *= a;
    y *= a;
    z *= a;
    return *this;
  }

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  constexpr double norm2() const { return x * x + y * y + z * z; }
  bool is_finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }

  constexpr std::array<double, 3> to_array() const { return {x, y, z}; }

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Scalar triple product a . (b x c).
constexpr double triple_product(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

/// Unit vector along v. Caller guarantees v != 0.
inline Vec3 normalized(const Vec3& v) { return v / v.norm(); }

/// A unit vector orthogonal to v (any, deterministic). v == 0 yields e_x.
inline Vec3 any_orthogonal(const Vec3& v) {
  const double ax = std::abs(v.x), ay = std::abs(v.y), az = std::abs(v.z);
  // Cross with the axis least aligned with v.
  Vec3 axis = (ax <= ay && ax <= az) ? Vec3{1, 0, 0} : (ay <= az ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
  Vec3 w = cross(v, axis);
  const double n = w.norm();
  if (n == 0.0) return {1, 0, 0};
  return w / n;
}

/// Unit vector orthogonal to both a and b. Falls back to any_orthogonal of
/// the larger one when they are (nearly) parallel; both zero yields e_x.
inline Vec3 any_orthogonal(const Vec3& a, const Vec3& b, double rel_tol = 1e-12) {
  const Vec3 w = cross(a, b);
  const double n = w.norm();
  if (n > rel_tol * a.norm() * b.norm() && n > 0.0) return w / n;
  return any_orthogonal(a.norm2() >= b.norm2() ? a : b);
}

/// Rotate v by angle theta about the unit axis k (Rodrigues).
inline Vec3 rotate_about(const Vec3& v, const Vec3& k, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return c * v + s * cross(k, v) + (1.0 - c) * dot(k, v) * k;
}

inline std::string to_string(const Vec3& v) {
  return "(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ", " + std::to_string(v.z) + ")";
}

}  // namespace dynamo
