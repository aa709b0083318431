#pragma once

#include <cmath>
#include <complex>

namespace qmie {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return s * a; }
  friend constexpr bool operator==(Vec3, Vec3) = default;
};

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

/// Complex 3-vector. Depending on context the components are Cartesian
/// (x, y, z) or local spherical (r, theta, phi); the owning API says which.
struct CVec3 {
  cplx x{};
  cplx y{};
  cplx z{};

  CVec3& operator+=(const CVec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  CVec3& operator-=(const CVec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  friend CVec3 operator+(CVec3 a, const CVec3& b) { return a += b; }
  friend CVec3 operator-(CVec3 a, const CVec3& b) { return a -= b; }
  friend CVec3 operator*(cplx s, const CVec3& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend CVec3 operator*(const CVec3& a, cplx s) { return s * a; }
  friend CVec3 operator*(double s, const CVec3& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const CVec3&, const CVec3&) = default;
};

inline CVec3 to_complex(Vec3 v) { return {v.x, v.y, v.z}; }
inline CVec3 conj(const CVec3& a) { return {std::conj(a.x), std::conj(a.y), std::conj(a.z)}; }

/// Bilinear product a . b (no conjugation).
inline cplx dot(const CVec3& a, const CVec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline cplx dot(const CVec3& a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

/// Hermitian product conj(a) . b.
inline cplx hdot(const CVec3& a, const CVec3& b) {
  return std::conj(a.x) * b.x + std::conj(a.y) * b.y + std::conj(a.z) * b.z;
}

inline double norm2(const CVec3& a) { return std::norm(a.x) + std::norm(a.y) + std::norm(a.z); }
inline double norm(const CVec3& a) { return std::sqrt(norm2(a)); }

inline CVec3 cross(const CVec3& a, const CVec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

}  // namespace qmie
