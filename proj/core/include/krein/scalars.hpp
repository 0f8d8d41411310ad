#pragma once

// Scalars of the two fields the library works over: std::complex<double>
// and the real quaternions.  Generic code reaches both through the free
// functions conj / norm / real / inverse and through FieldTraits.

#include <array>
#include <cmath>
#include <complex>
#include <iosfwd>
#include <string_view>

namespace krein {

using Complex = std::complex<double>;

/// q = w + x i + y j + z k, with i^2 = j^2 = k^2 = ijk = -1.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_) : w(w_) {}  // NOLINT: reals embed implicitly
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}

  /// Embeds a + b i.
  static constexpr Quaternion from_complex(Complex c) {
    return {c.real(), c.imag(), 0.0, 0.0};
  }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(const Quaternion& o);
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
  constexpr Quaternion& operator/=(double s) {
    w /= s; x /= s; y /= s; z /= s;
    return *this;
  }

  constexpr bool operator==(const Quaternion&) const = default;
};

/// Hamilton product.
constexpr Quaternion quat_mul(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

constexpr Quaternion& Quaternion::operator*=(const Quaternion& o) {
  *this = quat_mul(*this, o);
  return *this;
}

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) { return quat_mul(a, b); }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a /= s; }

inline constexpr Quaternion kQuatI{0.0, 1.0, 0.0, 0.0};
inline constexpr Quaternion kQuatJ{0.0, 0.0, 1.0, 0.0};
inline constexpr Quaternion kQuatK{0.0, 0.0, 0.0, 1.0};

constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }
/// Squared modulus, mirroring std::norm for complex numbers.
constexpr double norm(const Quaternion& q) { return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z; }
inline double abs(const Quaternion& q) { return std::sqrt(norm(q)); }
constexpr double real(const Quaternion& q) { return q.w; }
constexpr Quaternion imag_part(const Quaternion& q) { return {0.0, q.x, q.y, q.z}; }
constexpr Quaternion inverse(const Quaternion& q) { return conj(q) / norm(q); }

inline Complex inverse(const Complex& c) { return 1.0 / c; }
inline Complex imag_part(const Complex& c) { return {0.0, c.imag()}; }

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

/// x0 + axis * y with y >= 0 and axis a unit imaginary quaternion.
struct SliceForm {
  double x0 = 0.0;
  double y = 0.0;
  Quaternion axis = kQuatI;

  Quaternion reconstruct() const { return Quaternion{x0} + axis * y; }
};

/// Real inputs (|Im q| <= tol * (1 + |q|)) get the axis i.
SliceForm slice_decompose(const Quaternion& q, double tol = 1e-14);

using Chi2x2 = std::array<std::array<Complex, 2>, 2>;

/// q = z1 + z2 j  ->  [[z1, z2], [-conj(z2), conj(z1)]].
Chi2x2 chi_scalar(const Quaternion& q);

/// Inverse of chi_scalar on its image (reads z1 and z2 from the first row).
Quaternion unchi_scalar(const Complex& z1, const Complex& z2);

template <class T>
struct FieldTraits;

template <>
struct FieldTraits<Complex> {
  static constexpr std::string_view name = "complex";
  static constexpr bool is_quaternion = false;
};

template <>
struct FieldTraits<Quaternion> {
  static constexpr std::string_view name = "quaternion";
  static constexpr bool is_quaternion = true;
};

/// p^n by repeated multiplication; exact for n <= 1.
template <class T>
T power(const T& p, int n) {
  T out{1.0};
  for (int i = 0; i < n; ++i) out = out * p;
  return out;
}

}  // namespace krein
