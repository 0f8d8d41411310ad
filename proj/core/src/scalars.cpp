#include "krein/scalars.hpp"

#include <ostream>

namespace krein {

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '[' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ']';
}

SliceForm slice_decompose(const Quaternion& q, double tol) {
  const Quaternion im = imag_part(q);
  const double y = abs(im);
  if (y <= tol * (1.0 + abs(q))) return {q.w, 0.0, kQuatI};
  return {q.w, y, im / y};
}

Chi2x2 chi_scalar(const Quaternion& q) {
  const Complex z1{q.w, q.x};
  const Complex z2{q.y, q.z};
  return {{{z1, z2}, {-std::conj(z2), std::conj(z1)}}};
}

Quaternion unchi_scalar(const Complex& z1, const Complex& z2) {
  return {z1.real(), z1.imag(), z2.real(), z2.imag()};
}

}  // namespace krein
