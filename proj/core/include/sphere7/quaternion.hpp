#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "sphere7/tolerances.hpp"

namespace sphere7 {

// Quaternion q0 + q1 i + q2 j + q3 k over an arbitrary ordered field.
template <class T>
struct BasicQuaternion {
  T q0{}, q1{}, q2{}, q3{};

  BasicQuaternion() = default;
  BasicQuaternion(T a, T b, T c, T d) : q0(a), q1(b), q2(c), q3(d) {}
  explicit BasicQuaternion(T real) : q0(real), q1(0), q2(0), q3(0) {}

  static BasicQuaternion unit(int k) {
    BasicQuaternion q;
    q[k] = T(1);
    return q;
  }

  T& operator[](int k) { return k == 0 ? q0 : k == 1 ? q1 : k == 2 ? q2 : q3; }
  const T& operator[](int k) const { return k == 0 ? q0 : k == 1 ? q1 : k == 2 ? q2 : q3; }

  BasicQuaternion& operator+=(const BasicQuaternion& o) {
    q0 += o.q0; q1 += o.q1; q2 += o.q2; q3 += o.q3;
    return *this;
  }
  BasicQuaternion& operator-=(const BasicQuaternion& o) {
    q0 -= o.q0; q1 -= o.q1; q2 -= o.q2; q3 -= o.q3;
    return *this;
  }
  BasicQuaternion& operator*=(const T& s) {
    q0 *= s; q1 *= s; q2 *= s; q3 *= s;
    return *this;
  }

  friend BasicQuaternion operator+(BasicQuaternion a, const BasicQuaternion& b) { return a += b; }
  friend BasicQuaternion operator-(BasicQuaternion a, const BasicQuaternion& b) { return a -= b; }
  friend BasicQuaternion operator*(BasicQuaternion a, const T& s) { return a *= s; }
  friend BasicQuaternion operator*(const T& s, BasicQuaternion a) { return a *= s; }
  BasicQuaternion operator-() const { return {-q0, -q1, -q2, -q3}; }

  friend BasicQuaternion operator*(const BasicQuaternion& a, const BasicQuaternion& b) {
    return {a.q0 * b.q0 - a.q1 * b.q1 - a.q2 * b.q2 - a.q3 * b.q3,
            a.q0 * b.q1 + a.q1 * b.q0 + a.q2 * b.q3 - a.q3 * b.q2,
            a.q0 * b.q2 - a.q1 * b.q3 + a.q2 * b.q0 + a.q3 * b.q1,
            a.q0 * b.q3 + a.q1 * b.q2 - a.q2 * b.q1 + a.q3 * b.q0};
  }

  friend bool operator==(const BasicQuaternion& a, const BasicQuaternion& b) {
    return a.q0 == b.q0 && a.q1 == b.q1 && a.q2 == b.q2 && a.q3 == b.q3;
  }

  BasicQuaternion conj() const { return {q0, -q1, -q2, -q3}; }
  T normsq() const { return q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3; }
  BasicQuaternion imag() const { return {T(0), q1, q2, q3}; }
};

using Quaternion = BasicQuaternion<double>;

template <class T>
BasicQuaternion<T> qmul(const BasicQuaternion<T>& a, const BasicQuaternion<T>& b) {
  return a * b;
}
template <class T>
BasicQuaternion<T> qconj(const BasicQuaternion<T>& a) {
  return a.conj();
}
template <class T>
T qnormsq(const BasicQuaternion<T>& a) {
  return a.normsq();
}
template <class T>
BasicQuaternion<T> qinv(const BasicQuaternion<T>& a) {
  const T n = a.normsq();
  if (n == T(0)) throw std::domain_error("zero quaternion");
  BasicQuaternion<T> c = a.conj();
  c.q0 /= n; c.q1 /= n; c.q2 /= n; c.q3 /= n;
  return c;
}

inline double qnorm(const Quaternion& a) { return std::sqrt(a.normsq()); }

// Largest absolute component.
inline double qmaxabs(const Quaternion& a) {
  return std::max({std::abs(a.q0), std::abs(a.q1), std::abs(a.q2), std::abs(a.q3)});
}

// exp of a purely imaginary quaternion v: cos|v| + sin|v| v/|v|.
Quaternion qexp_imag(const Quaternion& v);

// Inverse of qexp_imag on unit quaternions, principal branch (angle in [0, pi]).
Quaternion qlog_unit(const Quaternion& u);

// Row-major 2x2 quaternionic matrix [[w, x], [z, y]].
template <class T>
struct BasicQMatrix2 {
  using Q = BasicQuaternion<T>;
  Q w, x, z, y;

  static BasicQMatrix2 identity() { return {Q(T(1)), Q(), Q(), Q(T(1))}; }
  static BasicQMatrix2 diag(const Q& a, const Q& b) { return {a, Q(), Q(), b}; }

  friend BasicQMatrix2 operator*(const BasicQMatrix2& a, const BasicQMatrix2& b) {
    return {a.w * b.w + a.x * b.z, a.w * b.x + a.x * b.y,
            a.z * b.w + a.y * b.z, a.z * b.x + a.y * b.y};
  }
  friend BasicQMatrix2 operator+(const BasicQMatrix2& a, const BasicQMatrix2& b) {
    return {a.w + b.w, a.x + b.x, a.z + b.z, a.y + b.y};
  }
  friend BasicQMatrix2 operator-(const BasicQMatrix2& a, const BasicQMatrix2& b) {
    return {a.w - b.w, a.x - b.x, a.z - b.z, a.y - b.y};
  }
  friend BasicQMatrix2 operator*(const T& s, const BasicQMatrix2& a) {
    return {s * a.w, s * a.x, s * a.z, s * a.y};
  }
  friend bool operator==(const BasicQMatrix2& a, const BasicQMatrix2& b) {
    return a.w == b.w && a.x == b.x && a.z == b.z && a.y == b.y;
  }

  // Quaternionic conjugate transpose.
  BasicQMatrix2 dagger() const { return {w.conj(), z.conj(), x.conj(), y.conj()}; }
};

using QMatrix2 = BasicQMatrix2<double>;

// Max-abs entry of g^dagger g - Id.
double unitarity_residual(const QMatrix2& g);

double qmat_maxabs(const QMatrix2& g);

// For unitary g the inverse is the conjugate transpose.
inline QMatrix2 unitary_inverse(const QMatrix2& g) { return g.dagger(); }

}  // namespace sphere7
