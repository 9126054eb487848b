#pragma once

// The ambient groups: C as R^2 and the Heisenberg group H = C x R with
//   (z1,t1)(z2,t2) = (z1 + z2, t1 + t2 + Im(z1 conj(z2)) / 2).
// Every routine is templated on the scalar so that the same code runs on
// exact rationals and on doubles.

#include <array>
#include <complex>

#include "chabauty/errors.hpp"
#include "chabauty/exact.hpp"

namespace chabauty {

using Complex = std::complex<double>;

template <class T>
struct HeisElementT {
  T x{};  // Re z
  T y{};  // Im z
  T t{};  // central coordinate

  friend bool operator==(const HeisElementT&, const HeisElementT&) = default;
};

using HeisElement = HeisElementT<double>;
using HeisElementQ = HeisElementT<Rational>;

inline HeisElement make_heis(Complex z, double t) { return {z.real(), z.imag(), t}; }
inline Complex projection(const HeisElement& e) { return {e.x, e.y}; }
inline HeisElement to_double(const HeisElementQ& e) { return {to_double(e.x), to_double(e.y), to_double(e.t)}; }

/// Im(z1 * conj(z2)) in coordinates.
template <class T>
T im_mul_conj(const T& x1, const T& y1, const T& x2, const T& y2) {
  return y1 * x2 - x1 * y2;
}

template <class T>
HeisElementT<T> heis_mul(const HeisElementT<T>& a, const HeisElementT<T>& b) {
  T half = T(1) / T(2);
  return {a.x + b.x, a.y + b.y, a.t + b.t + half * im_mul_conj(a.x, a.y, b.x, b.y)};
}

template <class T>
HeisElementT<T> heis_inverse(const HeisElementT<T>& a) {
  return {-a.x, -a.y, -a.t};
}

/// a^k for an integer k; powers of one element never pick up a central term.
template <class T>
HeisElementT<T> heis_pow(const HeisElementT<T>& a, long long k) {
  return {a.x * T(k), a.y * T(k), a.t * T(k)};
}

/// [a,b] = a^-1 b^-1 a b in closed form. With the product above this is
/// (0, Im(z1 conj(z2))) = (0, -Im(conj(z1) z2)); a b a^-1 b^-1 is the same element.
template <class T>
HeisElementT<T> heis_commutator(const HeisElementT<T>& a, const HeisElementT<T>& b) {
  return {T(0), T(0), im_mul_conj(a.x, a.y, b.x, b.y)};
}

template <class T>
bool is_central(const HeisElementT<T>& a) {
  return a.x == T(0) && a.y == T(0);
}

/// Automorphism x -> inner_w(M x): M in GL2(R) acts on z = x + iy as a real
/// 2x2 matrix and scales t by det(M); inner_w is conjugation by (w, 0), i.e.
/// (z, t) -> (z, t + Im(w conj z)).
template <class T>
struct HeisAutomorphismT {
  std::array<T, 4> m{T(1), T(0), T(0), T(1)};  // row-major a b / c d
  T wx{};
  T wy{};

  T det() const { return m[0] * m[3] - m[1] * m[2]; }

  static HeisAutomorphismT make(const std::array<T, 4>& matrix, T inner_x = T(0), T inner_y = T(0)) {
    HeisAutomorphismT a{matrix, inner_x, inner_y};
    if (a.det() == T(0)) throw DomainError("automorphism matrix is singular");
    return a;
  }
  static HeisAutomorphismT inner(T inner_x, T inner_y) { return {{T(1), T(0), T(0), T(1)}, inner_x, inner_y}; }
  static HeisAutomorphismT dilation(T s) { return make({s, T(0), T(0), s}); }
};

using HeisAutomorphism = HeisAutomorphismT<double>;
using HeisAutomorphismQ = HeisAutomorphismT<Rational>;

template <class T>
HeisElementT<T> aut_apply(const HeisAutomorphismT<T>& a, const HeisElementT<T>& e) {
  T d = a.det();
  if (d == T(0)) throw DomainError("automorphism matrix is singular");
  T x = a.m[0] * e.x + a.m[1] * e.y;
  T y = a.m[2] * e.x + a.m[3] * e.y;
  T t = d * e.t;
  return {x, y, t + im_mul_conj(a.wx, a.wy, x, y)};
}

/// Semi-direct product law: (w1, M1)(w2, M2) = (w1 + M1 w2, M1 M2); the
/// result applies `second` first.
template <class T>
HeisAutomorphismT<T> aut_compose(const HeisAutomorphismT<T>& first, const HeisAutomorphismT<T>& second) {
  const auto& p = first.m;
  const auto& q = second.m;
  HeisAutomorphismT<T> out;
  out.m = {p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2], p[2] * q[1] + p[3] * q[3]};
  out.wx = first.wx + p[0] * second.wx + p[1] * second.wy;
  out.wy = first.wy + p[2] * second.wx + p[3] * second.wy;
  return out;
}

/// phi_s(z, t) = (s z, s^2 t).
template <class T>
HeisElementT<T> dilate(const T& s, const HeisElementT<T>& e) {
  if (!(s > T(0))) throw DomainError("dilation factor must be positive");
  return {s * e.x, s * e.y, s * s * e.t};
}

}  // namespace chabauty
