#pragma once

// The homeomorphism f : C^2 u {inf} = S^4 -> C(C).
//
// On the closed unit ball f rescales gamma = (g')^-1 along the weighted
// orbits (a, b) -> (s^2 a, s^3 b); outside it is the dual of f o sigma.
// The radial factor used here is
//   h(a, b) = r^2 min(covol(gamma(a1, b1)), 1 / (1 - r^2)),   r = |(a, b)|,
// where (a1, b1) is the point of the orbit on S^3.

#include <string>
#include <vector>

#include "chabauty/subgroups.hpp"

namespace chabauty {

struct SpherePoint {
  bool infinite = false;
  Complex a;
  Complex b;

  static SpherePoint at_infinity() { return {true, {}, {}}; }
  static SpherePoint finite(Complex a, Complex b) { return {false, a, b}; }
  double radius() const { return std::sqrt(std::norm(a) + std::norm(b)); }
};

SpherePoint sigma(const SpherePoint& x);

enum class CurveMembership { OnKnot, OnSigma, Off };
std::string curve_membership_name(CurveMembership m);

/// On Sigma iff |a^3 - 27 b^2| <= tol (|a|^3 + 27 |b|^2); on the knot if
/// moreover | |(a,b)| - 1 | <= tol.
CurveMembership curve_membership(const SpherePoint& x, double tol = 1e-9);

/// The point of the orbit {(s^2 a, s^3 b) : s > 0} at radius `target`.
SpherePoint orbit_point(Complex a, Complex b, double target);

/// The radial factor above; `covol` may be +inf (knot orbits).
double radial_factor(double r, double covol);

ClosedSubgroupC forward_f(const SpherePoint& x, double tol = 1e-9);
SpherePoint inverse_f(const ClosedSubgroupC& c, double tol = 1e-9);

/// n points of Sigma n S^3, parametrized by (3 w^2, w^3) with |w| fixed.
std::vector<SpherePoint> trefoil_samples(std::size_t n);

}  // namespace chabauty
