#include "chabauty/sphere.hpp"

#include <cmath>

#include "chabauty/errors.hpp"
#include "chabauty/invariants.hpp"

namespace chabauty {

namespace {

constexpr double kPi = 3.14159265358979323846;

// X > 0 with A X^p + B X^q = target (A, B >= 0 not both zero): the left side
// is increasing, so bisect on log X.
double solve_increasing(double A, double p, double B, double q, double target) {
  auto f = [&](double x) { return A * std::pow(x, p) + B * std::pow(x, q) - target; };
  double lo = 1, hi = 1;
  while (f(lo) > 0) lo /= 2;
  while (f(hi) < 0) hi *= 2;
  for (int i = 0; i < 200 && hi - lo > 1e-17 * hi; ++i) {
    double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// lambda > 0 with |g'(lambda u)| = 1 for the cyclic subgroup Z lambda u.
double unit_cyclic_scale() {
  auto [a, b] = extended_g_prime(ClosedSubgroupC::cyclic({1, 0}));
  // |a|^2 Y^4 + |b|^2 Y^6 = 1 with Y = lambda^-2
  double y = solve_increasing(std::norm(a), 2, std::norm(b), 3, 1);
  return 1 / std::sqrt(std::sqrt(y));
}

}  // namespace

SpherePoint sigma(const SpherePoint& x) {
  if (x.infinite) return SpherePoint::finite(0, 0);
  double r2 = std::norm(x.a) + std::norm(x.b);
  if (r2 == 0) return SpherePoint::at_infinity();
  return SpherePoint::finite(x.a / r2, x.b / r2);
}

std::string curve_membership_name(CurveMembership m) {
  switch (m) {
    case CurveMembership::OnKnot: return "on_knot";
    case CurveMembership::OnSigma: return "on_Sigma";
    case CurveMembership::Off: return "off";
  }
  return "?";
}

CurveMembership curve_membership(const SpherePoint& x, double tol) {
  if (x.infinite) return CurveMembership::Off;
  double scale = std::pow(std::abs(x.a), 3) + 27 * std::norm(x.b);
  if (std::abs(discriminant(x.a, x.b)) > tol * scale) return CurveMembership::Off;
  return std::abs(x.radius() - 1) <= tol ? CurveMembership::OnKnot : CurveMembership::OnSigma;
}

SpherePoint orbit_point(Complex a, Complex b, double target) {
  if (std::norm(a) + std::norm(b) == 0) throw DomainError("the origin has no orbit");
  // (X a, X^{3/2} b) with X = s^2
  double x = solve_increasing(std::norm(a), 2, std::norm(b), 3, target * target);
  return SpherePoint::finite(x * a, std::pow(x, 1.5) * b);
}

double radial_factor(double r, double covol) {
  if (r >= 1) return covol;
  double r2 = r * r;
  return r2 * std::min(covol, 1 / (1 - r2));
}

ClosedSubgroupC forward_f(const SpherePoint& x, double tol) {
  if (x.infinite) return ClosedSubgroupC::full();
  double r = x.radius();
  if (r == 0) return ClosedSubgroupC::zero();
  if (r > 1 + 1e-12) return dual(forward_f(sigma(x), tol));
  r = std::min(r, 1.0);
  SpherePoint p1 = orbit_point(x.a, x.b, 1);
  if (curve_membership(p1, tol) == CurveMembership::OnKnot) {
    ClosedSubgroupC g = invert_g(p1.a, p1.b, tol);
    if (g.stratum() != Stratum::Cyclic) throw NumericFailure("knot point did not invert to a cyclic subgroup", 0);
    Complex w = g.as_cyclic().omega;
    if (r >= 1 - 1e-12) return ClosedSubgroupC::line(w);
    return ClosedSubgroupC::cyclic(w / std::sqrt(radial_factor(r, kInfinity)));
  }
  ClosedSubgroupC g = invert_g(p1.a, p1.b, tol);
  double h = radial_factor(r, covolume(g));
  return scale(g, 1 / std::sqrt(h));
}

SpherePoint inverse_f(const ClosedSubgroupC& c, double tol) {
  switch (c.stratum()) {
    case Stratum::Zero: return SpherePoint::finite(0, 0);
    case Stratum::Full: return SpherePoint::at_infinity();
    case Stratum::LineCyclic: return sigma(inverse_f(dual(c), tol));
    case Stratum::Line: {
      Complex u = std::get<ClosedSubgroupC::Line>(c.data()).u;
      auto [a, b] = extended_g_prime(ClosedSubgroupC::cyclic(unit_cyclic_scale() * u));
      return SpherePoint::finite(a, b);
    }
    case Stratum::Cyclic: {
      Complex w = c.as_cyclic().omega;
      double lambda = unit_cyclic_scale();
      auto [a, b] = extended_g_prime(ClosedSubgroupC::cyclic(lambda * w / std::abs(w)));
      double h = lambda * lambda / std::norm(w);
      return orbit_point(a, b, std::sqrt(h / (1 + h)));
    }
    case Stratum::Lattice: {
      double v = covolume(c);
      if (v < 1) return sigma(inverse_f(dual(c), tol));
      auto [g2, g3] = extended_g_prime(c);
      double y = solve_increasing(std::norm(g2), 4, std::norm(g3), 6, 1);  // y = lambda^-2
      double lambda2 = 1 / y;
      Complex a1 = g2 * y * y, b1 = g3 * y * y * y;
      double c1 = lambda2 * v;
      double r2 = 1 / v;
      if (r2 < 1 - 1 / c1) r2 = lambda2 / (1 + lambda2);
      if (r2 >= 1) return SpherePoint::finite(a1, b1);
      return orbit_point(a1, b1, std::sqrt(r2));
    }
  }
  throw DomainError("unknown stratum");
}

std::vector<SpherePoint> trefoil_samples(std::size_t n) {
  // 9 rho^4 + rho^6 = 1 for rho = |w|
  double rho = std::sqrt(solve_increasing(9, 2, 1, 3, 1));
  std::vector<SpherePoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex w = std::polar(rho, 2 * kPi * double(i) / double(n));
    out.push_back(SpherePoint::finite(3.0 * w * w, w * w * w));
  }
  return out;
}

}  // namespace chabauty
