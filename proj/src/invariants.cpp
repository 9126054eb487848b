#include "chabauty/invariants.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "chabauty/errors.hpp"

namespace chabauty {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEps = std::numeric_limits<double>::epsilon();
const Complex kTwoPiI(0, 2 * kPi);

// Prefactors: g2 = c4 w^-4 E4(tau), g3 = c6 w^-6 E6(tau).
const double c4 = 4 * std::pow(kPi, 4) / 3;
const double c6 = 8 * std::pow(kPi, 6) / 27;

double sigma(int k, long n) {
  double s = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    s += std::pow(double(d), k);
    if (d * d != n) s += std::pow(double(n / d), k);
  }
  return s;
}

// sum_{n > N} n^k x^n by a geometric majorant.
double power_tail(int k, long N, double x) {
  double first = std::pow(double(N + 1), k) * std::pow(x, double(N + 1));
  double ratio = std::pow(double(N + 2) / double(N + 1), k) * x;
  if (ratio >= 1) return kInfinity;
  return first / (1 - ratio);
}

struct Kahan {
  Complex sum{0, 0}, comp{0, 0};
  void add(Complex v) {
    Complex y = v - comp;
    Complex t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

LatticeInvariants finish(Complex g2, Complex g3, double err) {
  LatticeInvariants out;
  out.g2 = g2;
  out.g3 = g3;
  out.delta = discriminant(g2, g3);
  out.err = err;
  if (std::abs(out.delta) > 0) {
    out.j = 1728.0 * g2 * g2 * g2 / out.delta;
    out.has_j = true;
  }
  return out;
}

LatticeInvariants by_q_series(const ClosedSubgroupC::Lattice& l, double tol) {
  const Complex w = l.z;
  const Complex tau = l.zp / l.z;
  const Complex q = std::exp(kTwoPiI * tau);
  const double aq = std::abs(q);
  const Complex p4 = c4 / std::pow(w, 4), p6 = c6 / std::pow(w, 6);
  const double m4 = std::abs(p4), m6 = std::abs(p6);

  Kahan s4, s6;
  double abs4 = 0, abs6 = 0, trunc = kInfinity, rounding = 0;
  Complex qn = 1;
  long n = 0;
  for (; n < 100000; ++n) {
    if (n > 0) {
      qn *= q;
      double a = sigma(3, n), b = sigma(5, n);
      s4.add(a * qn);
      s6.add(b * qn);
      abs4 += a * std::abs(qn);
      abs6 += b * std::abs(qn);
    }
    // sigma_3(n) <= zeta(3) n^3, sigma_5(n) <= zeta(5) n^5
    trunc = std::max(m4 * 240 * 1.2021 * power_tail(3, n, aq), m6 * 504 * 1.0370 * power_tail(5, n, aq));
    rounding = 16 * kEps * double(n + 4) * std::max(m4 * (1 + 240 * abs4), m6 * (1 + 504 * abs6));
    if (trunc <= 0.5 * tol || trunc <= 1e-3 * rounding) break;
  }
  double err = trunc + rounding;
  if (err > tol) throw DomainError("tolerance " + std::to_string(tol) + " is below the attainable error " + std::to_string(err));
  Complex e4 = 1.0 + 240.0 * s4.sum, e6 = 1.0 - 504.0 * s6.sum;
  return finish(p4 * e4, p6 * e6, err);
}

// Sum over |z| > R of |z|^-k, for a lattice of covolume v whose fundamental
// parallelogram has circumradius rho.
double shell_tail(int k, double R, double v, double rho) {
  double s = R - 2 * rho;
  if (s <= 0) return kInfinity;
  return 2 * kPi / v * (std::pow(s, 2.0 - k) / (k - 2) + rho * std::pow(s, 1.0 - k) / (k - 1));
}

LatticeInvariants by_shells(const ClosedSubgroupC& c, double tol, std::size_t cap) {
  const auto& l = c.as_lattice();
  const double v = covolume(c);
  const double rho = 0.5 * std::max(std::abs(l.z + l.zp), std::abs(l.z - l.zp));
  auto tail = [&](double R) { return std::max(60 * shell_tail(4, R, v, rho), 140 * shell_tail(6, R, v, rho)); };
  double R = 4 * rho;
  while (tail(R) > 0.5 * tol) {
    R *= 1.25;
    if (kPi * R * R / v > double(cap))
      throw DomainError("tolerance " + std::to_string(tol) + " needs more lattice points than the enumeration cap");
  }
  PlanarSupport pts = enumerate_points(c, R, cap);
  Kahan s4, s6;
  double abs4 = 0, abs6 = 0;
  for (Complex p : pts.points) {
    if (p == Complex(0, 0)) continue;
    Complex p2 = 1.0 / (p * p);
    Complex p4 = p2 * p2;
    s4.add(p4);
    s6.add(p4 * p2);
    abs4 += std::abs(p4);
    abs6 += std::abs(p4 * p2);
  }
  double rounding = 16 * kEps * std::max(60 * abs4, 140 * abs6);
  return finish(60.0 * s4.sum, 140.0 * s6.sum, tail(R) + rounding);
}

}  // namespace

Complex discriminant(Complex a, Complex b) { return a * a * a - 27.0 * b * b; }
Complex discriminant_cubed_variant(Complex a, Complex b) { return a * a * a - 27.0 * b * b * b; }

LatticeInvariants eisenstein(const ClosedSubgroupC& lattice, double tol, EisensteinMethod method, std::size_t cap) {
  if (!lattice.is_lattice()) throw DomainError("eisenstein needs a lattice, got " + stratum_name(lattice.stratum()));
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  if (method == EisensteinMethod::Shells) return by_shells(lattice, tol, cap);
  return by_q_series(lattice.as_lattice(), tol);
}

std::pair<Complex, Complex> extended_g_prime(const ClosedSubgroupC& c) {
  switch (c.stratum()) {
    case Stratum::Zero: return {0, 0};
    case Stratum::Cyclic: {
      Complex w = c.as_cyclic().omega;
      return {c4 / std::pow(w, 4), c6 / std::pow(w, 6)};
    }
    case Stratum::Lattice: {
      Complex w = c.as_lattice().z;
      double scale = c4 / std::pow(std::abs(w), 4) + c6 / std::pow(std::abs(w), 6);
      auto inv = eisenstein(c, 1e-10 * (1 + scale));
      return {inv.g2, inv.g3};
    }
    default: throw DomainError("g' is undefined on stratum " + stratum_name(c.stratum()));
  }
}

EisensteinValues eisenstein_normalized(Complex tau) {
  if (!(tau.imag() > 0)) throw DomainError("tau must lie in the upper half plane");
  const Complex q = std::exp(kTwoPiI * tau);
  const double aq = std::abs(q);
  if (aq > 0.999) throw DomainError("tau too close to the real axis");
  Kahan s2, s4, s6;
  Complex qn = 1;
  for (long n = 1; n < 200000; ++n) {
    qn *= q;
    double b = sigma(5, n);
    s2.add(sigma(1, n) * qn);
    s4.add(sigma(3, n) * qn);
    s6.add(b * qn);
    if (b * std::abs(qn) < 1e-19 && power_tail(5, n, aq) < 1e-19) break;
  }
  return {1.0 - 24.0 * s2.sum, 1.0 + 240.0 * s4.sum, 1.0 - 504.0 * s6.sum};
}

Complex reduce_tau(Complex tau) {
  if (!(tau.imag() > 0)) throw DomainError("tau must lie in the upper half plane");
  for (int i = 0; i < 1000; ++i) {
    tau -= std::floor(tau.real() + 0.5);  // Re in [-1/2, 1/2)
    double n2 = std::norm(tau);
    if (n2 < 1 - 1e-15) {
      tau = -1.0 / tau;
      continue;
    }
    if (n2 <= 1 + 1e-15 && tau.real() > 0) tau = -std::conj(tau);  // |tau| = 1: keep Re <= 0
    return tau;
  }
  throw NumericFailure("tau reduction did not terminate", tau.imag());
}

Complex klein_j(Complex tau) {
  auto e = eisenstein_normalized(reduce_tau(tau));
  Complex e43 = e.e4 * e.e4 * e.e4;
  return 1728.0 * e43 / (e43 - e.e6 * e.e6);
}

namespace {

Complex initial_tau(Complex j) {
  if (std::abs(j) > 1e5) {
    // j = 1/q + 744 + 196884 q + ...: the small root of the quadratic.
    Complex b = 744.0 - j;
    Complex disc = std::sqrt(b * b - 4.0 * 196884.0);
    Complex q1 = (-b + disc) / (2.0 * 196884.0), q2 = (-b - disc) / (2.0 * 196884.0);
    Complex q = std::abs(q1) < std::abs(q2) ? q1 : q2;
    return reduce_tau(std::log(q) / kTwoPiI);
  }
  Complex best(0, 1);
  double best_r = kInfinity;
  for (int ix = 0; ix <= 50; ++ix) {
    for (int iy = 0; iy <= 70; ++iy) {
      Complex tau(-0.5 + 0.02 * ix, std::sqrt(3.0) / 2 + 0.02 * iy);
      if (std::norm(tau) < 1) continue;
      double r = std::abs(klein_j(tau) - j);
      if (r < best_r) {
        best_r = r;
        best = tau;
      }
    }
  }
  return best;
}

Complex newton_on_j(Complex j, Complex tau) {
  for (int it = 0; it < 200; ++it) {
    auto e = eisenstein_normalized(tau);
    Complex e43 = e.e4 * e.e4 * e.e4;
    Complex jt = 1728.0 * e43 / (e43 - e.e6 * e.e6);
    Complex r = jt - j;
    if (std::abs(r) <= 1e-13 * (1 + std::abs(j))) break;
    if (std::abs(e.e4) < 1e-300) break;
    Complex dj = -kTwoPiI * jt * e.e6 / e.e4;
    if (std::abs(dj) == 0) break;
    Complex step = r / dj;
    bool moved = false;
    for (double lambda = 1; lambda > 1e-6; lambda /= 2) {
      Complex cand = tau - lambda * step;
      if (!(cand.imag() > 0.05)) continue;
      if (std::abs(klein_j(cand) - j) < std::abs(r)) {
        tau = cand;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return reduce_tau(tau);
}

struct Residual {
  Complex f1, f2;
  double size(Complex a, Complex b) const { return std::abs(f1) / (1 + std::abs(a)) + std::abs(f2) / (1 + std::abs(b)); }
};

Residual residual(Complex w, Complex tau, Complex a, Complex b) {
  auto e = eisenstein_normalized(tau);
  return {c4 * e.e4 / std::pow(w, 4) - a, c6 * e.e6 / std::pow(w, 6) - b};
}

// Lattice with invariants (a, b), Delta = d != 0; unchecked.
ClosedSubgroupC solve_lattice(Complex a, Complex b, Complex d) {
  const double size = std::sqrt(std::norm(a) + std::norm(b));
  const Complex j = 1728.0 * a * a * a / d;
  Complex tau = newton_on_j(j, initial_tau(j));

  // Scale from a or b, whichever root fits both equations best.
  auto e = eisenstein_normalized(tau);
  std::vector<Complex> cands;
  auto roots = [&cands](Complex value, int k) {
    Complex r = std::pow(value, 1.0 / k);
    for (int i = 0; i < k; ++i) cands.push_back(r * std::polar(1.0, 2 * kPi * i / k));
  };
  if (std::abs(a) > 0 && std::abs(e.e4) > 1e-12) roots(c4 * e.e4 / a, 4);
  if (std::abs(b) > 0 && std::abs(e.e6) > 1e-12) roots(c6 * e.e6 / b, 6);
  if (cands.empty()) throw NumericFailure("no scaling candidate for the lattice", size);
  Complex w = cands.front();
  double best = kInfinity;
  for (Complex c : cands) {
    double r = residual(c, tau, a, b).size(a, b);
    if (r < best) {
      best = r;
      w = c;
    }
  }

  // Newton in (w, tau) on (g2, g3) = (a, b); the Jacobian is 4 pi i Delta-proportional.
  for (int it = 0; it < 60; ++it) {
    auto ev = eisenstein_normalized(tau);
    Residual r{c4 * ev.e4 / std::pow(w, 4) - a, c6 * ev.e6 / std::pow(w, 6) - b};
    double rs = r.size(a, b);
    if (rs <= 4 * kEps) break;
    Complex de4 = kTwoPiI * (ev.e2 * ev.e4 - ev.e6) / 3.0;
    Complex de6 = kTwoPiI * (ev.e2 * ev.e6 - ev.e4 * ev.e4) / 2.0;
    Complex j11 = -4.0 * c4 * ev.e4 / std::pow(w, 5), j12 = c4 * de4 / std::pow(w, 4);
    Complex j21 = -6.0 * c6 * ev.e6 / std::pow(w, 7), j22 = c6 * de6 / std::pow(w, 6);
    Complex det = j11 * j22 - j12 * j21;
    if (std::abs(det) == 0) break;
    Complex dw = (r.f1 * j22 - j12 * r.f2) / det;
    Complex dt = (j11 * r.f2 - j21 * r.f1) / det;
    bool moved = false;
    for (double lambda = 1; lambda > 1e-6; lambda /= 2) {
      Complex w2 = w - lambda * dw, t2 = tau - lambda * dt;
      if (!(t2.imag() > 0.05)) continue;
      if (residual(w2, t2, a, b).size(a, b) < rs) {
        w = w2;
        tau = t2;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return ClosedSubgroupC::lattice(w, w * tau);
}

}  // namespace

ClosedSubgroupC invert_g(Complex a, Complex b, double tol) {
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  const double size = std::sqrt(std::norm(a) + std::norm(b));
  if (size <= tol) return ClosedSubgroupC::zero();

  auto fit = [&](const ClosedSubgroupC& c) {
    auto [ga, gb] = extended_g_prime(c);
    return std::sqrt(std::norm(ga - a) + std::norm(gb - b));
  };
  auto check = [&](const ClosedSubgroupC& c) {
    auto [ga, gb] = extended_g_prime(c);
    double res = std::sqrt(std::norm(ga - a) + std::norm(gb - b));
    if (res > tol * (1 + size)) throw NumericFailure("inversion of (g2, g3) did not converge", res);
    return c;
  };

  const Complex d = discriminant(a, b);
  if (std::abs(d) <= tol * (std::pow(std::abs(a), 3) + 27 * std::norm(b))) {
    if (std::abs(b) == 0) throw NumericFailure("point on a^3 = 27 b^2 with b = 0 away from the origin", std::abs(a));
    Complex w = std::sqrt(2 * kPi * kPi / 9 * a / b);
    auto cyc = ClosedSubgroupC::cyclic(w);
    // Near-degenerate lattices also sit within tol of the curve; keep the better fit.
    if (std::abs(d) > 0 && fit(cyc) > 1e-12 * (1 + size)) {
      try {
        auto lat = solve_lattice(a, b, d);
        if (fit(lat) < 1e-3 * fit(cyc)) return check(lat);
      } catch (const Error&) {
      }
    }
    return check(cyc);
  }

  return check(solve_lattice(a, b, d));
}

}  // namespace chabauty
