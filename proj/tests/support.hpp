#pragma once

// Independent oracles and random generators for the tests. Nothing here
// calls the library's enumeration, reduction or distance code.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "chabauty/heisenberg.hpp"
#include "chabauty/subgroups.hpp"

namespace testing {

using chabauty::Complex;
using chabauty::Rational;
constexpr double kPi = 3.14159265358979323846;

// zeta(s), s >= 2, by direct summation with an Euler-Maclaurin tail.
inline double zeta(int s) {
  const long N = 2000;
  long double sum = 0;
  for (long n = N; n >= 1; --n) sum += 1.0L / std::pow((long double)n, s);
  long double x = N;
  sum += std::pow(x, 1 - s) / (s - 1) - 0.5L * std::pow(x, -s) + s / 12.0L * std::pow(x, -s - 1) -
         s * (s + 1) * (s + 2) / 720.0L * std::pow(x, -s - 3);
  return double(sum);
}

// min |a z + b zp|^2 over a box of integer coefficients
inline double brute_min_norm2(Complex z, Complex zp, int box) {
  double best = INFINITY;
  for (int a = -box; a <= box; ++a)
    for (int b = -box; b <= box; ++b)
      if (a || b) best = std::min(best, std::norm(double(a) * z + double(b) * zp));
  return best;
}

inline double brute_dist(Complex z, Complex zp, Complex x, int box) {
  double best = INFINITY;
  for (int a = -box; a <= box; ++a)
    for (int b = -box; b <= box; ++b) best = std::min(best, std::abs(x - double(a) * z - double(b) * zp));
  return best;
}

inline bool brute_member(Complex z, Complex zp, Complex x, int box, double tol) {
  return brute_dist(z, zp, x, box) <= tol;
}

// Points of the lattice spanned by z, zp with |p| <= r, by an integer box.
inline std::vector<Complex> brute_points(Complex z, Complex zp, double r, int box) {
  std::vector<Complex> out;
  for (int a = -box; a <= box; ++a)
    for (int b = -box; b <= box; ++b) {
      Complex p = double(a) * z + double(b) * zp;
      if (std::abs(p) <= r) out.push_back(p);
    }
  return out;
}

// Halo condition between two lattices at eps, straight from the definition:
// points of norm <= 1/eps - eps must lie within eps of the other set.
inline bool brute_halo(Complex z1, Complex zp1, Complex z2, Complex zp2, double eps, int box) {
  double r = 1 / eps - eps;
  for (Complex p : brute_points(z1, zp1, r, box))
    if (brute_dist(z2, zp2, p, box) >= eps) return false;
  for (Complex p : brute_points(z2, zp2, r, box))
    if (brute_dist(z1, zp1, p, box) >= eps) return false;
  return true;
}

// ------------------------------------------------------------ Heisenberg

using QElem = std::tuple<Rational, Rational, Rational>;

inline QElem qmul(const QElem& a, const QElem& b) {
  auto [x1, y1, t1] = a;
  auto [x2, y2, t2] = b;
  // (z1 + z2, t1 + t2 + Im(z1 conj z2) / 2)
  return {x1 + x2, y1 + y2, t1 + t2 + (y1 * x2 - x1 * y2) / 2};
}

inline QElem qinv(const QElem& a) {
  auto [x, y, t] = a;
  return {-x, -y, -t};
}

// Breadth-first closure of <gens> restricted to |x|, |y|, |t| <= box. The
// walk is allowed to leave the box by `slack` so that words passing outside
// still reach points inside.
inline std::set<QElem> bfs_generate(const std::vector<QElem>& gens, const Rational& box, const Rational& slack) {
  std::vector<QElem> moves;
  for (const auto& g : gens) {
    moves.push_back(g);
    moves.push_back(qinv(g));
  }
  auto inside = [](const QElem& e, const Rational& b) {
    auto [x, y, t] = e;
    return abs(x) <= b && abs(y) <= b && abs(t) <= b;
  };
  std::set<QElem> seen{{0, 0, 0}};
  std::vector<QElem> frontier{{0, 0, 0}};
  Rational outer = box + slack;
  while (!frontier.empty()) {
    std::vector<QElem> next;
    for (const auto& e : frontier)
      for (const auto& m : moves) {
        QElem f = qmul(e, m);
        if (inside(f, outer) && seen.insert(f).second) next.push_back(f);
      }
    frontier.swap(next);
  }
  std::set<QElem> out;
  for (const auto& e : seen)
    if (inside(e, box)) out.insert(e);
  return out;
}

// ------------------------------------------------------------ random data

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(unsigned long long seed) : gen(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
  long long integer(long long a, long long b) { return std::uniform_int_distribution<long long>(a, b)(gen); }
  Complex complex_in(double r) { return {uniform(-r, r), uniform(-r, r)}; }
  Complex unit() { return std::polar(1.0, uniform(0, 2 * kPi)); }
  Rational rational(long long num_range, long long den_max) {
    return Rational(integer(-num_range, num_range)) / Rational(integer(1, den_max));
  }
};

// Well-conditioned random lattice: tau in the fundamental domain with
// Im tau <= im_max, random scale and rotation.
inline chabauty::ClosedSubgroupC random_lattice(Rng& r, double im_max = 2.0) {
  Complex tau;
  do {
    tau = {r.uniform(-0.5, 0.5), r.uniform(0.87, im_max)};
  } while (std::abs(tau) < 1);
  Complex w = std::polar(r.uniform(0.5, 2.0), r.uniform(0, 2 * kPi));
  return chabauty::ClosedSubgroupC::lattice(w, w * tau);
}

inline chabauty::ClosedSubgroupC random_subgroup(Rng& r, chabauty::Stratum s) {
  using chabauty::ClosedSubgroupC;
  switch (s) {
    case chabauty::Stratum::Zero: return ClosedSubgroupC::zero();
    case chabauty::Stratum::Full: return ClosedSubgroupC::full();
    case chabauty::Stratum::Cyclic: return ClosedSubgroupC::cyclic(std::polar(r.uniform(0.3, 3), r.uniform(0, 2 * kPi)));
    case chabauty::Stratum::Line: return ClosedSubgroupC::line(r.unit());
    case chabauty::Stratum::LineCyclic: {
      Complex u = r.unit();
      return ClosedSubgroupC::line_cyclic(u, r.uniform(-2, 2) * u + r.uniform(0.3, 3) * Complex(0, 1) * u);
    }
    case chabauty::Stratum::Lattice: return random_lattice(r);
  }
  return ClosedSubgroupC::zero();
}

inline const std::vector<chabauty::Stratum>& all_strata() {
  using chabauty::Stratum;
  static const std::vector<Stratum> v{Stratum::Zero, Stratum::Cyclic, Stratum::Line,
                                      Stratum::LineCyclic, Stratum::Lattice, Stratum::Full};
  return v;
}

}  // namespace testing
