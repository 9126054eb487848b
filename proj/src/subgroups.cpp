#include "chabauty/subgroups.hpp"

#include <algorithm>
#include <cmath>

namespace chabauty {

namespace {

double norm2(Complex z) { return std::norm(z); }

/// Im(conj(a) b): the oriented area spanned by a and b.
double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }
double dot(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }

bool in_upper_half(Complex w) { return w.imag() > 0 || (w.imag() == 0 && w.real() > 0); }

Complex canonical_sign(Complex w) { return in_upper_half(w) ? w : -w; }

/// Argument folded into [0, pi).
double half_turn_arg(Complex w) {
  double a = std::arg(canonical_sign(w));
  return a < 0 ? 0.0 : a;
}

void check_finite(Complex w, const char* what) {
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) throw DomainError(std::string(what) + " is not finite");
}

/// Extended Euclid on small integers: returns (c, d) with a d - b c = 1.
std::pair<long long, long long> complete_unimodular(long long a, long long b) {
  long long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    long long q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
  }
  // old_s a + old_t b = old_r = +-1
  if (old_r < 0) {
    old_s = -old_s;
    old_t = -old_t;
  }
  // a d - b c = 1 with d = old_s, c = -old_t
  return {-old_t, old_s};
}

}  // namespace

// ---------------------------------------------------------------- R

ClosedSubgroupR ClosedSubgroupR::cyclic(double step) {
  if (!(std::isfinite(step) && step != 0)) throw DomainError("cyclic subgroup of R needs a finite nonzero step");
  return ClosedSubgroupR(Kind::Cyclic, std::abs(step));
}

ClosedSubgroupR ClosedSubgroupR::from_parameter(double p) {
  if (!(p >= 0)) throw DomainError("parameter of C(R) must lie in [0, inf]");
  if (p == 0) return trivial();
  if (std::isinf(p)) return full();
  return cyclic(1.0 / p);
}

double ClosedSubgroupR::parameter() const {
  switch (kind_) {
    case Kind::Trivial: return 0.0;
    case Kind::Cyclic: return 1.0 / step_;
    case Kind::Full: return kInfinity;
  }
  return 0.0;
}

double ClosedSubgroupR::dist(double x) const {
  switch (kind_) {
    case Kind::Trivial: return std::abs(x);
    case Kind::Cyclic: return std::abs(x - std::round(x / step_) * step_);
    case Kind::Full: return 0.0;
  }
  return 0.0;
}

std::string kind_name(ClosedSubgroupR::Kind k) {
  switch (k) {
    case ClosedSubgroupR::Kind::Trivial: return "trivial";
    case ClosedSubgroupR::Kind::Cyclic: return "cyclic";
    case ClosedSubgroupR::Kind::Full: return "full";
  }
  return "?";
}

// ---------------------------------------------------------------- C

std::string stratum_name(Stratum s) {
  switch (s) {
    case Stratum::Zero: return "zero";
    case Stratum::Cyclic: return "cyclic";
    case Stratum::Line: return "line";
    case Stratum::LineCyclic: return "line-cyclic";
    case Stratum::Lattice: return "lattice";
    case Stratum::Full: return "full";
  }
  return "?";
}

Stratum parse_stratum_name(const std::string& name) {
  for (auto s : {Stratum::Zero, Stratum::Cyclic, Stratum::Line, Stratum::LineCyclic, Stratum::Lattice, Stratum::Full})
    if (stratum_name(s) == name) return s;
  throw ParseError("unknown stratum '" + name + "'");
}

ClosedSubgroupC ClosedSubgroupC::cyclic(Complex omega) {
  check_finite(omega, "cyclic generator");
  if (omega == Complex(0, 0)) throw DomainError("cyclic generator must be nonzero");
  return ClosedSubgroupC(Cyclic{canonical_sign(omega)});
}

ClosedSubgroupC ClosedSubgroupC::line(Complex direction) {
  check_finite(direction, "line direction");
  double r = std::abs(direction);
  if (r == 0) throw DomainError("line direction must be nonzero");
  return ClosedSubgroupC(Line{canonical_sign(direction / r)});
}

ClosedSubgroupC ClosedSubgroupC::line_cyclic(Complex direction, Complex v) {
  check_finite(direction, "line direction");
  check_finite(v, "transverse generator");
  double r = std::abs(direction);
  if (r == 0) throw DomainError("line direction must be nonzero");
  Complex u = canonical_sign(direction / r);
  double h = std::abs(cross(u, v));
  if (!(h > 1e-15 * std::abs(v)) || h == 0) throw DomainError("transverse generator lies on the line");
  return ClosedSubgroupC(LineCyclic{u, Complex(0, h) * u});
}

ClosedSubgroupC ClosedSubgroupC::lattice(Complex z, Complex zp) {
  check_finite(z, "lattice vector");
  check_finite(zp, "lattice vector");
  auto [a, b] = reduce_basis(z, zp);
  return ClosedSubgroupC(Lattice{a, b});
}

bool ClosedSubgroupC::is_discrete() const {
  auto s = stratum();
  return s == Stratum::Zero || s == Stratum::Cyclic || s == Stratum::Lattice;
}

const ClosedSubgroupC::Lattice& ClosedSubgroupC::as_lattice() const {
  if (auto* l = std::get_if<Lattice>(&data_)) return *l;
  throw DomainError("expected a lattice, got stratum " + stratum_name(stratum()));
}

const ClosedSubgroupC::Cyclic& ClosedSubgroupC::as_cyclic() const {
  if (auto* c = std::get_if<Cyclic>(&data_)) return *c;
  throw DomainError("expected a cyclic subgroup, got stratum " + stratum_name(stratum()));
}

ReducedBasis reduce_basis_tracked(Complex z, Complex zp) {
  double scale = std::abs(z) * std::abs(zp);
  if (!(std::abs(cross(z, zp)) > 1e-14 * scale)) throw DomainError("degenerate (collinear) lattice basis");
  std::array<long long, 4> t{1, 0, 0, 1};
  auto swap_rows = [&] {
    std::swap(z, zp);
    std::swap(t[0], t[2]);
    std::swap(t[1], t[3]);
  };
  if (norm2(zp) < norm2(z)) swap_rows();
  for (int iter = 0; iter < 10'000; ++iter) {
    double mu = std::round(dot(z, zp) / norm2(z));
    if (mu != 0) {
      auto m = static_cast<long long>(mu);
      zp -= mu * z;
      t[2] -= m * t[0];
      t[3] -= m * t[1];
    }
    if (norm2(zp) < norm2(z) * (1 - 1e-14)) {
      swap_rows();
      continue;
    }
    break;
  }
  if (cross(z, zp) < 0) {
    zp = -zp;
    t[2] = -t[2];
    t[3] = -t[3];
  }

  // Choose the first vector among all shortest ones: least argument in [0, pi).
  const double shortest = norm2(z) * (1 + 1e-12);
  struct Candidate {
    Complex v;
    long long a, b;
  };
  Candidate best{z, 1, 0};
  double best_arg = 10;
  constexpr std::array<std::pair<long long, long long>, 4> kShortCombos{{{1, 0}, {0, 1}, {-1, 1}, {1, 1}}};
  for (auto [a, b] : kShortCombos) {
    Complex v = double(a) * z + double(b) * zp;
    if (norm2(v) > shortest) continue;
    if (!in_upper_half(v)) {
      v = -v;
      a = -a;
      b = -b;
    }
    double arg = half_turn_arg(v);
    if (arg < best_arg - 1e-13) {
      best_arg = arg;
      best = {v, a, b};
    }
  }
  auto [c, d] = complete_unimodular(best.a, best.b);
  Complex first = best.v;
  Complex partner = double(c) * z + double(d) * zp;
  double mu = std::round(dot(first, partner) / norm2(first));
  partner -= mu * first;
  c -= static_cast<long long>(mu) * best.a;
  d -= static_cast<long long>(mu) * best.b;
  double re = dot(first, partner);
  if (re < 0 && std::abs(re + 0.5 * norm2(first)) <= 1e-12 * norm2(first)) {
    partner += first;
    c += best.a;
    d += best.b;
  }
  std::array<long long, 4> out{best.a * t[0] + best.b * t[2], best.a * t[1] + best.b * t[3], c * t[0] + d * t[2],
                               c * t[1] + d * t[3]};
  return {first, partner, out};
}

std::pair<Complex, Complex> reduce_basis(Complex z, Complex zp) {
  auto r = reduce_basis_tracked(z, zp);
  return {r.z, r.zp};
}

double covolume(const ClosedSubgroupC& c) {
  switch (c.stratum()) {
    case Stratum::Zero:
    case Stratum::Cyclic: return kInfinity;
    case Stratum::Lattice: {
      const auto& l = c.as_lattice();
      return cross(l.z, l.zp);
    }
    default: return 0.0;
  }
}

double min_norm(const ClosedSubgroupC& c) {
  switch (c.stratum()) {
    case Stratum::Cyclic: return norm2(c.as_cyclic().omega);
    case Stratum::Lattice: return norm2(c.as_lattice().z);
    default: throw DomainError("min_norm is undefined on stratum " + stratum_name(c.stratum()));
  }
}

ClosedSubgroupC dual(const ClosedSubgroupC& c) {
  return std::visit(
      [](const auto& d) -> ClosedSubgroupC {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ClosedSubgroupC::Zero>) {
          return ClosedSubgroupC::full();
        } else if constexpr (std::is_same_v<T, ClosedSubgroupC::Full>) {
          return ClosedSubgroupC::zero();
        } else if constexpr (std::is_same_v<T, ClosedSubgroupC::Line>) {
          return ClosedSubgroupC::line(d.u);
        } else if constexpr (std::is_same_v<T, ClosedSubgroupC::Cyclic>) {
          return ClosedSubgroupC::line_cyclic(d.omega, Complex(0, 1) * d.omega / norm2(d.omega));
        } else if constexpr (std::is_same_v<T, ClosedSubgroupC::LineCyclic>) {
          return ClosedSubgroupC::cyclic(d.u / std::abs(d.v));
        } else {
          double v = cross(d.z, d.zp);
          return ClosedSubgroupC::lattice(d.z / v, d.zp / v);
        }
      },
      c.data());
}

Complex nearest_point(const ClosedSubgroupC& c, Complex x) {
  return std::visit(
      [x](const auto& d) -> Complex {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ClosedSubgroupC::Zero>) {
          return {0, 0};
        } else if constexpr (std::is_same_v<T, ClosedSubgroupC::Full>) {
          return x;
        } else if constexpr (std::is_same_v<T, ClosedSubgroupC::Line>) {
          return dot(d.u, x) * d.u;
        } else if constexpr (std::is_same_v<T, ClosedSubgroupC::Cyclic>) {
          return std::round(dot(d.omega, x) / norm2(d.omega)) * d.omega;
        } else if constexpr (std::is_same_v<T, ClosedSubgroupC::LineCyclic>) {
          double h = std::abs(d.v);
          Complex iu = d.v / h;
          double height = dot(iu, x);
          return dot(d.u, x) * d.u + std::round(height / h) * d.v;
        } else {
          // Babai rounding, then descent along the Voronoi-relevant vectors
          // of a reduced basis until no neighbour is closer.
          double v = cross(d.z, d.zp);
          double alpha = cross(x, d.zp) / v;
          double beta = cross(d.z, x) / v;
          Complex p = std::round(alpha) * d.z + std::round(beta) * d.zp;
          const std::array<Complex, 8> relevant{d.z, -d.z, d.zp, -d.zp, d.z + d.zp, -d.z - d.zp, d.z - d.zp, d.zp - d.z};
          double best = norm2(x - p);
          for (bool improved = true; improved;) {
            improved = false;
            for (Complex r : relevant) {
              double cand = norm2(x - p - r);
              if (cand < best) {
                best = cand;
                p += r;
                improved = true;
              }
            }
          }
          return p;
        }
      },
      c.data());
}

double dist_point(const ClosedSubgroupC& c, Complex x) {
  if (c.stratum() == Stratum::Full) return 0.0;
  if (c.stratum() == Stratum::Line) return std::abs(cross(std::get<ClosedSubgroupC::Line>(c.data()).u, x));
  if (c.stratum() == Stratum::LineCyclic) {
    const auto& d = std::get<ClosedSubgroupC::LineCyclic>(c.data());
    double h = std::abs(d.v);
    double height = cross(d.u, x);
    return std::abs(height - std::round(height / h) * h);
  }
  return std::abs(x - nearest_point(c, x));
}

bool contains(const ClosedSubgroupC& c, Complex x, double tol) { return dist_point(c, x) <= tol; }

bool approx_equal(const ClosedSubgroupC& a, const ClosedSubgroupC& b, double tol) {
  if (a.stratum() != b.stratum()) return false;
  auto same_up_to_sign = [tol](Complex p, Complex q) { return std::abs(p - q) <= tol || std::abs(p + q) <= tol; };
  switch (a.stratum()) {
    case Stratum::Zero:
    case Stratum::Full: return true;
    case Stratum::Cyclic: return same_up_to_sign(a.as_cyclic().omega, b.as_cyclic().omega);
    case Stratum::Line:
      return same_up_to_sign(std::get<ClosedSubgroupC::Line>(a.data()).u, std::get<ClosedSubgroupC::Line>(b.data()).u);
    case Stratum::LineCyclic: {
      const auto& p = std::get<ClosedSubgroupC::LineCyclic>(a.data());
      const auto& q = std::get<ClosedSubgroupC::LineCyclic>(b.data());
      return same_up_to_sign(p.u, q.u) && std::abs(std::abs(p.v) - std::abs(q.v)) <= tol;
    }
    case Stratum::Lattice: {
      const auto& p = a.as_lattice();
      const auto& q = b.as_lattice();
      return contains(b, p.z, tol) && contains(b, p.zp, tol) && contains(a, q.z, tol) && contains(a, q.zp, tol);
    }
  }
  return false;
}

ClosedSubgroupC linear_image(const ClosedSubgroupC& c, const std::array<double, 4>& m) {
  if (m[0] * m[3] - m[1] * m[2] == 0) throw DomainError("linear map is singular");
  auto apply = [&m](Complex w) {
    return Complex(m[0] * w.real() + m[1] * w.imag(), m[2] * w.real() + m[3] * w.imag());
  };
  return std::visit(
      [&apply](const auto& d) -> ClosedSubgroupC {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ClosedSubgroupC::Zero>) {
          return ClosedSubgroupC::zero();
        } else if constexpr (std::is_same_v<T, ClosedSubgroupC::Full>) {
          return ClosedSubgroupC::full();
        } else if constexpr (std::is_same_v<T, ClosedSubgroupC::Line>) {
          return ClosedSubgroupC::line(apply(d.u));
        } else if constexpr (std::is_same_v<T, ClosedSubgroupC::Cyclic>) {
          return ClosedSubgroupC::cyclic(apply(d.omega));
        } else if constexpr (std::is_same_v<T, ClosedSubgroupC::LineCyclic>) {
          return ClosedSubgroupC::line_cyclic(apply(d.u), apply(d.v));
        } else {
          return ClosedSubgroupC::lattice(apply(d.z), apply(d.zp));
        }
      },
      c.data());
}

ClosedSubgroupC scale(const ClosedSubgroupC& c, Complex lambda) {
  if (lambda == Complex(0, 0)) throw DomainError("scale factor must be nonzero");
  return linear_image(c, {lambda.real(), -lambda.imag(), lambda.imag(), lambda.real()});
}

bool clip_line(Complex offset, Complex u, double radius, PlanarSegment& out) {
  Complex foot = offset - dot(u, offset) * u;
  double rest = radius * radius - norm2(foot);
  if (rest < 0) return false;
  out = {foot, u, std::sqrt(rest)};
  return true;
}

PlanarSupport enumerate_points(const ClosedSubgroupC& c, double radius, std::size_t cap) {
  if (!(radius > 0)) throw DomainError("enumeration radius must be positive");
  PlanarSupport out;
  out.radius = radius;
  auto overflow = [&](double expected) {
    if (expected > static_cast<double>(cap))
      throw EnumerationOverflow("enumeration of " + stratum_name(c.stratum()) + " within radius " +
                                std::to_string(radius) + " exceeds the cap of " + std::to_string(cap));
  };
  const double r2 = radius * radius * (1 + 1e-12);
  switch (c.stratum()) {
    case Stratum::Zero: out.points.push_back({0, 0}); break;
    case Stratum::Full: out.whole_disc = true; break;
    case Stratum::Cyclic: {
      Complex w = c.as_cyclic().omega;
      double kmax = std::floor(radius / std::abs(w) * (1 + 1e-12));
      overflow(2 * kmax + 1);
      for (auto k = static_cast<long long>(-kmax); k <= static_cast<long long>(kmax); ++k) out.points.push_back(double(k) * w);
      break;
    }
    case Stratum::Line: {
      out.segments.push_back({{0, 0}, std::get<ClosedSubgroupC::Line>(c.data()).u, radius});
      break;
    }
    case Stratum::LineCyclic: {
      const auto& d = std::get<ClosedSubgroupC::LineCyclic>(c.data());
      double h = std::abs(d.v);
      double jmax = std::floor(radius / h * (1 + 1e-12));
      overflow(2 * jmax + 1);
      for (auto j = static_cast<long long>(-jmax); j <= static_cast<long long>(jmax); ++j) {
        PlanarSegment seg;
        if (clip_line(double(j) * d.v, d.u, radius, seg)) out.segments.push_back(seg);
      }
      break;
    }
    case Stratum::Lattice: {
      const auto& l = c.as_lattice();
      double v = cross(l.z, l.zp);
      double zl = std::abs(l.z);
      overflow(M_PI * radius * radius / v + 4 * radius * (zl + std::abs(l.zp)) / v + 1);
      double bmax = std::floor(radius * zl / v * (1 + 1e-12));
      double shift = dot(l.z, l.zp) / norm2(l.z);
      for (auto b = static_cast<long long>(-bmax); b <= static_cast<long long>(bmax); ++b) {
        double rest = radius * radius - double(b) * double(b) * v * v / norm2(l.z);
        double width = std::sqrt(std::max(0.0, rest)) / zl;
        double center = -double(b) * shift;
        auto lo = static_cast<long long>(std::floor(center - width)) - 1;
        auto hi = static_cast<long long>(std::ceil(center + width)) + 1;
        for (long long a = lo; a <= hi; ++a) {
          Complex p = double(a) * l.z + double(b) * l.zp;
          if (norm2(p) <= r2) out.points.push_back(p);
        }
      }
      if (out.points.size() > cap) overflow(static_cast<double>(out.points.size()));
      break;
    }
  }
  return out;
}

}  // namespace chabauty
