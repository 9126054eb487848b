#include "chabauty/metric.hpp"

#include <algorithm>
#include <cmath>

#include "chabauty/errors.hpp"

namespace chabauty {

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

void MetricConfig::validate() const {
  if (!(tol > 0)) throw DomainError("metric tolerance must be positive");
  if (!(eps_min > 0) || !(eps_min < eps_max)) throw DomainError("need 0 < eps_min < eps_max");
  if (!(resolution > 0) || !(resolution < tol)) throw DomainError("need 0 < resolution < tol");
}

namespace {

Vec3 affine(const Primitive& p, double s, double r, double q) {
  if (p.kind == Primitive::Kind::Ball) return {s, r, q};
  Vec3 out = p.center;
  for (int i = 0; i < 3; ++i) out[i] += s * p.e1[i] + r * p.e2[i];
  return out;
}

struct Cell {
  std::array<double, 3> c;
  double half;
};

}  // namespace

std::optional<Violation> find_violation(const Primitive& piece, double radius,
                                        const std::function<double(const Vec3&)>& f, double threshold,
                                        double lipschitz, double resolution, std::size_t& work,
                                        std::size_t budget) {
  auto eval = [&](const Vec3& x) {
    if (++work > budget) throw EnumerationOverflow("metric evaluation budget exhausted");
    return f(x);
  };
  const double slack = radius * (1 + 1e-12) + 1e-12;

  if (piece.kind == Primitive::Kind::Point) {
    if (norm(piece.center) > slack) return std::nullopt;
    double v = eval(piece.center);
    if (v >= threshold) return Violation{piece.center, v};
    return std::nullopt;
  }

  if (piece.kind == Primitive::Kind::Segment) {
    // Each sample certifies an interval of half-width (threshold - f) / L.
    const double h = piece.extent;
    for (double s = -h;;) {
      Vec3 x = affine(piece, s, 0, 0);
      double v = eval(x);
      double gap = threshold - v;
      if (gap <= resolution && norm(x) <= slack) return Violation{x, v};
      if (s >= h) break;
      s = std::min(h, s + std::max(gap, resolution) / lipschitz);
    }
    return std::nullopt;
  }

  const int dim = piece.kind == Primitive::Kind::Disc ? 2 : 3;
  const double rho = piece.extent;
  const double diag = std::sqrt(double(dim));

  std::vector<Cell> stack{{{0, 0, 0}, rho}};
  while (!stack.empty()) {
    Cell cell = stack.back();
    stack.pop_back();
    const double cell_radius = cell.half * diag;
    double pr = std::sqrt(cell.c[0] * cell.c[0] + cell.c[1] * cell.c[1] + cell.c[2] * cell.c[2]);
    if (pr - cell_radius > rho) continue;  // misses the domain

    // Evaluation point inside the domain; the bound doubles when projected.
    std::array<double, 3> q = cell.c;
    double reach = cell_radius;
    if (pr > rho) {
      for (auto& v : q) v *= rho / pr;
      reach = 2 * cell_radius;
    }
    Vec3 x = affine(piece, q[0], q[1], q[2]);
    double nx = norm(x);
    if (nx - reach > slack) continue;  // whole cell outside the ball
    double v = eval(x);
    bool inside = nx <= slack;
    if (inside && v >= threshold) return Violation{x, v};
    if (v + lipschitz * reach < threshold) continue;
    if (lipschitz * reach <= resolution && inside) return Violation{x, v};
    if (cell.half < 1e-13 * std::max(1.0, rho)) continue;  // boundary sliver outside the ball

    double h = cell.half / 2;
    for (int mask = 0; mask < (1 << dim); ++mask) {
      Cell child{cell.c, h};
      for (int i = 0; i < dim; ++i) child.c[i] += (mask >> i & 1) ? h : -h;
      stack.push_back(child);
    }
  }
  return std::nullopt;
}

namespace {

std::optional<Violation> one_side(const SetView& from, const SetView& to, double radius, double threshold,
                                  const MetricConfig& cfg, std::size_t& work) {
  if (to.is_everything() || !(radius > 0)) return std::nullopt;
  auto f = [&to](const Vec3& x) { return to.dist(x); };
  for (const auto& piece : from.support(radius, cfg.cap)) {
    if (piece.kind != Primitive::Kind::Point && to.covers(piece)) continue;
    if (auto v = find_violation(piece, radius, f, threshold, 1.0, cfg.resolution, work, cfg.work_budget)) return v;
  }
  return std::nullopt;
}

}  // namespace

HaloResult halo_check(const SetView& lhs, const SetView& rhs, double eps, const MetricConfig& cfg) {
  if (!(eps > 0)) throw DomainError("halo predicate needs eps > 0");
  HaloResult out;
  const double r = 1 / eps - eps;
  if (r < 0) return out;
  std::size_t work = 0;
  if (auto v = one_side(lhs, rhs, r, eps, cfg, work)) {
    out = {false, v, 1};
  } else if (auto w = one_side(rhs, lhs, r, eps, cfg, work)) {
    out = {false, w, 2};
  }
  return out;
}

DistanceResult chabauty_distance(const SetView& lhs, const SetView& rhs, const MetricConfig& cfg) {
  cfg.validate();
  DistanceResult out;
  if (lhs.same_set(rhs)) {
    out.lower = 0;
    return out;
  }
  double lo = cfg.eps_min, hi = cfg.eps_max;
  bool top = halo_predicate(lhs, rhs, hi, cfg);
  out.trace.emplace_back(hi, top);
  if (!top) throw NumericFailure("halo predicate false at eps_max = " + std::to_string(hi), hi);
  while (hi - lo > cfg.tol - cfg.resolution) {
    double mid = 0.5 * (lo + hi);
    bool ok = halo_predicate(lhs, rhs, mid, cfg);
    out.trace.emplace_back(mid, ok);
    (ok ? hi : lo) = mid;
  }
  // Every true sample must sit above every false one.
  double max_false = 0, min_true = kInfinity;
  for (auto [e, ok] : out.trace) {
    if (ok)
      min_true = std::min(min_true, e);
    else
      max_false = std::max(max_false, e);
  }
  if (max_false >= min_true) throw NumericFailure("halo predicate not monotone on the bisection trace", max_false - min_true);
  out.distance = hi;
  out.lower = lo;
  return out;
}

LimitReport limit_verdict(const std::vector<FamilyMember>& seq, const SetView& limit, const LimitConfig& cfg) {
  if (!(cfg.radius > 0) || !(cfg.delta > 0)) throw DomainError("limit check needs R > 0 and delta > 0");
  LimitReport out;
  std::size_t work = 0;
  const auto limit_support = limit.support(cfg.radius, cfg.cap);
  auto limit_dist = [&limit](const Vec3& x) { return limit.dist(x); };
  for (const auto& m : seq) {
    if (m.index < cfg.horizon) continue;
    out.checked.push_back(m.index);
    const SetView& fk = *m.set;
    if (!fk.is_everything()) {
      auto f = [&fk](const Vec3& x) { return fk.dist(x); };
      for (const auto& piece : limit_support) {
        if (piece.kind != Primitive::Kind::Point && fk.covers(piece)) continue;
        if (auto v = find_violation(piece, cfg.radius, f, cfg.delta, 1.0, cfg.resolution, work, cfg.work_budget)) {
          out.witnesses.push_back({m.index, 'a', v->point, v->value});
          break;
        }
      }
    }
    const double inner = cfg.radius - cfg.delta;
    if (!limit.is_everything() && inner > 0) {
      for (const auto& piece : fk.support(inner, cfg.cap)) {
        if (piece.kind != Primitive::Kind::Point && limit.covers(piece)) continue;
        if (auto v = find_violation(piece, inner, limit_dist, cfg.delta, 1.0, cfg.resolution, work, cfg.work_budget)) {
          out.witnesses.push_back({m.index, 'b', v->point, v->value});
          break;
        }
      }
    }
  }
  out.pass = out.witnesses.empty();
  return out;
}

NeighborhoodResult neighborhood_check(const SetView& c, const SetView& d, double k_radius, double u_radius,
                                      std::size_t cap, double resolution) {
  if (!(k_radius > 0) || !(u_radius > 0)) throw DomainError("neighbourhood radii must be positive");
  NeighborhoodResult out;
  std::size_t work = 0;
  const std::size_t budget = 200'000'000;
  auto side = [&](const SetView& from, const SetView& to) -> std::optional<Violation> {
    if (to.is_everything()) return std::nullopt;
    auto f = [&to](const Vec3& x) { return to.translate_dist(x); };
    const double lip = to.translate_lipschitz(k_radius + u_radius);
    for (const auto& piece : from.support(k_radius, cap)) {
      if (piece.kind != Primitive::Kind::Point && to.covers(piece)) continue;
      if (auto v = find_violation(piece, k_radius, f, u_radius, lip, resolution, work, budget)) return v;
    }
    return std::nullopt;
  };
  if (auto v = side(d, c)) {
    out = {false, v, 1};
  } else if (auto w = side(c, d)) {
    out = {false, w, 2};
  }
  return out;
}

}  // namespace chabauty
