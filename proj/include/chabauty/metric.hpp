#pragma once

// Chabauty metric on closed subsets of a locally compact metric space,
//
//   d(F1, F2) = inf { eps > 0 : F1 u (X \ B(*,1/eps)) c V_eps(F2 u (X \ B(*,1/eps)))
//                               and symmetrically },
//
// computed for any ambient space that can enumerate a set inside a ball and
// report distances to it. All spaces are embedded isometrically in R^3
// (R as the first axis, C as the first two, H = C x R as all three).

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chabauty/subgroups.hpp"

namespace chabauty {

using Vec3 = std::array<double, 3>;

double norm(const Vec3& v);

/// A piece of a set inside a ball: a point, a segment c + s e1 (|s| <= extent),
/// a disc c + s e1 + r e2 (s^2 + r^2 <= extent^2) or the ball |x| <= extent.
struct Primitive {
  enum class Kind { Point, Segment, Disc, Ball };
  Kind kind = Kind::Point;
  Vec3 center{};
  Vec3 e1{};
  Vec3 e2{};
  double extent = 0;

  static Primitive point(const Vec3& p) { return {Kind::Point, p, {}, {}, 0}; }
  static Primitive segment(const Vec3& c, const Vec3& dir, double half) { return {Kind::Segment, c, dir, {}, half}; }
  static Primitive disc(const Vec3& c, const Vec3& a, const Vec3& b, double r) { return {Kind::Disc, c, a, b, r}; }
  static Primitive ball(double r) { return {Kind::Ball, {}, {}, {}, r}; }
};

/// The ambient-space plugin: what the engine needs to know about one set.
class SetView {
 public:
  virtual ~SetView() = default;

  /// Euclidean distance from x to the set.
  virtual double dist(const Vec3& x) const = 0;

  /// min over c in the set of |c^-1 x| (left translates by group elements).
  /// Equal to dist() in abelian ambient groups.
  virtual double translate_dist(const Vec3& x) const { return dist(x); }

  /// Lipschitz constant of translate_dist on the ball of the given radius.
  virtual double translate_lipschitz(double /*radius*/) const { return 1.0; }

  /// The set inside the closed ball |x| <= radius.
  virtual std::vector<Primitive> support(double radius, std::size_t cap) const = 0;

  /// True when the set is the whole ambient space.
  virtual bool is_everything() const { return false; }

  /// True when the primitive is known to lie inside the set.
  virtual bool covers(const Primitive& /*p*/) const { return false; }

  /// True only when other is known to be the same closed set. Lets the
  /// distance skip enumeration for d(C, C) = 0.
  virtual bool same_set(const SetView& /*other*/) const { return false; }

  virtual std::string describe() const = 0;
};

struct MetricConfig {
  double tol = 1e-3;
  double eps_min = 1e-4;
  double eps_max = 4.0;
  std::size_t cap = kDefaultEnumerationCap;
  std::size_t work_budget = 200'000'000;
  // Sup checks stop refining once the Lipschitz bound is within this slack
  // of the threshold and report a failure; bisection runs to tol - resolution.
  double resolution = 2.5e-4;

  void validate() const;
};

struct Violation {
  Vec3 point{};
  double value = 0;
};

/// Searches the part of `piece` inside |x| <= radius for a point with
/// f(x) >= threshold, where f is `lipschitz`-Lipschitz: an adaptive sweep on
/// segments, branch and bound on discs and balls. Returns nullopt only when
/// f < threshold is certified everywhere; a returned point has
/// f > threshold - resolution. `work` counts evaluations against the budget.
std::optional<Violation> find_violation(const Primitive& piece, double radius,
                                        const std::function<double(const Vec3&)>& f, double threshold,
                                        double lipschitz, double resolution, std::size_t& work,
                                        std::size_t budget);

struct HaloResult {
  bool holds = true;
  std::optional<Violation> witness;
  int failing_side = 0;  // 1: points of lhs too far from rhs, 2: the reverse
};

/// Both inclusions of the metric's defining condition at this eps.
HaloResult halo_check(const SetView& lhs, const SetView& rhs, double eps, const MetricConfig& cfg);
inline bool halo_predicate(const SetView& lhs, const SetView& rhs, double eps, const MetricConfig& cfg = {}) {
  return halo_check(lhs, rhs, eps, cfg).holds;
}

struct DistanceResult {
  double distance = 0;  // an eps with |eps - d| <= tol, and the predicate true at eps
  double lower = 0;     // largest eps seen with the predicate false (or eps_min)
  std::vector<std::pair<double, bool>> trace;
};

/// Bisection on the halo predicate. Throws NumericFailure if the predicate is
/// false at eps_max, or if the evaluated samples are not monotone.
/// The result satisfies lower - resolution <= d <= distance <= lower + tol.
DistanceResult chabauty_distance(const SetView& lhs, const SetView& rhs, const MetricConfig& cfg = {});

struct FamilyMember {
  long index = 0;
  std::shared_ptr<const SetView> set;
};

struct LimitConfig {
  double radius = 1;
  double delta = 0.1;
  long horizon = 0;
  std::size_t cap = kDefaultEnumerationCap;
  std::size_t work_budget = 200'000'000;
  double resolution = 1e-4;
};

struct LimitWitness {
  long index = 0;
  char condition = 'a';  // 'a': a point of the limit is not approximated; 'b': a stray point
  Vec3 point{};
  double distance = 0;
};

struct LimitReport {
  bool pass = true;
  std::vector<long> checked;
  std::vector<LimitWitness> witnesses;
};

/// Finite-scale check of sequential convergence F_k -> F inside B(*, R):
/// (a) every point of F in the ball is within delta of F_k, and (b) every
/// point of F_k in the ball is within delta of F or of the ball's boundary,
/// for every member with index >= horizon.
LimitReport limit_verdict(const std::vector<FamilyMember>& seq, const SetView& limit, const LimitConfig& cfg);

struct NeighborhoodResult {
  bool holds = true;
  std::optional<Violation> witness;
  int failing_side = 0;  // 1: D n K not in C U, 2: C n K not in D U
};

/// D in N_{K,U}(C): D n K c C U and C n K c D U, with K the closed ball of
/// radius k_radius and U the open ball of radius u_radius around the identity.
NeighborhoodResult neighborhood_check(const SetView& c, const SetView& d, double k_radius, double u_radius,
                                      std::size_t cap = kDefaultEnumerationCap, double resolution = 1e-4);

}  // namespace chabauty
