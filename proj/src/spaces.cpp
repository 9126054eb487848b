#include "chabauty/spaces.hpp"

#include <cmath>

namespace chabauty {

bool continuous_direction(const ClosedSubgroupC& c, Complex d) {
  if (std::abs(d) == 0) return true;
  switch (c.stratum()) {
    case Stratum::Full: return true;
    case Stratum::Line: {
      Complex u = std::get<ClosedSubgroupC::Line>(c.data()).u;
      return std::abs(u.real() * d.imag() - u.imag() * d.real()) <= 1e-12 * std::abs(d);
    }
    case Stratum::LineCyclic: {
      Complex u = std::get<ClosedSubgroupC::LineCyclic>(c.data()).u;
      return std::abs(u.real() * d.imag() - u.imag() * d.real()) <= 1e-12 * std::abs(d);
    }
    default: return false;
  }
}

namespace {

class RealView final : public SetView {
 public:
  explicit RealView(ClosedSubgroupR g) : g_(g) {}

  double dist(const Vec3& x) const override {
    double d = g_.dist(x[0]);
    return std::sqrt(d * d + x[1] * x[1] + x[2] * x[2]);
  }

  std::vector<Primitive> support(double radius, std::size_t cap) const override {
    std::vector<Primitive> out;
    switch (g_.kind()) {
      case ClosedSubgroupR::Kind::Trivial: out.push_back(Primitive::point({0, 0, 0})); break;
      case ClosedSubgroupR::Kind::Full: out.push_back(Primitive::segment({0, 0, 0}, {1, 0, 0}, radius)); break;
      case ClosedSubgroupR::Kind::Cyclic: {
        double kmax = std::floor(radius / g_.step() * (1 + 1e-12));
        if (2 * kmax + 1 > double(cap)) throw EnumerationOverflow("enumeration of a cyclic subgroup of R exceeds the cap");
        for (auto k = static_cast<long long>(-kmax); k <= static_cast<long long>(kmax); ++k)
          out.push_back(Primitive::point({double(k) * g_.step(), 0, 0}));
        break;
      }
    }
    return out;
  }

  bool is_everything() const override { return g_.kind() == ClosedSubgroupR::Kind::Full; }

  bool same_set(const SetView& other) const override {
    auto* o = dynamic_cast<const RealView*>(&other);
    return o && o->g_ == g_;
  }

  std::string describe() const override {
    if (g_.kind() == ClosedSubgroupR::Kind::Cyclic) return std::to_string(g_.step()) + " Z";
    return kind_name(g_.kind());
  }

 private:
  ClosedSubgroupR g_;
};

class ComplexView final : public SetView {
 public:
  explicit ComplexView(ClosedSubgroupC c) : c_(std::move(c)) {}

  double dist(const Vec3& x) const override {
    double d = dist_point(c_, {x[0], x[1]});
    return x[2] == 0 ? d : std::sqrt(d * d + x[2] * x[2]);
  }

  std::vector<Primitive> support(double radius, std::size_t cap) const override {
    PlanarSupport s = enumerate_points(c_, radius, cap);
    std::vector<Primitive> out;
    out.reserve(s.points.size() + s.segments.size() + 1);
    for (Complex p : s.points) out.push_back(Primitive::point(embed(p)));
    for (const auto& seg : s.segments)
      out.push_back(Primitive::segment(embed(seg.center), embed(seg.direction), seg.half_length));
    if (s.whole_disc) out.push_back(Primitive::disc({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, radius));
    return out;
  }

  bool is_everything() const override { return c_.stratum() == Stratum::Full; }

  bool covers(const Primitive& p) const override {
    if (p.kind != Primitive::Kind::Segment || p.center[2] != 0 || p.e1[2] != 0) return false;
    return continuous_direction(c_, {p.e1[0], p.e1[1]}) && dist_point(c_, {p.center[0], p.center[1]}) <= 1e-10 * (1 + norm(p.center));
  }

  std::string describe() const override { return stratum_name(c_.stratum()); }

  bool same_set(const SetView& other) const override {
    auto* o = dynamic_cast<const ComplexView*>(&other);
    return o && approx_equal(o->c_, c_, 1e-12);
  }

 private:
  ClosedSubgroupC c_;
};

}  // namespace

std::shared_ptr<const SetView> real_view(const ClosedSubgroupR& g) { return std::make_shared<RealView>(g); }
std::shared_ptr<const SetView> complex_view(const ClosedSubgroupC& c) { return std::make_shared<ComplexView>(c); }

}  // namespace chabauty
