#include "chabauty/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chabauty/closure.hpp"
#include "chabauty/spaces.hpp"

namespace chabauty {

namespace {

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }
double dot(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }

template <class T>
HeisElementT<T> word_of(const HeisElementT<T>& l1, const HeisElementT<T>& l2, long long a, long long b) {
  return heis_mul(heis_pow(l1, a), heis_pow(l2, b));
}

BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) q -= 1;
  return q;
}

Rational wrap(const Rational& t, const Rational& step) {
  Rational q = t / step;
  return t - Rational(floor_div(numerator(q), denominator(q))) * step;
}

double wrap(double t, double step) {
  double r = t - std::floor(t / step) * step;
  if (r >= step || r < 0) r = 0;
  return r;
}

long long to_ll(const BigInt& v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw DomainError("integer coefficient out of range");
  return v.convert_to<long long>();
}

Complex as_complex(const HeisElementQ& e) { return {to_double(e.x), to_double(e.y)}; }

HeisLattice canonical_exact(const HeisElementQ& l1, const HeisElementQ& l2, const Rational& step) {
  auto r = reduce_basis_tracked(as_complex(l1), as_complex(l2));
  HeisElementQ a = word_of(l1, l2, r.transform[0], r.transform[1]);
  HeisElementQ b = word_of(l1, l2, r.transform[2], r.transform[3]);
  a.t = wrap(a.t, step);
  b.t = wrap(b.t, step);
  Rational covol = a.x * b.y - a.y * b.x;
  if (covol <= 0) throw DomainError("lattice basis is degenerate");
  Rational n = covol / step;
  if (denominator(n) != 1) throw DomainError("central step does not divide the covolume");
  HeisLattice out;
  out.z = as_complex(a);
  out.zp = as_complex(b);
  out.t = to_double(a.t);
  out.tp = to_double(b.t);
  out.n = to_ll(numerator(n));
  out.exact = ExactHeisData{a, b, step};
  return out;
}

// Lattice points a z + b zp with |p - center| <= radius.
template <class F>
void for_each_planar_near(Complex z, Complex zp, Complex center, double radius, F&& fn) {
  const double v = cross(z, zp);
  const double zl2 = std::norm(z), zl = std::sqrt(zl2);
  const double bc = cross(z, center) / v, bw = radius * zl / v;
  const double r2 = radius * radius * (1 + 1e-12) + 1e-300;
  for (auto b = static_cast<long long>(std::ceil(bc - bw - 1e-9)); b <= static_cast<long long>(std::floor(bc + bw + 1e-9)); ++b) {
    Complex w = center - double(b) * zp;
    double off = cross(z, w) / zl;
    double aw = std::sqrt(std::max(0.0, radius * radius - off * off)) / zl;
    double ac = dot(z, w) / zl2;
    for (auto a = static_cast<long long>(std::ceil(ac - aw - 1e-9)); a <= static_cast<long long>(std::floor(ac + aw + 1e-9)); ++a) {
      Complex p = double(a) * z + double(b) * zp;
      if (std::norm(p - center) <= r2) fn(a, b, p);
    }
  }
}

}  // namespace

double HeisLattice::covolume() const { return cross(z, zp); }

HeisElement HeisLattice::word(long long a, long long b) const { return word_of(lift(), lift_prime(), a, b); }

HeisLattice make_heis_lattice(Complex z, Complex zp, double t, double tp, long long n) {
  if (n < 1) throw DomainError("centre index must be >= 1");
  auto r = reduce_basis_tracked(z, zp);
  HeisElement l1 = make_heis(z, t), l2 = make_heis(zp, tp);
  HeisElement a = word_of(l1, l2, r.transform[0], r.transform[1]);
  HeisElement b = word_of(l1, l2, r.transform[2], r.transform[3]);
  HeisLattice out;
  out.z = r.z;
  out.zp = r.zp;
  out.n = n;
  double step = out.central_step();
  out.t = wrap(a.t, step);
  out.tp = wrap(b.t, step);
  return out;
}

HeisLattice heis_lattice_from_generators(std::span<const HeisElementQ> gens) {
  const std::size_t k = gens.size();
  if (k < 2) throw DomainError("a lattice in H needs at least two generators");
  // Integer projections with a unimodular transform riding along.
  BigInt den = 1;
  for (const auto& g : gens) den = lcm(lcm(den, denominator(g.x)), denominator(g.y));
  std::vector<std::vector<BigInt>> rows(k, std::vector<BigInt>(2 + k, BigInt(0)));
  for (std::size_t i = 0; i < k; ++i) {
    rows[i][0] = numerator(gens[i].x * den);
    rows[i][1] = numerator(gens[i].y * den);
    rows[i][2 + i] = 1;
  }
  std::size_t pivot = 0;
  for (std::size_t col = 0; col < 2 && pivot < k; ++col) {
    while (true) {
      std::size_t best = k;
      for (std::size_t r = pivot; r < k; ++r)
        if (rows[r][col] != 0 && (best == k || abs(rows[r][col]) < abs(rows[best][col]))) best = r;
      if (best == k) break;
      std::swap(rows[pivot], rows[best]);
      bool clean = true;
      for (std::size_t r = pivot + 1; r < k; ++r) {
        if (rows[r][col] == 0) continue;
        BigInt q = rows[r][col] / rows[pivot][col];
        for (std::size_t c = 0; c < 2 + k; ++c) rows[r][c] -= q * rows[pivot][c];
        if (rows[r][col] != 0) clean = false;
      }
      if (clean) {
        ++pivot;
        break;
      }
    }
  }
  if (pivot < 2) throw DomainError("generated group is not a lattice: its projection is not a lattice in C");

  auto word_for = [&](const std::vector<BigInt>& row) {
    HeisElementQ w{};
    for (std::size_t i = 0; i < k; ++i) w = heis_mul(w, heis_pow(gens[i], to_ll(row[2 + i])));
    return w;
  };
  HeisElementQ l1 = word_for(rows[0]), l2 = word_for(rows[1]);
  Rational step = l1.x * l2.y - l1.y * l2.x;  // the commutator [l1, l2]
  step = abs(step);
  for (std::size_t r = 2; r < k; ++r) step = rational_gcd(step, word_for(rows[r]).t);
  return canonical_exact(l1, l2, step);
}

HeisLattice make_lambda_n(long long n) {
  if (n < 1) throw DomainError("n must be >= 1");
  std::vector<HeisElementQ> gens{{1, 0, 0}, {0, 1, 0}, {0, 0, Rational(1, n)}};
  return heis_lattice_from_generators(gens);
}

HeisLattice example11_lattice(long long n, long long k) {
  if (n < 1 || k < 1) throw DomainError("n and k must be >= 1");
  std::vector<HeisElementQ> gens{{1, 0, 0}, {Rational(-1, k), 0, 1}, {0, Rational(-k * k * n), 0}};
  HeisLattice lat = heis_lattice_from_generators(gens);
  if (lat.n != n || !heis_membership(lat, HeisElementQ{0, 0, Rational(k)}))
    throw Error("example lattice failed its postcondition");
  return lat;
}

std::optional<std::pair<long long, long long>> planar_coordinates(const HeisLattice& lat, Complex w, double tol) {
  const double v = lat.covolume();
  double a = cross(w, lat.zp) / v, b = cross(lat.z, w) / v;
  double ra = std::round(a), rb = std::round(b);
  if (std::abs(ra * lat.z + rb * lat.zp - w) > tol * (1 + std::abs(w))) return std::nullopt;
  return std::make_pair(static_cast<long long>(ra), static_cast<long long>(rb));
}

bool heis_membership(const HeisLattice& lat, const HeisElement& x, double tol) {
  auto ab = planar_coordinates(lat, projection(x), tol);
  if (!ab) return false;
  HeisElement y = heis_mul(x, heis_inverse(lat.word(ab->first, ab->second)));
  const double step = lat.central_step();
  double q = y.t / step;
  return std::abs(q - std::round(q)) * step <= tol * (1 + std::abs(x.t) + std::norm(projection(x)));
}

bool heis_membership(const HeisLattice& lat, const HeisElementQ& x) {
  if (!lat.exact) throw DomainError("exact membership needs a lattice built from rational generators");
  const auto& [l1, l2, step] = *lat.exact;
  Rational v = l1.x * l2.y - l1.y * l2.x;
  Rational a = (x.x * l2.y - x.y * l2.x) / v;
  Rational b = (l1.x * x.y - l1.y * x.x) / v;
  if (denominator(a) != 1 || denominator(b) != 1) return false;
  HeisElementQ y = heis_mul(x, heis_inverse(word_of(l1, l2, to_ll(numerator(a)), to_ll(numerator(b)))));
  return denominator(Rational(y.t / step)) == 1;
}

ClosedSubgroupR commutator_subgroup(const HeisLattice& lat) { return ClosedSubgroupR::cyclic(lat.covolume()); }
ClosedSubgroupR center_subgroup(const HeisLattice& lat) { return ClosedSubgroupR::cyclic(lat.central_step()); }
long long center_index(const HeisLattice& lat) { return lat.n; }

HeisLattice aut_apply_lattice(const HeisAutomorphism& a, const HeisLattice& lat) {
  HeisElement l1 = aut_apply(a, lat.lift()), l2 = aut_apply(a, lat.lift_prime());
  return make_heis_lattice(projection(l1), projection(l2), l1.t, l2.t, lat.n);
}

HeisLattice dilate_lattice(double s, const HeisLattice& lat) {
  if (!(s > 0)) throw DomainError("dilation factor must be positive");
  return aut_apply_lattice(HeisAutomorphism::dilation(s), lat);
}

bool approx_equal(const HeisLattice& a, const HeisLattice& b, double tol) {
  auto inside = [tol](const HeisLattice& p, const HeisLattice& q) {
    return heis_membership(q, p.lift(), tol) && heis_membership(q, p.lift_prime(), tol) &&
           heis_membership(q, HeisElement{0, 0, p.central_step()}, tol);
  };
  return inside(a, b) && inside(b, a);
}

double haar_covolume(const HeisLattice& lat) { return lat.covolume() * lat.central_step(); }

std::vector<HeisElement> heis_enumerate(const HeisLattice& lat, double radius, std::size_t cap) {
  if (!(radius > 0)) throw DomainError("enumeration radius must be positive");
  const double c = lat.central_step();
  double expected = (M_PI * radius * radius / lat.covolume() + 1) * (2 * radius / c + 1);
  if (expected > 4.0 * double(cap)) throw EnumerationOverflow("Heisenberg enumeration would exceed the cap");
  std::vector<HeisElement> out;
  for_each_planar_near(lat.z, lat.zp, {0, 0}, radius, [&](long long a, long long b, Complex p) {
    double rest = radius * radius * (1 + 1e-12) - std::norm(p);
    if (rest < 0) return;
    double h = std::sqrt(rest);
    HeisElement w = lat.word(a, b);
    auto lo = static_cast<long long>(std::ceil((-h - w.t) / c));
    auto hi = static_cast<long long>(std::floor((h - w.t) / c));
    for (long long m = lo; m <= hi; ++m) {
      out.push_back({p.real(), p.imag(), w.t + double(m) * c});
      if (out.size() > cap) throw EnumerationOverflow("Heisenberg enumeration exceeds the cap of " + std::to_string(cap));
    }
  });
  return out;
}

double shortest_norm(const HeisLattice& lat) {
  double r = std::min(lat.central_step(), std::sqrt(std::norm(lat.z) + lat.t * lat.t));
  double best = kInfinity;
  for (const auto& e : heis_enumerate(lat, r * (1 + 1e-9))) {
    double nrm = std::sqrt(e.x * e.x + e.y * e.y + e.t * e.t);
    if (nrm > 0) best = std::min(best, nrm);
  }
  return best;
}

// ------------------------------------------------------------ subgroups

std::string heis_stratum_name(HeisStratum s) {
  switch (s) {
    case HeisStratum::Identity: return "{e}";
    case HeisStratum::CR: return "C_R(H)";
    case HeisStratum::CZ: return "C_Z(H)";
    case HeisStratum::CR2: return "C_R2(H)";
    case HeisStratum::CRxZ: return "C_RxZ(H)";
    case HeisStratum::CZ2: return "C_Z2(H)";
    case HeisStratum::PullbackRZ: return "p^-1(C_RxZ(C))";
    case HeisStratum::Whole: return "H";
    case HeisStratum::LInfinity: return "L_inf(H)";
    case HeisStratum::LN: return "L_n(H)";
  }
  return "?";
}

namespace {

bool is_vertical(Complex d) { return std::abs(d.real()) <= 1e-12 * std::abs(d); }

}  // namespace

HeisSubgroup HeisSubgroup::central(const ClosedSubgroupR& sub) {
  switch (sub.kind()) {
    case ClosedSubgroupR::Kind::Trivial: return trivial();
    case ClosedSubgroupR::Kind::Full: return pullback(ClosedSubgroupC::zero());
    default: return HeisSubgroup(Central{sub});
  }
}

HeisSubgroup HeisSubgroup::planar(Complex u, const ClosedSubgroupC& sub) {
  if (std::abs(u) == 0) throw DomainError("planar direction must be nonzero");
  u /= std::abs(u);
  ClosedSubgroupC p = sub;
  if (u.imag() < 0 || (u.imag() == 0 && u.real() < 0)) {
    u = -u;
    p = linear_image(p, {-1, 0, 0, 1});
  }
  switch (p.stratum()) {
    case Stratum::Zero: return trivial();
    case Stratum::Full: return pullback(ClosedSubgroupC::line(u));
    case Stratum::Cyclic: {
      Complex w = p.as_cyclic().omega;
      if (is_vertical(w)) return central(ClosedSubgroupR::cyclic(std::abs(w)));
      break;
    }
    case Stratum::Line:
      if (is_vertical(std::get<ClosedSubgroupC::Line>(p.data()).u)) return pullback(ClosedSubgroupC::zero());
      break;
    case Stratum::LineCyclic: {
      const auto& lc = std::get<ClosedSubgroupC::LineCyclic>(p.data());
      if (is_vertical(lc.u)) return pullback(ClosedSubgroupC::cyclic(std::abs(lc.v) * u));
      break;
    }
    case Stratum::Lattice: break;
  }
  return HeisSubgroup(Planar{u, p});
}

bool HeisSubgroup::is_abelian() const {
  if (std::holds_alternative<Lattice>(data_)) return false;
  if (const auto* pb = std::get_if<Pullback>(&data_)) {
    Stratum s = pb->base.stratum();
    return s == Stratum::Zero || s == Stratum::Cyclic || s == Stratum::Line;
  }
  return true;
}

HeisClassification classify_heis(const HeisSubgroup& s) {
  auto make = [](HeisStratum st, long long n = 0) {
    return HeisClassification{st, n, heis_stratum_name(st)};
  };
  return std::visit(
      [&](const auto& d) -> HeisClassification {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, HeisSubgroup::Trivial>) {
          return make(HeisStratum::Identity);
        } else if constexpr (std::is_same_v<T, HeisSubgroup::Central>) {
          return make(HeisStratum::CZ);
        } else if constexpr (std::is_same_v<T, HeisSubgroup::Planar>) {
          switch (d.sub.stratum()) {
            case Stratum::Cyclic: return make(HeisStratum::CZ);
            case Stratum::Line: return make(HeisStratum::CR);
            case Stratum::Lattice: return make(HeisStratum::CZ2);
            case Stratum::LineCyclic: return make(HeisStratum::CRxZ);
            default: return make(HeisStratum::CR2);
          }
        } else if constexpr (std::is_same_v<T, HeisSubgroup::Pullback>) {
          switch (d.base.stratum()) {
            case Stratum::Zero: return make(HeisStratum::CR);
            case Stratum::Cyclic: return make(HeisStratum::CRxZ);
            case Stratum::Line: return make(HeisStratum::CR2);
            case Stratum::LineCyclic: return make(HeisStratum::PullbackRZ);
            case Stratum::Lattice: return make(HeisStratum::LInfinity);
            case Stratum::Full: return make(HeisStratum::Whole);
          }
          return make(HeisStratum::Whole);
        } else {
          auto c = make(HeisStratum::LN, d.lattice.n);
          c.label = "L_" + std::to_string(d.lattice.n) + "(H)";
          return c;
        }
      },
      s.data());
}

namespace {

// Subgroup of R generated by x and y: discrete iff x / y is rational. Read
// off from continued-fraction convergents with denominators up to 1e6;
// nullopt when none fits, i.e. the group looks dense.
std::optional<double> discrete_gcd(double x, double y) {
  x = std::abs(x);
  y = std::abs(y);
  if (x == 0) return y;
  if (y == 0) return x;
  const double ratio = x / y;
  double rest = ratio;
  double p0 = 1, q0 = 0, p1 = std::floor(rest), q1 = 1;
  for (int i = 0; i < 40 && q1 <= 1e6; ++i) {
    if (std::abs(ratio * q1 - p1) <= 1e-9 * q1) return y / q1;
    double frac = rest - std::floor(rest);
    if (frac < 1e-15) break;
    rest = 1 / frac;
    double a = std::floor(rest);
    double p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return std::nullopt;
}

}  // namespace

ClosedSubgroupC projection(const HeisSubgroup& s) {
  return std::visit(
      [](const auto& d) -> ClosedSubgroupC {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, HeisSubgroup::Trivial> || std::is_same_v<T, HeisSubgroup::Central>) {
          return ClosedSubgroupC::zero();
        } else if constexpr (std::is_same_v<T, HeisSubgroup::Pullback>) {
          return d.base;
        } else if constexpr (std::is_same_v<T, HeisSubgroup::Lattice>) {
          return ClosedSubgroupC::lattice(d.lattice.z, d.lattice.zp);
        } else {
          // Image of P under (s, r) -> s u.
          switch (d.sub.stratum()) {
            case Stratum::Cyclic: return ClosedSubgroupC::cyclic(d.sub.as_cyclic().omega.real() * d.u);
            case Stratum::Line:
            case Stratum::Full: return ClosedSubgroupC::line(d.u);
            case Stratum::LineCyclic: {
              const auto& lc = std::get<ClosedSubgroupC::LineCyclic>(d.sub.data());
              if (!is_vertical(lc.u)) return ClosedSubgroupC::line(d.u);
              return ClosedSubgroupC::cyclic(lc.v.real() * d.u);
            }
            case Stratum::Lattice: {
              const auto& l = d.sub.as_lattice();
              if (auto g = discrete_gcd(l.z.real(), l.zp.real())) return ClosedSubgroupC::cyclic(*g * d.u);
              return ClosedSubgroupC::line(d.u);
            }
            default: return ClosedSubgroupC::zero();
          }
        }
      },
      s.data());
}

HeisSubgroup closure_of_generated(std::span<const HeisElementQ> gens) {
  std::vector<HeisElementQ> g;
  for (const auto& e : gens)
    if (!(e.x == 0 && e.y == 0 && e.t == 0)) g.push_back(e);
  if (g.empty()) return HeisSubgroup::trivial();
  std::vector<ExactVector> planar;
  for (const auto& e : g) planar.push_back({SurdNumber(e.x), SurdNumber(e.y)});
  ClosedSubgroupC p = closure_of_generated(std::span<const ExactVector>(planar));
  if (p.stratum() == Stratum::Lattice) return HeisSubgroup::lattice(heis_lattice_from_generators(g));
  if (p.stratum() == Stratum::Zero) {
    Rational step = 0;
    for (const auto& e : g) step = rational_gcd(step, e.t);
    return HeisSubgroup::central(ClosedSubgroupR::cyclic(to_double(step)));
  }
  // Collinear projections: the group is abelian and sits in R d x R. Write
  // z = q d with q rational and close up the pairs (q, t) exactly.
  const HeisElementQ* dir = nullptr;
  for (const auto& e : g)
    if (!(e.x == 0 && e.y == 0)) {
      dir = &e;
      break;
    }
  std::vector<ExactVector> pairs;
  for (const auto& e : g) {
    Rational q = dir->x != 0 ? e.x / dir->x : e.y / dir->y;
    pairs.push_back({SurdNumber(q), SurdNumber(e.t)});
  }
  ClosedSubgroupC p0 = closure_of_generated(std::span<const ExactVector>(pairs));
  Complex d = as_complex(*dir);
  return HeisSubgroup::planar(d, linear_image(p0, {std::abs(d), 0, 0, 1}));
}

HeisSubgroup dilate(double s, const HeisSubgroup& g) {
  if (!(s > 0)) throw DomainError("dilation factor must be positive");
  return std::visit(
      [s](const auto& d) -> HeisSubgroup {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, HeisSubgroup::Trivial>) {
          return HeisSubgroup::trivial();
        } else if constexpr (std::is_same_v<T, HeisSubgroup::Central>) {
          return HeisSubgroup::central(ClosedSubgroupR::cyclic(d.sub.step() * s * s));
        } else if constexpr (std::is_same_v<T, HeisSubgroup::Planar>) {
          return HeisSubgroup::planar(d.u, linear_image(d.sub, {s, 0, 0, s * s}));
        } else if constexpr (std::is_same_v<T, HeisSubgroup::Pullback>) {
          return HeisSubgroup::pullback(scale(d.base, s));
        } else {
          return HeisSubgroup::lattice(dilate_lattice(s, d.lattice));
        }
      },
      g.data());
}

// ------------------------------------------------------------ metric views

namespace {

class HeisView : public SetView {
 public:
  explicit HeisView(HeisSubgroup s) : s_(std::move(s)) {}
  std::string describe() const override { return classify_heis(s_).label; }
  bool same_set(const SetView& other) const override;

 protected:
  HeisSubgroup s_;
};

bool HeisView::same_set(const SetView& other) const {
  auto* o = dynamic_cast<const HeisView*>(&other);
  if (!o || o->s_.data().index() != s_.data().index()) return false;
  return std::visit(
      [&](const auto& a) -> bool {
        using T = std::decay_t<decltype(a)>;
        const auto& b = std::get<T>(o->s_.data());
        if constexpr (std::is_same_v<T, HeisSubgroup::Trivial>) {
          return true;
        } else if constexpr (std::is_same_v<T, HeisSubgroup::Central>) {
          return a.sub == b.sub;
        } else if constexpr (std::is_same_v<T, HeisSubgroup::Planar>) {
          return std::abs(a.u - b.u) <= 1e-12 && approx_equal(a.sub, b.sub, 1e-12);
        } else if constexpr (std::is_same_v<T, HeisSubgroup::Pullback>) {
          return approx_equal(a.base, b.base, 1e-12);
        } else {
          return approx_equal(a.lattice, b.lattice, 1e-12);
        }
      },
      s_.data());
}

class TrivialView final : public HeisView {
 public:
  using HeisView::HeisView;
  double dist(const Vec3& x) const override { return norm(x); }
  std::vector<Primitive> support(double, std::size_t) const override { return {Primitive::point({0, 0, 0})}; }
};

class CentralView final : public HeisView {
 public:
  CentralView(HeisSubgroup s, ClosedSubgroupR c) : HeisView(std::move(s)), c_(c) {}
  double dist(const Vec3& x) const override {
    double d = c_.dist(x[2]);
    return std::sqrt(x[0] * x[0] + x[1] * x[1] + d * d);
  }
  std::vector<Primitive> support(double radius, std::size_t cap) const override {
    double kmax = std::floor(radius / c_.step() * (1 + 1e-12));
    if (2 * kmax + 1 > double(cap)) throw EnumerationOverflow("central enumeration exceeds the cap");
    std::vector<Primitive> out;
    for (auto k = static_cast<long long>(-kmax); k <= static_cast<long long>(kmax); ++k)
      out.push_back(Primitive::point({0, 0, double(k) * c_.step()}));
    return out;
  }

 private:
  ClosedSubgroupR c_;
};

class PullbackView final : public HeisView {
 public:
  PullbackView(HeisSubgroup s, ClosedSubgroupC base) : HeisView(std::move(s)), base_(std::move(base)) {}
  double dist(const Vec3& x) const override { return dist_point(base_, {x[0], x[1]}); }
  bool is_everything() const override { return base_.stratum() == Stratum::Full; }
  std::vector<Primitive> support(double radius, std::size_t cap) const override {
    std::vector<Primitive> out;
    if (is_everything()) return {Primitive::ball(radius)};
    PlanarSupport s = enumerate_points(base_, radius, cap);
    for (Complex p : s.points)
      out.push_back(Primitive::segment(embed(p), {0, 0, 1}, std::sqrt(std::max(0.0, radius * radius - std::norm(p)))));
    for (const auto& seg : s.segments)
      out.push_back(Primitive::disc(embed(seg.center), embed(seg.direction), {0, 0, 1}, seg.half_length));
    return out;
  }
  bool covers(const Primitive& p) const override {
    if (p.kind == Primitive::Kind::Ball) return is_everything();
    if (dist_point(base_, {p.center[0], p.center[1]}) > 1e-10 * (1 + norm(p.center))) return false;
    bool ok = continuous_direction(base_, {p.e1[0], p.e1[1]});
    if (p.kind == Primitive::Kind::Disc) ok = ok && continuous_direction(base_, {p.e2[0], p.e2[1]});
    return ok;
  }

 private:
  ClosedSubgroupC base_;
};

class PlanarView final : public HeisView {
 public:
  PlanarView(HeisSubgroup s, Complex u, ClosedSubgroupC p) : HeisView(std::move(s)), u_(u), p_(std::move(p)) {}

  double dist(const Vec3& x) const override {
    Complex xz(x[0], x[1]);
    double alpha = dot(u_, xz), beta = cross(u_, xz);
    double d = dist_point(p_, {alpha, x[2]});
    return std::sqrt(beta * beta + d * d);
  }

  // |c^-1 x|^2 = beta^2 + (alpha - s)^2 + (t + beta s / 2 - r)^2 for c = (s u, r),
  // a distance to the sheared image of P.
  double translate_dist(const Vec3& x) const override {
    Complex xz(x[0], x[1]);
    double alpha = dot(u_, xz), beta = cross(u_, xz);
    double d = dist_point(linear_image(p_, {1, 0, -beta / 2, 1}), {alpha, x[2]});
    return std::sqrt(beta * beta + d * d);
  }
  double translate_lipschitz(double radius) const override { return 1 + 0.5 * radius; }

  std::vector<Primitive> support(double radius, std::size_t cap) const override {
    PlanarSupport s = enumerate_points(p_, radius, cap);
    std::vector<Primitive> out;
    for (Complex p : s.points) out.push_back(Primitive::point(lift(p)));
    for (const auto& seg : s.segments)
      out.push_back(Primitive::segment(lift(seg.center), lift(seg.direction), seg.half_length));
    if (s.whole_disc) out.push_back(Primitive::disc({0, 0, 0}, lift({1, 0}), lift({0, 1}), radius));
    return out;
  }

  bool covers(const Primitive& p) const override {
    if (p.kind == Primitive::Kind::Point || p.kind == Primitive::Kind::Ball) return false;
    if (dist(p.center) > 1e-10 * (1 + norm(p.center))) return false;
    auto in_plane = [this](const Vec3& e) {
      Complex ez(e[0], e[1]);
      if (std::abs(cross(u_, ez)) > 1e-12 * (1 + norm(e))) return false;
      return continuous_direction(p_, {dot(u_, ez), e[2]});
    };
    return in_plane(p.e1) && (p.kind == Primitive::Kind::Segment || in_plane(p.e2));
  }

 private:
  Vec3 lift(Complex sr) const { return {sr.real() * u_.real(), sr.real() * u_.imag(), sr.imag()}; }
  Complex u_;
  ClosedSubgroupC p_;
};

class LatticeView final : public HeisView {
 public:
  LatticeView(HeisSubgroup s, HeisLattice lat) : HeisView(std::move(s)), lat_(std::move(lat)) {}

  double dist(const Vec3& x) const override { return search(x, false); }
  double translate_dist(const Vec3& x) const override { return search(x, true); }
  double translate_lipschitz(double radius) const override { return 1 + 0.5 * radius; }

  std::vector<Primitive> support(double radius, std::size_t cap) const override {
    std::vector<Primitive> out;
    for (const auto& e : heis_enumerate(lat_, radius, cap)) out.push_back(Primitive::point({e.x, e.y, e.t}));
    return out;
  }

 private:
  // Nearest element over the fibres above planar points near p(x); the
  // search radius starts from the fibre above the Babai point.
  double search(const Vec3& x, bool translate) const {
    const Complex xz(x[0], x[1]);
    const double c = lat_.central_step();
    const double v = lat_.covolume();
    Complex babai = std::round(cross(xz, lat_.zp) / v) * lat_.z + std::round(cross(lat_.z, xz) / v) * lat_.zp;
    double best2 = std::norm(xz - babai) + 0.25 * c * c;
    double best = std::sqrt(best2) * (1 + 1e-12);
    for_each_planar_near(lat_.z, lat_.zp, xz, best, [&](long long a, long long b, Complex p) {
      double dz2 = std::norm(xz - p);
      if (dz2 >= best2) return;
      HeisElement w = lat_.word(a, b);
      double off = x[2] - w.t;
      if (translate) off -= 0.5 * (p.imag() * xz.real() - p.real() * xz.imag());  // Im(p conj x)
      off -= std::round(off / c) * c;
      best2 = std::min(best2, dz2 + off * off);
    });
    return std::sqrt(best2);
  }

  HeisLattice lat_;
};

}  // namespace

std::shared_ptr<const SetView> heis_view(const HeisSubgroup& s) {
  return std::visit(
      [&s](const auto& d) -> std::shared_ptr<const SetView> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, HeisSubgroup::Trivial>) {
          return std::make_shared<TrivialView>(s);
        } else if constexpr (std::is_same_v<T, HeisSubgroup::Central>) {
          return std::make_shared<CentralView>(s, d.sub);
        } else if constexpr (std::is_same_v<T, HeisSubgroup::Pullback>) {
          return std::make_shared<PullbackView>(s, d.base);
        } else if constexpr (std::is_same_v<T, HeisSubgroup::Planar>) {
          return std::make_shared<PlanarView>(s, d.u, d.sub);
        } else {
          return std::make_shared<LatticeView>(s, d.lattice);
        }
      },
      s.data());
}

DensityWitness density_witness(const ClosedSubgroupC& base, double eps, const MetricConfig& cfg) {
  if (!base.is_lattice()) throw DomainError("density witness needs a lattice base");
  if (!(eps > 0)) throw DomainError("eps must be positive");
  const auto& l = base.as_lattice();
  const double v = covolume(base);
  auto target = heis_view(HeisSubgroup::pullback(base));
  // Central step v/n below eps, then grow n until the engine agrees.
  auto n = static_cast<long long>(std::floor(v / eps)) + 1;
  for (int attempt = 0; attempt < 8; ++attempt, n *= 2) {
    HeisLattice lat = make_heis_lattice(l.z, l.zp, 0, 0, n);
    double d = chabauty_distance(*target, *heis_view(HeisSubgroup::lattice(lat)), cfg).distance;
    if (d <= eps) return {lat, d};
  }
  throw NumericFailure("no lattice within eps of the pullback", eps);
}

}  // namespace chabauty
