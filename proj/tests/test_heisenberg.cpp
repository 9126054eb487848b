#include <doctest.h>

#include "chabauty/errors.hpp"
#include "chabauty/heisenberg.hpp"
#include "chabauty/mahler.hpp"
#include "support.hpp"

using namespace chabauty;
using testing::QElem;
using testing::Rng;

namespace {

// The printed description of Lambda_n inside the box |x|, |y|, |t| <= b.
std::set<QElem> lambda_closed_form(long long n, long long b) {
  std::set<QElem> out;
  for (long long x = -b; x <= b; ++x)
    for (long long y = -b; y <= b; ++y) {
      if (n % 2 == 0) {
        for (long long m = -b * n; m <= b * n; ++m) out.insert({Rational(x), Rational(y), Rational(m) / n});
      } else {
        for (long long m = -2 * b * n; m <= 2 * b * n; ++m)
          if (((x * y - m) % 2 + 2) % 2 == 0) out.insert({Rational(x), Rational(y), Rational(m) / (2 * n)});
      }
    }
  return out;
}

HeisElementQ q(const QElem& e) { return {std::get<0>(e), std::get<1>(e), std::get<2>(e)}; }

bool contains_all(const HeisLattice& big, const HeisLattice& small, double tol = 1e-9) {
  return heis_membership(big, small.lift(), tol) && heis_membership(big, small.lift_prime(), tol) &&
         heis_membership(big, HeisElement{0, 0, small.central_step()}, tol);
}

}  // namespace

TEST_SUITE("heisenberg") {

TEST_CASE("Lambda_n: breadth-first generation equals the closed forms") {
  for (long long n = 1; n <= 4; ++n) {
    std::vector<QElem> gens{{1, 0, 0}, {0, 1, 0}, {0, 0, Rational(1) / n}};
    auto generated = testing::bfs_generate(gens, 3, 3);
    auto printed = lambda_closed_form(n, 3);
    CHECK_MESSAGE(generated == printed, "n = " << n);
    // library membership on the finer grid (1/2n) Z
    HeisLattice lat = make_lambda_n(n);
    int mismatches = 0;
    for (long long x = -3; x <= 3; ++x)
      for (long long y = -3; y <= 3; ++y)
        for (long long m = -6 * n; m <= 6 * n; ++m) {
          QElem e{Rational(x), Rational(y), Rational(m) / (2 * n)};
          if (heis_membership(lat, q(e)) != (printed.count(e) > 0)) ++mismatches;
          if (heis_membership(lat, to_double(q(e))) != (printed.count(e) > 0)) ++mismatches;
        }
    CHECK(mismatches == 0);
    CHECK(center_index(lat) == n);
    CHECK(commutator_subgroup(lat) == ClosedSubgroupR::cyclic(1));
    CHECK(center_subgroup(lat) == ClosedSubgroupR::cyclic(1.0 / double(n)));
    CHECK(classify_heis(HeisSubgroup::lattice(lat)).label == "L_" + std::to_string(n) + "(H)");
  }
}

TEST_CASE("membership examples") {
  HeisLattice l1 = make_lambda_n(1), l2 = make_lambda_n(2);
  CHECK(heis_membership(l2, HeisElementQ{1, 1, Rational(1) / 2}));
  CHECK(heis_membership(l1, HeisElementQ{1, 1, Rational(1) / 2}));
  CHECK_FALSE(heis_membership(l1, HeisElementQ{1, 1, 0}));
  CHECK(heis_membership(l1, l1.lift()));
  CHECK(heis_membership(l1, l1.lift_prime()));
  CHECK(heis_membership(l1, HeisElement{0, 0, l1.central_step()}));
  CHECK_FALSE(heis_membership(l1, HeisElement{0.5, 0, 0}));
}

TEST_CASE("enumeration against breadth-first generation") {
  HeisLattice l1 = make_lambda_n(1);
  auto pts = heis_enumerate(l1, 1.1);
  CHECK(pts.size() == 7);
  for (long long n : {1, 3}) {
    HeisLattice lat = make_lambda_n(n);
    std::vector<QElem> gens{{1, 0, 0}, {0, 1, 0}, {0, 0, Rational(1) / n}};
    auto all = testing::bfs_generate(gens, 3, 3);
    std::size_t inside = 0;
    for (const auto& e : all) {
      auto d = to_double(q(e));
      if (std::sqrt(d.x * d.x + d.y * d.y + d.t * d.t) <= 2.5) ++inside;
    }
    CHECK(heis_enumerate(lat, 2.5).size() == inside);
  }
}

TEST_CASE("dilated lattices fill space like s^-4") {
  HeisLattice l1 = make_lambda_n(1);
  auto count = [&](double s) { return double(heis_enumerate(dilate_lattice(s, l1), 2.0).size()); };
  double c1 = count(1), c2 = count(0.5), c4 = count(0.25);
  CHECK(c2 / c1 > 8);
  CHECK(c4 / c2 == doctest::Approx(16).epsilon(0.25));
  CHECK(haar_covolume(dilate_lattice(0.5, l1)) == doctest::Approx(1.0 / 16));
}

TEST_CASE("commutator and centre") {
  auto lat = make_heis_lattice({2, 0}, {0, 2}, 0, 0, 1);
  CHECK(commutator_subgroup(lat).step() == doctest::Approx(4));
  Rng r(41);
  for (int i = 0; i < 50; ++i) {
    long long n = r.integer(1, 5);
    auto l = make_heis_lattice({r.uniform(0.5, 2), r.uniform(-0.3, 0.3)}, {r.uniform(-0.3, 0.3), r.uniform(0.8, 2)},
                               r.uniform(0, 3), r.uniform(0, 3), n);
    CHECK(l.t >= 0);
    CHECK(l.t < l.central_step());
    CHECK(l.tp < l.central_step());
    // [L, L] in Z(L) in Z(H), index n
    auto c = heis_commutator(l.lift(), l.lift_prime());
    CHECK(std::abs(c.t) == doctest::Approx(commutator_subgroup(l).step()));
    CHECK(heis_membership(l, c));
    CHECK(heis_membership(l, HeisElement{0, 0, l.central_step()}));
    CHECK_FALSE(heis_membership(l, HeisElement{0, 0, l.central_step() / 2}));
    CHECK(commutator_subgroup(l).step() / center_subgroup(l).step() == doctest::Approx(double(n)));
    // conjugation leaves [L, L] alone
    HeisElement g{r.uniform(-1, 1), r.uniform(-1, 1), r.uniform(-1, 1)};
    auto conj = heis_mul(heis_mul(g, c), heis_inverse(g));
    CHECK(std::abs(conj.t - c.t) <= 1e-12);
  }
}

TEST_CASE("automorphisms of lattices") {
  HeisLattice l2 = make_lambda_n(2);
  CHECK(approx_equal(aut_apply_lattice(HeisAutomorphism::make({1, 0, 0, 1}), l2), l2));
  auto inner = aut_apply_lattice(HeisAutomorphism::inner(0.3, -0.7), l2);
  CHECK(approx_equal(ClosedSubgroupC::lattice(inner.z, inner.zp), ClosedSubgroupC::lattice(l2.z, l2.zp)));
  CHECK(inner.n == 2);
  auto stretched = aut_apply_lattice(HeisAutomorphism::make({2, 0, 0, 0.5}), make_lambda_n(3));
  CHECK(approx_equal(ClosedSubgroupC::lattice(stretched.z, stretched.zp), ClosedSubgroupC::lattice({2, 0}, {0, 0.5})));
  CHECK(stretched.n == 3);
  CHECK(stretched.covolume() == doctest::Approx(1));
  Rng r(42);
  for (int i = 0; i < 100; ++i) {
    std::array<double, 4> m;
    do {
      for (auto& v : m) v = r.uniform(-2, 2);
    } while (std::abs(m[0] * m[3] - m[1] * m[2]) < 0.2);
    auto a = HeisAutomorphism::make(m, r.uniform(-1, 1), r.uniform(-1, 1));
    long long n = r.integer(1, 6);
    auto lat = make_lambda_n(n);
    auto img = aut_apply_lattice(a, lat);
    CHECK(img.n == n);
    // the images of the generators lie in the image lattice
    CHECK(heis_membership(img, aut_apply(a, lat.lift()), 1e-7));
    CHECK(heis_membership(img, aut_apply(a, lat.lift_prime()), 1e-7));
    CHECK(heis_membership(img, aut_apply(a, HeisElement{0, 0, lat.central_step()}), 1e-7));
  }
  CHECK_THROWS_AS(HeisAutomorphism::make({1, 2, 2, 4}), DomainError);
}

TEST_CASE("sheared lattices Lambda_k") {
  for (long long k = 1; k <= 32; ++k) {
    auto lat = example11_lattice(1, k);
    CHECK(center_index(lat) == 1);
    CHECK(heis_membership(lat, HeisElement{0, 0, double(k)}));
    CHECK(lat.covolume() == doctest::Approx(double(k)));
    CHECK(approx_equal(ClosedSubgroupC::lattice(lat.z, lat.zp),
                       ClosedSubgroupC::lattice({1.0 / double(k), 0}, {0, double(k * k)})));
    CHECK(classify_heis(HeisSubgroup::lattice(lat)).stratum == HeisStratum::LN);
  }
  for (long long n : {2, 3}) {
    auto lat = example11_lattice(n, 5);
    CHECK(center_index(lat) == n);
    CHECK(commutator_subgroup(lat).step() == doctest::Approx(5.0 * n));
  }
  // (-1, 1)(1, 0) = (0, 1)
  CHECK(heis_membership(example11_lattice(1, 1), HeisElementQ{0, 0, 1}));
  auto A = HeisSubgroup::planar({1, 0}, ClosedSubgroupC::lattice({1, 0}, {0, 1}));
  CHECK(classify_heis(A).stratum == HeisStratum::CZ2);
  CHECK(projection(A).stratum() == Stratum::Cyclic);
}

TEST_CASE("exact lattices from generators") {
  std::vector<HeisElementQ> gens{{1, 0, 0}, {0, 1, 0}, {0, 0, Rational(1, 3)}};
  auto lat = heis_lattice_from_generators(gens);
  CHECK(lat.n == 3);
  REQUIRE(lat.exact.has_value());
  CHECK(lat.exact->step == Rational(1, 3));
  // redundant and skewed generators of the same group
  std::vector<HeisElementQ> skew{{1, 1, Rational(1, 2)}, {0, 1, 0}, {2, 1, 0}, {0, 0, Rational(1, 3)}};
  auto lat2 = heis_lattice_from_generators(skew);
  CHECK(lat2.n == 3);
  std::vector<HeisElementQ> line{{1, 0, 0}, {2, 0, 0}};
  CHECK_THROWS_AS(heis_lattice_from_generators(line), DomainError);
}

TEST_CASE("subgroup taxonomy") {
  auto label = [](const HeisSubgroup& s) { return classify_heis(s).label; };
  CHECK(label(HeisSubgroup::trivial()) == "{e}");
  CHECK(label(HeisSubgroup::central(ClosedSubgroupR::cyclic(2))) == "C_Z(H)");
  CHECK(label(HeisSubgroup::central(ClosedSubgroupR::full())) == "C_R(H)");
  CHECK(label(HeisSubgroup::central(ClosedSubgroupR::trivial())) == "{e}");
  CHECK(label(HeisSubgroup::planar({1, 1}, ClosedSubgroupC::cyclic({1, 0}))) == "C_Z(H)");
  CHECK(label(HeisSubgroup::planar({1, 1}, ClosedSubgroupC::line({1, 1}))) == "C_R(H)");
  CHECK(label(HeisSubgroup::planar({1, 1}, ClosedSubgroupC::lattice({1, 0}, {0, 1}))) == "C_Z2(H)");
  CHECK(label(HeisSubgroup::planar({1, 1}, ClosedSubgroupC::line_cyclic({1, 0}, {0, 1}))) == "C_RxZ(H)");
  CHECK(label(HeisSubgroup::planar({1, 1}, ClosedSubgroupC::full())) == "C_R2(H)");
  CHECK(label(pullback_center(ClosedSubgroupC::zero())) == "C_R(H)");
  CHECK(label(pullback_center(ClosedSubgroupC::cyclic({1, 0}))) == "C_RxZ(H)");
  CHECK(label(pullback_center(ClosedSubgroupC::line({1, 0}))) == "C_R2(H)");
  CHECK(label(pullback_center(ClosedSubgroupC::line_cyclic({1, 0}, {0, 1}))) == "p^-1(C_RxZ(C))");
  CHECK(label(pullback_center(ClosedSubgroupC::lattice({1, 0}, {0, 1}))) == "L_inf(H)");
  CHECK(label(pullback_center(ClosedSubgroupC::full())) == "H");
  CHECK(label(HeisSubgroup::whole()) == "H");
  // the direction is taken with arg in [0, pi)
  auto a = HeisSubgroup::planar({-1, 0}, ClosedSubgroupC::cyclic({1, 1}));
  auto b = HeisSubgroup::planar({1, 0}, ClosedSubgroupC::cyclic({-1, 1}));
  const auto& pa = std::get<HeisSubgroup::Planar>(a.data());
  const auto& pb = std::get<HeisSubgroup::Planar>(b.data());
  CHECK(pa.u == pb.u);
  CHECK(approx_equal(pa.sub, pb.sub));
  // vertical planar data is central
  CHECK(std::holds_alternative<HeisSubgroup::Central>(HeisSubgroup::planar({1, 0}, ClosedSubgroupC::cyclic({0, 2})).data()));
}

TEST_CASE("non-abelian subgroups are pullbacks or lattices") {
  std::vector<HeisSubgroup> all{HeisSubgroup::trivial(),
                                HeisSubgroup::central(ClosedSubgroupR::cyclic(1)),
                                HeisSubgroup::planar({0, 1}, ClosedSubgroupC::lattice({1, 0}, {0.2, 1})),
                                HeisSubgroup::lattice(make_lambda_n(2))};
  Rng r(43);
  for (auto s : testing::all_strata()) all.push_back(pullback_center(testing::random_subgroup(r, s)));
  for (const auto& s : all) {
    bool kind_ok = std::holds_alternative<HeisSubgroup::Pullback>(s.data()) ||
                   std::holds_alternative<HeisSubgroup::Lattice>(s.data());
    if (!s.is_abelian()) CHECK(kind_ok);
    // p(S) is a closed subgroup of C that survives canonicalization
    ClosedSubgroupC p = projection(s);
    CHECK(approx_equal(p, p));
  }
}

TEST_CASE("closure of exact generators in H") {
  using E = HeisElementQ;
  std::vector<E> lam{{1, 0, 0}, {0, 1, 0}};
  auto s = closure_of_generated(std::span<const E>(lam));
  CHECK(classify_heis(s).label == "L_1(H)");
  std::vector<E> central{{0, 0, Rational(1, 2)}, {0, 0, Rational(1, 3)}};
  CHECK(classify_heis(closure_of_generated(std::span<const E>(central))).label == "C_Z(H)");
  std::vector<E> planar{{1, 0, 0}, {0, 0, 1}};
  auto pl = closure_of_generated(std::span<const E>(planar));
  CHECK(classify_heis(pl).label == "C_Z2(H)");
  std::vector<E> one{{1, 1, 0}};
  CHECK(classify_heis(closure_of_generated(std::span<const E>(one))).label == "C_Z(H)");
  std::vector<E> none{{0, 0, 0}};
  CHECK(classify_heis(closure_of_generated(std::span<const E>(none))).label == "{e}");
}

TEST_CASE("dilations of subgroups") {
  auto d = dilate(2, HeisSubgroup::central(ClosedSubgroupR::cyclic(1)));
  CHECK(std::get<HeisSubgroup::Central>(d.data()).sub.step() == doctest::Approx(4));
  auto l = dilate(0.5, HeisSubgroup::lattice(make_lambda_n(1)));
  const auto& lat = std::get<HeisSubgroup::Lattice>(l.data()).lattice;
  CHECK(lat.covolume() == doctest::Approx(0.25));
  CHECK(lat.n == 1);
  CHECK_THROWS_AS(dilate(-1, HeisSubgroup::trivial()), DomainError);
}

TEST_CASE("Heisenberg Mahler verdicts") {
  HeisLattice l1 = make_lambda_n(1);
  auto single = heis_mahler_verdict({l1}, 2, 0.5);
  CHECK(single.certified);
  CHECK(single.shortest.front() == doctest::Approx(1));
  std::vector<HeisLattice> grow, shrink;
  for (int k = 1; k <= 8; ++k) {
    grow.push_back(dilate_lattice(double(k), l1));
    shrink.push_back(dilate_lattice(1.0 / double(k), l1));
  }
  auto g = heis_mahler_verdict(grow, 2, 0.5);
  CHECK_FALSE(g.certified);
  CHECK(g.volume_growth);
  CHECK(g.volumes.back() == doctest::Approx(std::pow(8.0, 4)));
  auto s = heis_mahler_verdict(shrink, 2, 0.5);
  CHECK_FALSE(s.certified);
  CHECK_FALSE(s.neighborhood_ok.back());
  CHECK(s.neighborhood_ok.front());
}

}
