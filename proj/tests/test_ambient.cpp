#include <doctest.h>

#include "chabauty/ambient.hpp"
#include "support.hpp"

using namespace chabauty;
using testing::Rng;

namespace {

HeisElementQ rand_q(Rng& r) { return {r.rational(20, 6), r.rational(20, 6), r.rational(20, 6)}; }
HeisElement rand_d(Rng& r) { return {r.uniform(-3, 3), r.uniform(-3, 3), r.uniform(-3, 3)}; }

double diff(const HeisElement& a, const HeisElement& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.t - b.t)});
}

HeisAutomorphism rand_aut(Rng& r) {
  std::array<double, 4> m;
  do {
    for (auto& v : m) v = r.uniform(-2, 2);
  } while (std::abs(m[0] * m[3] - m[1] * m[2]) < 0.1);
  return HeisAutomorphism::make(m, r.uniform(-2, 2), r.uniform(-2, 2));
}

}  // namespace

TEST_SUITE("ambient") {

TEST_CASE("group law, exact") {
  Rng r(11);
  for (int i = 0; i < 500; ++i) {
    auto a = rand_q(r), b = rand_q(r), c = rand_q(r);
    CHECK(heis_mul(heis_mul(a, b), c) == heis_mul(a, heis_mul(b, c)));
    CHECK(heis_mul(a, heis_inverse(a)) == HeisElementQ{});
  }
}

TEST_CASE("group law, floating") {
  Rng r(12);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    auto a = rand_d(r), b = rand_d(r), c = rand_d(r);
    worst = std::max(worst, diff(heis_mul(heis_mul(a, b), c), heis_mul(a, heis_mul(b, c))));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("commutator closed formula vs products") {
  Rng r(13);
  for (int i = 0; i < 1000; ++i) {
    auto x = rand_q(r), y = rand_q(r);
    auto prod = heis_mul(heis_mul(heis_inverse(x), heis_inverse(y)), heis_mul(x, y));
    REQUIRE(heis_commutator(x, y) == prod);
    CHECK(prod.x == 0);
    CHECK(prod.y == 0);
    CHECK(prod.t == x.y * y.x - x.x * y.y);
    // the other bracket order gives the same central element
    CHECK(heis_mul(heis_mul(x, y), heis_mul(heis_inverse(x), heis_inverse(y))) == prod);
  }
  // [(1,5),(i,7)]: the sign is the one the product forces
  HeisElementQ a{1, 0, 5}, b{0, 1, 7};
  CHECK(heis_commutator(a, b) == HeisElementQ{0, 0, -1});
  CHECK(heis_commutator(a, a) == HeisElementQ{});
  CHECK(heis_commutator(HeisElementQ{2, 0, 0}, HeisElementQ{3, 0, 0}) == HeisElementQ{});
}

TEST_CASE("central scaling is det(M)") {
  Rng r(14);
  for (int i = 0; i < 200; ++i) {
    auto a = rand_aut(r);
    HeisElement c{0, 0, r.uniform(-2, 2)};
    CHECK(aut_apply(a, c).t == doctest::Approx(a.det() * c.t).epsilon(1e-12));
    // commutators scale by det, not det^2
    auto x = rand_d(r), y = rand_d(r);
    auto lhs = heis_commutator(aut_apply(a, x), aut_apply(a, y));
    CHECK(lhs.t == doctest::Approx(a.det() * heis_commutator(x, y).t).epsilon(1e-10));
  }
}

TEST_CASE("automorphisms are homomorphisms") {
  Rng r(15);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    auto a = rand_aut(r);
    auto x = rand_d(r), y = rand_d(r);
    worst = std::max(worst, diff(aut_apply(a, heis_mul(x, y)), heis_mul(aut_apply(a, x), aut_apply(a, y))));
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("exact automorphisms compose") {
  Rng r(16);
  for (int i = 0; i < 200; ++i) {
    auto make = [&] {
      std::array<Rational, 4> m;
      do {
        for (auto& v : m) v = r.rational(5, 3);
      } while (m[0] * m[3] - m[1] * m[2] == 0);
      return HeisAutomorphismQ::make(m, r.rational(5, 3), r.rational(5, 3));
    };
    auto a = make(), b = make();
    auto x = rand_q(r), y = rand_q(r);
    CHECK(aut_apply(a, heis_mul(x, y)) == heis_mul(aut_apply(a, x), aut_apply(a, y)));
    CHECK(aut_apply(aut_compose(a, b), x) == aut_apply(a, aut_apply(b, x)));
  }
}

TEST_CASE("diag(s, s) is the dilation") {
  Rng r(17);
  for (int i = 0; i < 100; ++i) {
    double s = r.uniform(0.1, 5);
    auto x = rand_d(r);
    auto a = HeisAutomorphism::make({s, 0, 0, s});
    CHECK(diff(aut_apply(a, x), HeisElement{s * x.x, s * x.y, s * s * x.t}) <= 1e-12);
    CHECK(diff(dilate(s, x), aut_apply(a, x)) <= 1e-12);
    auto y = rand_d(r);
    CHECK(diff(dilate(s, heis_mul(x, y)), heis_mul(dilate(s, x), dilate(s, y))) <= 1e-10);
  }
}

TEST_CASE("inner automorphism") {
  HeisElementQ w{1, 2, 0};
  auto a = HeisAutomorphismQ::inner(w.x, w.y);
  HeisElementQ x{Rational(3), Rational(-1), Rational(1) / 2};
  // conjugation by w
  auto conj = heis_mul(heis_mul(w, x), heis_inverse(w));
  CHECK(aut_apply(a, x) == conj);
}

}
