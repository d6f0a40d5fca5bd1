#include <doctest.h>

#include <cstdlib>

#include "lorentz3/roots.hpp"
#include "support.hpp"

using namespace lorentz3;
using lorentz3::testing::q;
using lorentz3::testing::random_rational;
using Q = Rational;

// gcd over floating coefficients is not offered at all.
template <class T>
concept HasGcd = requires(Poly<T> p) { poly_gcd(p, p); };
static_assert(HasGcd<Rational>);
static_assert(!HasGcd<double>);

TEST_SUITE("kernel") {
  TEST_CASE("rational parsing") {
    CHECK(q("3/6") == Q(1, 2));
    CHECK(q("-4/2") == Q(-2));
    CHECK(q(" 7 ") == Q(7));
    CHECK(q("1.25e-2") == Q(1, 80));
    CHECK(q("-0.5") == Q(-1, 2));
    CHECK(q("2E3") == Q(2000));
    CHECK_THROWS_AS(q("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(q("abc"), std::invalid_argument);
    CHECK_THROWS_AS(q(""), std::invalid_argument);
    CHECK(looks_like_float("0.5"));
    CHECK(looks_like_float("1e3"));
    CHECK_FALSE(looks_like_float("1/3"));
    CHECK_FALSE(looks_like_float("-12"));
  }

  TEST_CASE("tolerance is relative above 1") {
    const Tolerance t{1e-9};
    CHECK(t.equal(1e12, 1e12 + 10));
    CHECK_FALSE(t.equal(1.0, 1.0 + 1e-6));
    CHECK(t.is_zero(1e-10));
    CHECK(t.sign(-1e-3) == -1);
    CHECK(t.compare(2.0, 2.0 + 1e-12) == 0);
    CHECK(t.tightened(10).tau == doctest::Approx(1e-10));
  }

  TEST_CASE("tau from environment") {
    ::setenv("LORENTZ3_TAU", "1e-6", 1);
    CHECK(tau_from_env() == doctest::Approx(1e-6));
    ::setenv("LORENTZ3_TAU", "junk", 1);
    CHECK(tau_from_env() == kDefaultTau);
    ::unsetenv("LORENTZ3_TAU");
    CHECK(tau_from_env() == kDefaultTau);
  }

  TEST_CASE("mat3 determinant, inverse, rank") {
    const Mat3<Q> m{{Q(2), Q(1), Q(0)}, {Q(0), Q(1), Q(3)}, {Q(1), Q(0), Q(1)}};
    CHECK(m.det() == Q(5));
    CHECK(m * inverse(m) == Mat3<Q>::identity());
    CHECK(mat3_rank(m) == 3);
    const Mat3<Q> r2{{Q(1), Q(2), Q(3)}, {Q(2), Q(4), Q(6)}, {Q(0), Q(1), Q(1)}};
    CHECK(mat3_rank(r2) == 2);
    CHECK(mat3_rank(Mat3<Q>{{Q(1), Q(2), Q(3)}, {Q(2), Q(4), Q(6)}, {Q(3), Q(6), Q(9)}}) == 1);
    CHECK(mat3_rank(Mat3<Q>::zero()) == 0);
    CHECK_THROWS_AS(inverse(r2), SingularMatrix);

    const Mat3<double> d = to_double(r2);
    CHECK(mat3_rank(d, Field<double>{}) == 2);
    Mat3<double> nudged = d;
    nudged(2, 2) += 1e-12;
    CHECK(mat3_rank(d + Mat3<double>::zero(), Field<double>{}) == 2);
    CHECK(mat3_rank(nudged, Field<double>{}) == 2);
  }

  TEST_CASE("gcd oracle") {
    // (x-3)(x+1)^2 and 3(x+1)^2: gcd x^2+2x+1.
    const Poly<Q> a{Q(-3), Q(-5), Q(-1), Q(1)};
    const Poly<Q> b{Q(3), Q(6), Q(3)};
    CHECK(poly_gcd(a, b) == Poly<Q>{Q(1), Q(2), Q(1)});
    CHECK(poly_gcd(a, Poly<Q>{Q(1)}) == Poly<Q>{Q(1)});
    CHECK_THROWS(poly_gcd(Poly<Q>{}, Poly<Q>{}));
    const auto [quo, rem] = divmod(a, Poly<Q>{Q(1), Q(1)});
    CHECK(rem.is_zero());
    CHECK(quo == Poly<Q>{Q(-3), Q(-2), Q(1)});
    CHECK_THROWS_AS(divmod(a, Poly<Q>{}), std::domain_error);
  }

  TEST_CASE("char poly and discriminant") {
    // A2(2,0) operator.
    const Mat3<Q> K{{Q(1), Q(2), Q(0)}, {Q(-2), Q(-3), Q(0)}, {Q(0), Q(0), Q(3)}};
    const Poly<Q> p = char_poly(K);
    CHECK(p == Poly<Q>{Q(-3), Q(-5), Q(-1), Q(1)});
    CHECK(cubic_discriminant(p) == Q(0));
    CHECK(square_free_part(p) == Poly<Q>{Q(-3), Q(-2), Q(1)});
    // (x-1)(x-2)(x-3): disc = 4.
    CHECK(cubic_discriminant(Poly<Q>{Q(-6), Q(11), Q(-6), Q(1)}) == Q(4));
    // x^3 + 1 has a complex pair.
    CHECK(cubic_discriminant(Poly<Q>{Q(1), Q(0), Q(0), Q(1)}) < 0);
  }

  TEST_CASE("Cayley-Hamilton on random rational matrices") {
    std::mt19937_64 rng(11);
    for (int n = 0; n < 200; ++n) {
      Mat3<Q> m;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = random_rational(rng, 5, 4);
      CHECK(char_poly(m)(m) == Mat3<Q>::zero());
    }
  }

  TEST_CASE("exact root data") {
    SUBCASE("three rational roots") {
      const auto rd = cubic_root_data(Poly<Q>{Q(-6), Q(11), Q(-6), Q(1)});
      REQUIRE(rd.roots.size() == 3);
      CHECK(rd.roots[0].exact_value() == Q(1));
      CHECK(rd.roots[2].exact_value() == Q(3));
    }
    SUBCASE("repeated roots found exactly") {
      const auto rd = cubic_root_data(Poly<Q>{Q(-3), Q(-5), Q(-1), Q(1)});
      REQUIRE(rd.roots.size() == 2);
      CHECK(rd.roots[0].exact_value() == Q(-1));
      CHECK(rd.multiplicity[0] == 2);
      CHECK(rd.roots[1].exact_value() == Q(3));
    }
    SUBCASE("irreducible cubic isolated") {
      // x^3 - 3x + 1: roots 2cos(2pi k/9 ...) about -1.8794, 0.3473, 1.5321.
      const auto rd = cubic_root_data(Poly<Q>{Q(1), Q(-3), Q(0), Q(1)});
      REQUIRE(rd.roots.size() == 3);
      const double want[3] = {-1.8793852415718, 0.3472963553339, 1.5320888862380};
      for (int i = 0; i < 3; ++i) {
        auto r = rd.roots[i];
        CHECK_FALSE(r.is_exact());
        CHECK(r.approx() == doctest::Approx(want[i]).epsilon(1e-12));
        r.refine(40);
        CHECK(r.lo() < Q(want[i] + 1e-9));
        CHECK(r.hi() > Q(want[i] - 1e-9));
      }
    }
    SUBCASE("complex pair") {
      const auto rd = cubic_root_data(Poly<Q>{Q(-2), Q(0), Q(0), Q(1)});
      CHECK(rd.disc_sign < 0);
      REQUIRE(rd.roots.size() == 1);
      CHECK(rd.roots[0].approx() == doctest::Approx(std::cbrt(2.0)));
      CHECK(rd.pair_re == doctest::Approx(-std::cbrt(2.0) / 2));
      CHECK(rd.pair_im == doctest::Approx(std::cbrt(2.0) * std::sqrt(3.0) / 2));
    }
  }

  TEST_CASE("approx root data clusters") {
    const Field<double> f{};
    const auto triple = cubic_root_data(Poly<double>{-8.0, 12.0, -6.0, 1.0}, f);
    REQUIRE(triple.roots.size() == 1);
    CHECK(triple.multiplicity[0] == 3);
    CHECK(triple.roots[0] == doctest::Approx(2.0));
    const auto dbl = cubic_root_data(Poly<double>{-3.0, -5.0, -1.0, 1.0}, f);
    REQUIRE(dbl.roots.size() == 2);
    CHECK(dbl.multiplicity[0] == 2);
  }
}
