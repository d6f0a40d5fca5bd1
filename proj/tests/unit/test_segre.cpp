#include <doctest.h>

#include "support.hpp"

using namespace lorentz3;
using namespace lorentz3::testing;
using Q = Rational;

namespace {

constexpr SegreType kTypes[] = {SegreType::S111, SegreType::S1ZZ, SegreType::S21, SegreType::S3};

}  // namespace

TEST_SUITE("segre") {
  TEST_CASE("A2(2,0) operator is {21} with simple 3, Jordan -1") {
    const Mat3<Q> K{{Q(3), Q(0), Q(0)}, {Q(0), Q(-3), Q(-2)}, {Q(0), Q(2), Q(1)}};
    const auto d = classify(K);
    CHECK(d.type == SegreType::S21);
    CHECK(d.eigenvalues[0].exact_value() == Q(3));
    CHECK(d.jordan_eigenvalue().exact_value() == Q(-1));
    CHECK(d == segre_21(Q(3), Q(-1)));
  }

  TEST_CASE("basic shapes") {
    const auto id = classify(Mat3<Q>::identity());
    CHECK(id.type == SegreType::S111);
    REQUIRE(id.eigenvalues.size() == 3);
    for (const auto& e : id.eigenvalues) CHECK(e.exact_value() == Q(1));

    const Mat3<Q> rot{{Q(1), Q(0), Q(0)}, {Q(0), Q(0), Q(-1)}, {Q(0), Q(1), Q(0)}};
    const auto z = classify(rot);
    CHECK(z.type == SegreType::S1ZZ);
    CHECK(z.eigenvalues[0].exact_value() == Q(1));
    CHECK(z.pair_re == 0.0);
    CHECK(z.pair_im == doctest::Approx(1.0));

    const Mat3<Q> n{{Q(0), Q(1), Q(0)}, {Q(0), Q(0), Q(1)}, {Q(0), Q(0), Q(0)}};
    const auto j3 = classify(n);
    CHECK(j3.type == SegreType::S3);
    CHECK(j3.eigenvalues[0].exact_value() == Q(0));
    CHECK(mat3_rank(n) == 2);

    // Nilpotent of index 2 with a zero simple eigenvalue: {21} at 0.
    Mat3<Q> pw;
    pw(0, 2) = Q(2);
    const auto d = classify(pw);
    CHECK(d.type == SegreType::S21);
    CHECK(d == segre_21(Q(0), Q(0)));
    CHECK_THROWS_AS(classify(Mat3<Q>::identity()).jordan_eigenvalue(), std::logic_error);
  }

  TEST_CASE("canonical witnesses") {
    CHECK(canonical_witness(segre_111(Q(1), Q(-1), Q(-1))) == Mat3<Q>::diag(Q(-1), Q(-1), Q(1)));
    const Mat3<Q> j{{Q(3), Q(0), Q(0)}, {Q(0), Q(-1), Q(1)}, {Q(0), Q(0), Q(-1)}};
    CHECK(canonical_witness(segre_21(Q(3), Q(-1))) == j);
    const Mat3<Q> c{{Q(2), Q(0), Q(0)}, {Q(0), Q(1), Q(-3)}, {Q(0), Q(3), Q(1)}};
    CHECK(canonical_witness(segre_1zz(Q(2), Q(1), Q(3))) == c);
  }

  TEST_CASE("type names") {
    for (SegreType t : kTypes) CHECK(segre_type_from_name(segre_type_name(t)) == t);
    CHECK(segre_type_from_name("{12}") == SegreType::S21);
    CHECK(segre_type_from_name("S3") == SegreType::S3);
    CHECK_FALSE(segre_type_from_name("{4}").has_value());
  }

  TEST_CASE("round trip and similarity invariance, exact") {
    std::mt19937_64 rng(99);
    for (int n = 0; n < 1000; ++n) {
      const SegreType t = kTypes[n % 4];
      const auto d = random_segre(rng, t);
      const Mat3<Q> w = canonical_witness(d);
      CHECK(classify(w) == d);
      const Mat3<Q> s = random_invertible(rng);
      const Mat3<Q> k = inverse(s) * w * s;
      CHECK(classify(k) == d);
      CHECK(char_poly(k) == char_poly(w));
    }
  }

  TEST_CASE("vieta on classified eigenvalues") {
    std::mt19937_64 rng(3);
    for (int n = 0; n < 200; ++n) {
      const auto d = random_segre(rng, SegreType::S111);
      const auto c = classify(canonical_witness(d));
      Q sum(0), prod(1);
      for (const auto& e : c.eigenvalues) {
        sum += e.exact_value();
        prod *= e.exact_value();
      }
      CHECK(sum == -c.char_poly.coeff(2));
      CHECK(prod == -c.char_poly.coeff(0));
    }
  }

  TEST_CASE("irrational eigenvalues stay exact") {
    // Companion of x^3 - 3x + 1: three irrational roots, distinct.
    const Poly<Q> p{Q(1), Q(-3), Q(0), Q(1)};
    const auto d = segre_from_char_poly(SegreType::S111, p);
    const Mat3<Q> w = canonical_witness(d);
    std::mt19937_64 rng(1);
    const Mat3<Q> s = random_invertible(rng);
    const auto c = classify(inverse(s) * w * s);
    CHECK(c.type == SegreType::S111);
    CHECK(c.char_poly == p);
    CHECK_FALSE(c.eigenvalues[0].is_exact());

    // x^3 - 2: real root irrational, pair -2^(1/3)/2 +- i ...
    const auto z = classify(canonical_witness(segre_from_char_poly(SegreType::S1ZZ, Poly<Q>{Q(-2), Q(0), Q(0), Q(1)})));
    CHECK(z.type == SegreType::S1ZZ);
    CHECK(z.pair_re == doctest::Approx(-std::cbrt(2.0) / 2));

    // Non-square imaginary part squared.
    const auto zz = segre_1zz_sq(Q(1), Q(0), Q(2));
    CHECK(classify(canonical_witness(zz)) == zz);
  }

  TEST_CASE("segre_from_char_poly rejects mismatched types") {
    const Poly<Q> dist{Q(-6), Q(11), Q(-6), Q(1)};
    CHECK_THROWS_AS(segre_from_char_poly(SegreType::S1ZZ, dist), std::invalid_argument);
    CHECK_THROWS_AS(segre_from_char_poly(SegreType::S21, dist), std::invalid_argument);
    CHECK_THROWS_AS(segre_from_char_poly(SegreType::S3, dist), std::invalid_argument);
    CHECK_THROWS_AS(segre_from_char_poly(SegreType::S111, Poly<Q>{Q(1), Q(0), Q(0), Q(1)}), std::invalid_argument);
    CHECK_THROWS_AS(segre_from_char_poly(SegreType::S111, Poly<Q>{Q(1), Q(1)}), std::invalid_argument);
    CHECK_THROWS_AS(segre_1zz_sq(Q(1), Q(0), Q(0)), std::invalid_argument);
    const auto d = segre_from_char_poly(SegreType::S21, Poly<Q>{Q(-3), Q(-5), Q(-1), Q(1)});
    CHECK(d.eigenvalues[0].exact_value() == Q(3));
    CHECK(d.jordan_eigenvalue().exact_value() == Q(-1));
  }

  TEST_CASE("approx agrees with exact above 10 tau") {
    std::mt19937_64 rng(41);
    const Field<double> f{};
    int compared = 0;
    for (int n = 0; n < 1000; ++n) {
      const auto d = random_segre(rng, kTypes[n % 4]);
      const Mat3<Q> s = random_invertible(rng);
      const Mat3<Q> k = inverse(s) * canonical_witness(d) * s;
      const auto a = classify(to_double(k), f);
      REQUIRE(a.tau.has_value());
      CHECK(*a.tau == f.tau());
      CHECK(segre_close(a, to_double(d), 1e-5));
      ++compared;
    }
    CHECK(compared == 1000);
  }

  TEST_CASE("approx mode on noisy input") {
    const Field<double> f{};
    Mat3<double> j{{2.0, 0, 0}, {0, -1.0, 1.0}, {0, 0, -1.0}};
    j(1, 1) += 1e-13;
    const auto d = classify(j, f);
    CHECK(d.type == SegreType::S21);
    CHECK(d.eigenvalues[1] == doctest::Approx(-1.0));
    CHECK(classify(Mat3<double>::diag(1.0, 1.0 + 1e-3, 2.0), f).type == SegreType::S111);
  }
}
