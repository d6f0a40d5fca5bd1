#include <doctest.h>

#include "lorentz3/symspace.hpp"
#include "support.hpp"

using namespace lorentz3;
using lorentz3::testing::random_rational;
using Q = Rational;

namespace {

Mat3<Q> single(int i, int j, const Q& v) {
  Mat3<Q> m;
  m(i, j) = v;
  return m;
}

}  // namespace

TEST_SUITE("symspace") {
  TEST_CASE("space forms are c times identity") {
    for (long c : {-3L, 0L, 2L}) {
      const auto op = symmetric_operator(SymmetricSpaceSpec<Q>{SpaceForm<Q>{Q(c)}});
      CHECK(op.K == Q(c) * Mat3<Q>::identity());
      CHECK(is_self_adjoint(op));
    }
    CHECK(spec_kind_name(SymmetricSpaceSpec<Q>{SpaceForm<Q>{Q(0)}}) == "R3_1");
    CHECK(spec_kind_name(SymmetricSpaceSpec<Q>{SpaceForm<Q>{Q(1)}}) == "S3_1");
    CHECK(spec_kind_name(SymmetricSpaceSpec<Q>{SpaceForm<Q>{Q(-1)}}) == "H3_1");
  }

  TEST_CASE("products have exactly one nonzero eigenvalue, the factor curvature") {
    const std::pair<ProductKind, long> cases[] = {
        {ProductKind::R_x_S2_1, 2}, {ProductKind::R_x_H2_1, -2}, {ProductKind::S2_x_R_1, 3}, {ProductKind::H2_x_R_1, -1}};
    for (auto [kind, c] : cases) {
      const SymmetricSpaceSpec<Q> spec{Product<Q>{kind, Q(c)}};
      CHECK_NOTHROW(validate_spec(spec));
      const auto op = symmetric_operator(spec);
      CHECK(char_poly(op.K) == Poly<Q>{Q(0), Q(0), Q(-c), Q(1)});
      CHECK(op.K == Mat3<Q>::diag(Q(c), Q(0), Q(0)));
      CHECK(is_self_adjoint(op));
      CHECK(product_kind_from_name(product_kind_name(kind)) == kind);
      CHECK(spec_kind_name(spec) == product_kind_name(kind));
    }
  }

  TEST_CASE("validation") {
    CHECK_THROWS_AS(validate_spec(SymmetricSpaceSpec<Q>{Product<Q>{ProductKind::S2_x_R_1, Q(0)}}), std::invalid_argument);
    CHECK_THROWS_AS(validate_spec(SymmetricSpaceSpec<Q>{Product<Q>{ProductKind::S2_x_R_1, Q(-1)}}), std::invalid_argument);
    CHECK_THROWS_AS(validate_spec(SymmetricSpaceSpec<Q>{Product<Q>{ProductKind::R_x_H2_1, Q(1)}}), std::invalid_argument);
    PlaneWaveLike<Q> w;
    w.epsilon = 0;
    CHECK_THROWS_AS(validate_spec(SymmetricSpaceSpec<Q>{w}), std::invalid_argument);
    CHECK_FALSE(product_kind_from_name("R_x_R").has_value());
  }

  TEST_CASE("plane wave: single entry alpha/epsilon") {
    PlaneWaveLike<Q> w{1, Q(2), Poly<Q>{Q(0), Q(1)}, Poly<Q>{Q(0), Q(0), Q(1)}};
    auto op = symmetric_operator(SymmetricSpaceSpec<Q>{w});
    CHECK(op.K == single(0, 2, Q(2)));
    CHECK(op.K * op.K == Mat3<Q>::zero());
    const Mat3<Q> g2{{Q(0), Q(0), Q(-1)}, {Q(0), Q(-1), Q(0)}, {Q(-1), Q(0), Q(0)}};
    CHECK(op.gram2 == g2);
    CHECK(is_self_adjoint(op));

    const CoordinatePoint<Q> p{Q(3, 10), Q(-6, 5), Q(7, 10)};
    const auto co = coordinate_curvature_operator(w, p);
    CHECK(co.K == op.K);
    CHECK(co.gram2 == op.gram2);

    PlaneWaveLike<Q> m{-1, Q(1), {}, {}};
    CHECK(symmetric_operator(SymmetricSpaceSpec<Q>{m}).K == single(0, 2, Q(-1)));
    CHECK(coordinate_curvature_operator(m, p).K == single(0, 2, Q(-1)));

    PlaneWaveLike<Q> flat{-1, Q(0), {}, {}};
    CHECK(symmetric_operator(SymmetricSpaceSpec<Q>{flat}).K == Mat3<Q>::zero());
    PlaneWaveLike<Q> flat1{1, Q(0), {}, {}};
    CHECK(coordinate_curvature_operator(flat1, p).K == Mat3<Q>::zero());
    CHECK(spec_kind_name(SymmetricSpaceSpec<Q>{flat1}) == "plane_wave");
  }

  TEST_CASE("coordinate oracle is point, beta and xi independent") {
    std::mt19937_64 rng(23);
    for (int n = 0; n < 20; ++n) {
      PlaneWaveLike<Q> w;
      w.epsilon = uniform_int(rng, 0, 1) ? 1 : -1;
      w.alpha = random_rational(rng, 4, 5);
      w.beta = Poly<Q>{random_rational(rng, 3, 3), random_rational(rng, 3, 3), random_rational(rng, 3, 3)};
      w.xi = Poly<Q>{random_rational(rng, 3, 3), random_rational(rng, 3, 3), random_rational(rng, 3, 3),
                     random_rational(rng, 3, 3)};
      const auto ref = symmetric_operator(SymmetricSpaceSpec<Q>{w});
      CHECK(ref.K == single(0, 2, Q(w.alpha / w.epsilon)));
      for (int k = 0; k < 5; ++k) {
        const CoordinatePoint<Q> p{random_rational(rng, 5, 7), random_rational(rng, 5, 7), random_rational(rng, 5, 7)};
        CHECK(coordinate_curvature_operator(w, p).K == ref.K);
      }
    }
  }

  TEST_CASE("double path") {
    PlaneWaveLike<double> w{1, 2.0, Poly<double>{0.0, 1.0}, Poly<double>{0.0, 0.0, 1.0}};
    const auto op = coordinate_curvature_operator(w, CoordinatePoint<double>{0.3, -1.2, 0.7});
    CHECK(op.K(0, 2) == doctest::Approx(2.0));
    CHECK(op.K.max_abs() == doctest::Approx(2.0));
  }
}
