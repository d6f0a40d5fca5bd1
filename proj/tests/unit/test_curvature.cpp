#include <doctest.h>

#include "lorentz3/curvature.hpp"
#include "lorentz3/poly.hpp"
#include "support.hpp"

using namespace lorentz3;
using Q = Rational;

namespace {

MetricLieAlgebra<Q> alg(Family f, std::vector<Q> v) { return build(FamilyParams<Q>{f, std::move(v)}); }

Vec3<Q> v3(const Q& a, const Q& b, const Q& c) { return {a, b, c}; }

}  // namespace

TEST_SUITE("curvature") {
  TEST_CASE("A2(2,0) connection against hand Koszul table") {
    const auto a = alg(Family::A2, {Q(2), Q(0)});
    const auto c = levi_civita(a);
    // Frozen from an independent symbolic evaluation of the Koszul formula.
    const Vec3<Q> want[3][3] = {
        {v3(0, 0, 0), v3(0, 0, 1), v3(0, 1, 0)},
        {v3(0, 1, 0), v3(-1, 0, 0), v3(0, 0, 0)},
        {v3(0, 2, -1), v3(-2, 0, 0), v3(-1, 0, 0)},
    };
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(c.nabla[i][j] == want[i][j]);
    const auto op = curvature_operator(a);
    const Mat3<Q> K{{Q(1), Q(2), Q(0)}, {Q(-2), Q(-3), Q(0)}, {Q(0), Q(0), Q(3)}};
    CHECK(op.K == K);
  }

  TEST_CASE("bi-invariant A1(-L,L,L): nabla_X Y = [X,Y]/2, K = -L^2/4") {
    for (long l : {1L, -2L, 3L}) {
      const Q L(l);
      const auto a = alg(Family::A1, {Q(-L), L, L});
      const auto c = levi_civita(a);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(c.nabla[i][j] == Q(1, 2) * a.sc(i, j));
      const Q k = -L * L / 4;
      CHECK(curvature_operator(a).K == Mat3<Q>::diag(k, k, k));
    }
  }

  TEST_CASE("A1(L,L,L) tensor components") {
    const Q L(2);
    const auto a = alg(Family::A1, {L, L, L});
    const auto r = curvature_tensor(a, levi_civita(a));
    CHECK(r(0, 1, 0, 1) == L * L / 4);
    CHECK(r(0, 2, 0, 2) == L * L / 4);
    CHECK(r(1, 2, 1, 2) == Q(7) * L * L / 4);
    CHECK(r(1, 0, 0, 1) == -L * L / 4);
    CHECK(r(0, 1, 0, 2) == 0);
    CHECK(has_curvature_symmetries(r));
    const auto op = curvature_operator(a);
    CHECK(op.K == Mat3<Q>::diag(-L * L / 4, -L * L / 4, Q(7) * L * L / 4));
  }

  TEST_CASE("abelian is flat") {
    const auto a = alg(Family::A1, {Q(0), Q(0), Q(0)});
    const auto c = levi_civita(a);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(c.nabla[i][j] == zero_vec<Q>());
    CHECK(curvature_operator(a).K == Mat3<Q>::zero());
  }

  TEST_CASE("lambda2 gram") {
    CHECK(lambda2_gram(Mat3<Q>::diag(Q(1), Q(1), Q(-1))) == Mat3<Q>::diag(Q(1), Q(-1), Q(-1)));
    CHECK(lambda2_gram(Mat3<Q>::diag(Q(-1), Q(1), Q(1))) == Mat3<Q>::diag(Q(-1), Q(-1), Q(1)));
    const Mat3<Q> nb{{Q(0), Q(0), Q(-1)}, {Q(0), Q(1), Q(0)}, {Q(-1), Q(0), Q(0)}};
    const Mat3<Q> want{{Q(0), Q(0), Q(1)}, {Q(0), Q(-1), Q(0)}, {Q(1), Q(0), Q(0)}};
    CHECK(lambda2_gram(nb) == want);
  }

  TEST_CASE("NB(1,2,0,0) operator") {
    const auto op = curvature_operator(alg(Family::NB, {Q(1), Q(2), Q(0), Q(0)}));
    Mat3<Q> want;
    want(0, 2) = Q(-4);
    CHECK(op.K == want);
  }

  TEST_CASE("A2 along lambda1 = 2 lambda2 has k1 = -k2 = -k3 = lambda2^2") {
    for (long l2 : {-3L, -1L, 1L, 2L}) {
      const auto op = curvature_operator(alg(Family::A2, {Q(2 * l2), Q(l2)}));
      const Poly<Q> p = char_poly(op.K);
      const Q k(l2 * l2);
      // (x - k)(x + k)^2
      CHECK(p == Poly<Q>{Q(-k * k * k), Q(-k * k), k, Q(1)});
    }
  }

  TEST_CASE("degenerate gram is rejected") {
    CurvatureTensor<Q> r;
    CHECK_THROWS_AS(sectional_operator(r, Mat3<Q>::diag(Q(1), Q(0), Q(1))), DegenerateMetric);
  }

  TEST_CASE("connection, tensor and operator invariants over samples") {
    SampleSpec spec;
    for (Family f : kAllFamilies) {
      for (std::uint64_t s = 0; s < 40; ++s) {
        const auto a = build(sample<Q>(f, spec, derive_seed(s, 3)));
        const auto c = levi_civita(a);
        CHECK(is_torsion_free(a, c));
        CHECK(is_metric(a, c));
        const auto r = curvature_tensor(a, c);
        CHECK(has_curvature_symmetries(r));
        CHECK(is_self_adjoint(sectional_operator(r, lambda2_gram(a.gram))));

        const auto ad = build(sample<double>(f, spec, s));
        const auto cd = levi_civita(ad);
        CHECK(is_torsion_free(ad, cd));
        CHECK(is_metric(ad, cd));
        CHECK(is_self_adjoint(curvature_operator(ad)));
      }
    }
  }

  TEST_CASE("double path matches exact path") {
    SampleSpec spec;
    for (Family f : kAllFamilies) {
      const auto p = sample<Q>(f, spec, 17);
      const auto Ke = to_double(curvature_operator(build(p)).K);
      FamilyParams<double> pd{f, {}};
      for (const auto& x : p.values) pd.values.push_back(x.get_d());
      const auto Kd = curvature_operator(build(pd)).K;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(Kd(i, j) == doctest::Approx(Ke(i, j)).epsilon(1e-12));
    }
  }
}
