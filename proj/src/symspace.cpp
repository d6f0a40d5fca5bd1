#include "lorentz3/symspace.hpp"

#include <stdexcept>

namespace lorentz3 {

std::string_view product_kind_name(ProductKind k) {
  switch (k) {
    case ProductKind::R_x_S2_1: return "R_x_S2_1";
    case ProductKind::R_x_H2_1: return "R_x_H2_1";
    case ProductKind::S2_x_R_1: return "S2_x_R_1";
    case ProductKind::H2_x_R_1: return "H2_x_R_1";
  }
  return "?";
}

std::optional<ProductKind> product_kind_from_name(std::string_view name) {
  for (ProductKind k : {ProductKind::R_x_S2_1, ProductKind::R_x_H2_1, ProductKind::S2_x_R_1, ProductKind::H2_x_R_1})
    if (product_kind_name(k) == name) return k;
  return std::nullopt;
}

namespace {

bool spherical(ProductKind k) { return k == ProductKind::R_x_S2_1 || k == ProductKind::S2_x_R_1; }
bool lorentzian_factor(ProductKind k) { return k == ProductKind::R_x_S2_1 || k == ProductKind::R_x_H2_1; }

template <Scalar T>
Mat3<T> null_frame_gram(int eps) {
  const T z(0), one(1);
  return Mat3<T>{{z, z, one}, {z, T(eps), z}, {one, z, z}};
}

}  // namespace

template <Scalar T>
void validate_spec(const SymmetricSpaceSpec<T>& spec, const Field<T>& field) {
  if (const auto* p = std::get_if<Product<T>>(&spec)) {
    const int s = field.sign(p->c);
    if (s == 0) throw std::invalid_argument("product factor curvature c must be nonzero");
    if (spherical(p->kind) != (s > 0))
      throw std::invalid_argument(std::string(product_kind_name(p->kind)) + " needs c of sign " +
                                  (spherical(p->kind) ? "+" : "-"));
  } else if (const auto* w = std::get_if<PlaneWaveLike<T>>(&spec)) {
    if (w->epsilon != 1 && w->epsilon != -1) throw std::invalid_argument("epsilon must be +1 or -1");
  }
}

template <Scalar T>
std::string spec_kind_name(const SymmetricSpaceSpec<T>& spec, const Field<T>& field) {
  if (const auto* s = std::get_if<SpaceForm<T>>(&spec)) {
    const int sg = field.sign(s->c);
    return sg == 0 ? "R3_1" : (sg > 0 ? "S3_1" : "H3_1");
  }
  if (const auto* p = std::get_if<Product<T>>(&spec)) return std::string(product_kind_name(p->kind));
  return "plane_wave";
}

template <Scalar T>
CurvatureOperator<T> symmetric_operator(const SymmetricSpaceSpec<T>& spec, const Field<T>& field) {
  validate_spec(spec, field);
  const T one(1);
  if (const auto* s = std::get_if<SpaceForm<T>>(&spec))
    return {s->c * Mat3<T>::identity(), lambda2_gram(Mat3<T>::diag(one, one, T(-1)))};
  if (const auto* p = std::get_if<Product<T>>(&spec)) {
    // The curved factor spans e1, e2; its plane is the first basis bivector.
    const Mat3<T> gram = lorentzian_factor(p->kind) ? Mat3<T>::diag(one, T(-1), one) : Mat3<T>::diag(one, one, T(-1));
    return {Mat3<T>::diag(p->c, T(0), T(0)), lambda2_gram(gram)};
  }
  const auto& w = std::get<PlaneWaveLike<T>>(spec);
  Mat3<T> K;
  K(0, 2) = w.alpha / T(w.epsilon);
  return {K, lambda2_gram(null_frame_gram<T>(w.epsilon))};
}

template <Scalar T>
CurvatureOperator<T> coordinate_curvature_operator(const PlaneWaveLike<T>& spec, const CoordinatePoint<T>& u,
                                                   const Field<T>& field) {
  validate_spec(SymmetricSpaceSpec<T>(spec), field);
  const T u2 = u[1], u3 = u[2];
  const Poly<T> db = spec.beta.derivative(), dxi = spec.xi.derivative();
  const T f = spec.alpha * u2 * u2 + u2 * spec.beta(u3) + spec.xi(u3);
  const T f2 = T(2) * spec.alpha * u2 + spec.beta(u3);
  const T f3 = u2 * db(u3) + dxi(u3);
  const T f22 = T(2) * spec.alpha;
  const T f23 = db(u3);
  const T f33 = u2 * db.derivative()(u3) + dxi.derivative()(u3);

  const T z(0), one(1);
  const Mat3<T> g{{z, z, one}, {z, T(spec.epsilon), z}, {one, z, f}};
  // Only g_33 = f varies.
  auto g33_only = [&](const T& v) {
    Mat3<T> m;
    m(2, 2) = v;
    return m;
  };
  const std::array<Mat3<T>, 3> dg{Mat3<T>{}, g33_only(f2), g33_only(f3)};
  const std::array<std::array<Mat3<T>, 3>, 3> ddg{{{Mat3<T>{}, Mat3<T>{}, Mat3<T>{}},
                                                   {Mat3<T>{}, g33_only(f22), g33_only(f23)},
                                                   {Mat3<T>{}, g33_only(f23), g33_only(f33)}}};
  const Mat3<T> gi = inverse(g, field);
  std::array<Mat3<T>, 3> dgi;
  for (int c = 0; c < 3; ++c) dgi[c] = T(-1) * (gi * dg[c] * gi);

  // low[n][a][b] = Gamma_{n,ab}; dlow[c][n][a][b] = d_c Gamma_{n,ab}.
  T low[3][3][3], dlow[3][3][3][3], gam[3][3][3], dgam[3][3][3][3];
  for (int n = 0; n < 3; ++n)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        low[n][a][b] = half_of(T(dg[a](n, b) + dg[b](n, a) - dg[n](a, b)));
        for (int c = 0; c < 3; ++c)
          dlow[c][n][a][b] = half_of(T(ddg[c][a](n, b) + ddg[c][b](n, a) - ddg[c][n](a, b)));
      }
  for (int m = 0; m < 3; ++m)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        T s(0);
        for (int n = 0; n < 3; ++n) s += gi(m, n) * low[n][a][b];
        gam[m][a][b] = s;
        for (int c = 0; c < 3; ++c) {
          T d(0);
          for (int n = 0; n < 3; ++n) d += dgi[c](m, n) * low[n][a][b] + gi(m, n) * dlow[c][n][a][b];
          dgam[c][m][a][b] = d;
        }
      }

  // Usual Riemann components, then the opposite sign convention and lowering.
  CurvatureTensor<T> rc;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Vec3<T> up = zero_vec<T>();
        for (int m = 0; m < 3; ++m) {
          T v = dgam[i][m][j][k] - dgam[j][m][i][k];
          for (int n = 0; n < 3; ++n) v += gam[m][i][n] * gam[n][j][k] - gam[m][j][n] * gam[n][i][k];
          up[m] = v;
        }
        const Vec3<T> lowered = g * up;
        for (int l = 0; l < 3; ++l) rc(i, j, k, l) = T(-lowered[l]);
      }

  // Null frame E1 = d1, E2 = d2, E3 = d3 - f/2 d1 (columns of P).
  Mat3<T> P = Mat3<T>::identity();
  P(0, 2) = T(-half_of(f));
  CurvatureTensor<T> cur = rc;
  for (int slot = 0; slot < 4; ++slot) {
    CurvatureTensor<T> next;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) {
            int idx[4] = {i, j, k, l};
            const int a = idx[slot];
            T s(0);
            for (int m = 0; m < 3; ++m) {
              if (P(m, a) == T(0)) continue;
              idx[slot] = m;
              s += P(m, a) * cur(idx[0], idx[1], idx[2], idx[3]);
            }
            next(i, j, k, l) = s;
          }
    cur = next;
  }
  const Mat3<T> frame_gram = P.transpose() * g * P;
  return sectional_operator(cur, lambda2_gram(frame_gram), field);
}

#define LORENTZ3_INSTANTIATE(T)                                                                                   \
  template void validate_spec(const SymmetricSpaceSpec<T>&, const Field<T>&);                                      \
  template std::string spec_kind_name(const SymmetricSpaceSpec<T>&, const Field<T>&);                              \
  template CurvatureOperator<T> symmetric_operator(const SymmetricSpaceSpec<T>&, const Field<T>&);                 \
  template CurvatureOperator<T> coordinate_curvature_operator(const PlaneWaveLike<T>&, const CoordinatePoint<T>&, \
                                                              const Field<T>&);

LORENTZ3_INSTANTIATE(Rational)
LORENTZ3_INSTANTIATE(double)

#undef LORENTZ3_INSTANTIATE

}  // namespace lorentz3
