#include "lorentz3/curvature.hpp"

namespace lorentz3 {

namespace {

template <Scalar T>
T inner(const Mat3<T>& g, const Vec3<T>& x, const Vec3<T>& y) {
  T s(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (g(i, j) != T(0)) s += x[i] * g(i, j) * y[j];
  return s;
}

template <Scalar T>
double tensor_scale(const MetricLieAlgebra<T>& alg) {
  double s = 1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) s = std::max(s, magnitude(alg.sc(i, j)[k]));
  return s;
}

}  // namespace

template <Scalar T>
ConnectionTable<T> levi_civita(const MetricLieAlgebra<T>& alg, const Field<T>& field) {
  Mat3<T> ginv;
  try {
    ginv = inverse(alg.gram, field);
  } catch (const SingularMatrix&) {
    throw DegenerateMetric("Gram matrix is not invertible");
  }
  const Mat3<T>& g = alg.gram;
  // ad[i][j][k] = <[e_i, e_j], e_k>
  std::array<std::array<Vec3<T>, 3>, 3> ad;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) ad[i][j] = g * alg.sc(i, j);

  ConnectionTable<T> conn;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Vec3<T> lower;
      for (int k = 0; k < 3; ++k) lower[k] = half_of(T(ad[i][j][k] - ad[j][k][i] + ad[k][i][j]));
      conn.nabla[i][j] = ginv * lower;
    }
  return conn;
}

template <Scalar T>
CurvatureTensor<T> curvature_tensor(const MetricLieAlgebra<T>& alg, const ConnectionTable<T>& conn) {
  const auto& nb = conn.nabla;
  // Covariant derivative along e_i of a constant-coefficient field.
  auto D = [&](int i, const Vec3<T>& v) {
    Vec3<T> r = zero_vec<T>();
    for (int m = 0; m < 3; ++m)
      if (v[m] != T(0)) r = r + v[m] * nb[i][m];
    return r;
  };
  auto Dvec = [&](const Vec3<T>& x, const Vec3<T>& v) {
    Vec3<T> r = zero_vec<T>();
    for (int i = 0; i < 3; ++i)
      if (x[i] != T(0)) r = r + x[i] * D(i, v);
    return r;
  };
  CurvatureTensor<T> r4;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      for (int k = 0; k < 3; ++k) {
        const Vec3<T> ek = unit_vec<T>(k);
        const Vec3<T> rz = D(j, D(i, ek)) - D(i, D(j, ek)) + Dvec(alg.sc(i, j), ek);
        const Vec3<T> low = alg.gram * rz;
        for (int l = 0; l < 3; ++l) r4(i, j, k, l) = low[l];
      }
    }
  return r4;
}

template <Scalar T>
Mat3<T> lambda2_gram(const Mat3<T>& g) {
  Mat3<T> g2;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const auto [x1, x2] = kLambda2Pairs[a];
      const auto [y1, y2] = kLambda2Pairs[b];
      g2(a, b) = g(x1, y1) * g(x2, y2) - g(x1, y2) * g(x2, y1);
    }
  return g2;
}

template <Scalar T>
CurvatureOperator<T> sectional_operator(const CurvatureTensor<T>& r4, const Mat3<T>& gram2, const Field<T>& field) {
  Mat3<T> rhat;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const auto [i, j] = kLambda2Pairs[a];
      const auto [k, l] = kLambda2Pairs[b];
      rhat(a, b) = r4(i, j, k, l);
    }
  Mat3<T> inv;
  try {
    inv = inverse(gram2, field);
  } catch (const SingularMatrix&) {
    throw DegenerateMetric("bivector Gram matrix is not invertible");
  }
  return {inv * rhat, gram2};
}

template <Scalar T>
CurvatureOperator<T> curvature_operator(const MetricLieAlgebra<T>& alg, const Field<T>& field) {
  const auto conn = levi_civita(alg, field);
  return sectional_operator(curvature_tensor(alg, conn), lambda2_gram(alg.gram), field);
}

template <Scalar T>
bool is_torsion_free(const MetricLieAlgebra<T>& alg, const ConnectionTable<T>& conn, const Field<T>& field) {
  const double s = tensor_scale(alg);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Vec3<T> d = conn.nabla[i][j] - conn.nabla[j][i] - alg.sc(i, j);
      for (const auto& x : d)
        if (!field.is_zero(x, s)) return false;
    }
  return true;
}

template <Scalar T>
bool is_metric(const MetricLieAlgebra<T>& alg, const ConnectionTable<T>& conn, const Field<T>& field) {
  const double s = tensor_scale(alg);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const T v = inner(alg.gram, conn.nabla[i][j], unit_vec<T>(k)) + inner(alg.gram, unit_vec<T>(j), conn.nabla[i][k]);
        if (!field.is_zero(v, s)) return false;
      }
  return true;
}

template <Scalar T>
bool has_curvature_symmetries(const CurvatureTensor<T>& r, const Field<T>& field) {
  double s = 1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) s = std::max(s, magnitude(r(i, j, k, l)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          const T& v = r(i, j, k, l);
          if (!field.is_zero(T(v + r(j, i, k, l)), s)) return false;
          if (!field.is_zero(T(v + r(i, j, l, k)), s)) return false;
          if (!field.is_zero(T(v - r(k, l, i, j)), s)) return false;
        }
  return true;
}

template <Scalar T>
bool is_self_adjoint(const CurvatureOperator<T>& op, const Field<T>& field) {
  return approx_symmetric(op.gram2 * op.K, field);
}

#define LORENTZ3_INSTANTIATE(T)                                                                              \
  template ConnectionTable<T> levi_civita(const MetricLieAlgebra<T>&, const Field<T>&);                        \
  template CurvatureTensor<T> curvature_tensor(const MetricLieAlgebra<T>&, const ConnectionTable<T>&);         \
  template Mat3<T> lambda2_gram(const Mat3<T>&);                                                               \
  template CurvatureOperator<T> sectional_operator(const CurvatureTensor<T>&, const Mat3<T>&, const Field<T>&); \
  template CurvatureOperator<T> curvature_operator(const MetricLieAlgebra<T>&, const Field<T>&);               \
  template bool is_torsion_free(const MetricLieAlgebra<T>&, const ConnectionTable<T>&, const Field<T>&);       \
  template bool is_metric(const MetricLieAlgebra<T>&, const ConnectionTable<T>&, const Field<T>&);             \
  template bool has_curvature_symmetries(const CurvatureTensor<T>&, const Field<T>&);                          \
  template bool is_self_adjoint(const CurvatureOperator<T>&, const Field<T>&);

LORENTZ3_INSTANTIATE(Rational)
LORENTZ3_INSTANTIATE(double)

#undef LORENTZ3_INSTANTIATE

}  // namespace lorentz3
