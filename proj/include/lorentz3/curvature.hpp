#pragma once

#include <array>

#include "lorentz3/liealg.hpp"

namespace lorentz3 {

// nabla[i][j] holds the frame coefficients of nabla_{e_i} e_j.
template <Scalar T>
struct ConnectionTable {
  std::array<std::array<Vec3<T>, 3>, 3> nabla;
};

// R(i,j,k,l) = <R(e_i, e_j) e_k, e_l> with
// R(X,Y)Z = nabla_Y nabla_X Z - nabla_X nabla_Y Z + nabla_[X,Y] Z.
template <Scalar T>
class CurvatureTensor {
 public:
  CurvatureTensor() { r_.fill(T(0)); }
  T& operator()(int i, int j, int k, int l) { return r_[((i * 3 + j) * 3 + k) * 3 + l]; }
  const T& operator()(int i, int j, int k, int l) const { return r_[((i * 3 + j) * 3 + k) * 3 + l]; }

 private:
  std::array<T, 81> r_;
};

// Index pairs of the bivector basis (e1^e2, e1^e3, e2^e3).
inline constexpr std::array<std::array<int, 2>, 3> kLambda2Pairs{{{0, 1}, {0, 2}, {1, 2}}};

template <Scalar T>
struct CurvatureOperator {
  Mat3<T> K;      // columns are images of the basis bivectors
  Mat3<T> gram2;  // <omega_a, omega_b>
};

template <Scalar T>
ConnectionTable<T> levi_civita(const MetricLieAlgebra<T>& alg, const Field<T>& field = {});

template <Scalar T>
CurvatureTensor<T> curvature_tensor(const MetricLieAlgebra<T>& alg, const ConnectionTable<T>& conn);

template <Scalar T>
Mat3<T> lambda2_gram(const Mat3<T>& gram);

// K = gram2^{-1} Rhat, Rhat[a][b] = R(pair a, pair b). Throws DegenerateMetric.
template <Scalar T>
CurvatureOperator<T> sectional_operator(const CurvatureTensor<T>& r4, const Mat3<T>& gram2,
                                        const Field<T>& field = {});

// levi_civita -> curvature_tensor -> sectional_operator.
template <Scalar T>
CurvatureOperator<T> curvature_operator(const MetricLieAlgebra<T>& alg, const Field<T>& field = {});

// Residuals of the connection invariants; all zero for an exact Levi-Civita table.
template <Scalar T>
bool is_torsion_free(const MetricLieAlgebra<T>& alg, const ConnectionTable<T>& conn, const Field<T>& field = {});
template <Scalar T>
bool is_metric(const MetricLieAlgebra<T>& alg, const ConnectionTable<T>& conn, const Field<T>& field = {});
template <Scalar T>
bool has_curvature_symmetries(const CurvatureTensor<T>& r4, const Field<T>& field = {});

// gram2 * K symmetric.
template <Scalar T>
bool is_self_adjoint(const CurvatureOperator<T>& op, const Field<T>& field = {});

}  // namespace lorentz3
