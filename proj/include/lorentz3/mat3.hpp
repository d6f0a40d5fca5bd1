#pragma once

#include <array>
#include <stdexcept>

#include "lorentz3/scalar.hpp"

namespace lorentz3 {

template <Scalar T>
using Vec3 = std::array<T, 3>;

template <Scalar T>
Vec3<T> zero_vec() {
  return {T(0), T(0), T(0)};
}

template <Scalar T>
Vec3<T> unit_vec(int i) {
  Vec3<T> v = zero_vec<T>();
  v[i] = T(1);
  return v;
}

template <Scalar T>
Vec3<T> operator+(const Vec3<T>& a, const Vec3<T>& b) {
  return {T(a[0] + b[0]), T(a[1] + b[1]), T(a[2] + b[2])};
}

template <Scalar T>
Vec3<T> operator-(const Vec3<T>& a, const Vec3<T>& b) {
  return {T(a[0] - b[0]), T(a[1] - b[1]), T(a[2] - b[2])};
}

template <Scalar T>
Vec3<T> operator*(const T& s, const Vec3<T>& v) {
  return {T(s * v[0]), T(s * v[1]), T(s * v[2])};
}

// 3x3 matrix stored row-major; (i, j) is row i, column j.
template <Scalar T>
class Mat3 {
 public:
  Mat3() : a_{} {
    for (auto& row : a_) row.fill(T(0));
  }
  Mat3(std::initializer_list<std::initializer_list<T>> rows) : Mat3() {
    if (rows.size() != 3) throw std::invalid_argument("Mat3 needs 3 rows");
    int i = 0;
    for (const auto& row : rows) {
      if (row.size() != 3) throw std::invalid_argument("Mat3 rows need 3 entries");
      int j = 0;
      for (const auto& x : row) a_[i][j++] = x;
      ++i;
    }
  }

  static Mat3 zero() { return Mat3(); }
  static Mat3 identity() { return diag(T(1), T(1), T(1)); }
  static Mat3 diag(const T& x, const T& y, const T& z) {
    Mat3 m;
    m(0, 0) = x;
    m(1, 1) = y;
    m(2, 2) = z;
    return m;
  }

  T& operator()(int i, int j) { return a_[i][j]; }
  const T& operator()(int i, int j) const { return a_[i][j]; }

  Vec3<T> row(int i) const { return a_[i]; }
  Vec3<T> col(int j) const { return {a_[0][j], a_[1][j], a_[2][j]}; }

  friend bool operator==(const Mat3& x, const Mat3& y) { return x.a_ == y.a_; }

  friend Mat3 operator+(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = x(i, j) + y(i, j);
    return r;
  }
  friend Mat3 operator-(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = x(i, j) - y(i, j);
    return r;
  }
  friend Mat3 operator*(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        T s(0);
        for (int k = 0; k < 3; ++k) s += x(i, k) * y(k, j);
        r(i, j) = s;
      }
    return r;
  }
  friend Mat3 operator*(const T& s, const Mat3& x) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = s * x(i, j);
    return r;
  }
  friend Vec3<T> operator*(const Mat3& x, const Vec3<T>& v) {
    Vec3<T> r = zero_vec<T>();
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) r[i] += x(i, k) * v[k];
    return r;
  }

  Mat3 transpose() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = a_[j][i];
    return r;
  }

  T trace() const { return T(a_[0][0] + a_[1][1] + a_[2][2]); }

  T det() const {
    T d = a_[0][0] * (a_[1][1] * a_[2][2] - a_[1][2] * a_[2][1]);
    d -= a_[0][1] * (a_[1][0] * a_[2][2] - a_[1][2] * a_[2][0]);
    d += a_[0][2] * (a_[1][0] * a_[2][1] - a_[1][1] * a_[2][0]);
    return d;
  }

  // Sum of the three principal 2x2 minors.
  T principal_minor_sum() const {
    T s = a_[0][0] * a_[1][1] - a_[0][1] * a_[1][0];
    s += a_[0][0] * a_[2][2] - a_[0][2] * a_[2][0];
    s += a_[1][1] * a_[2][2] - a_[1][2] * a_[2][1];
    return s;
  }

  bool is_symmetric() const {
    return a_[0][1] == a_[1][0] && a_[0][2] == a_[2][0] && a_[1][2] == a_[2][1];
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& row : a_)
      for (const auto& x : row) m = std::max(m, magnitude(x));
    return m;
  }

 private:
  std::array<std::array<T, 3>, 3> a_;
};

class SingularMatrix : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Adjugate inverse. Exact for Rational; throws SingularMatrix when det == 0
// (exactly, or within tolerance for double).
template <Scalar T>
Mat3<T> inverse(const Mat3<T>& m, const Field<T>& field = {});

template <Scalar T>
bool approx_symmetric(const Mat3<T>& m, const Field<T>& field = {});

// Rank by fraction-free (Bareiss) elimination for Rational, or by complete
// pivoting with threshold tau * max(1, scale) for double. `scale` defaults to
// max|m|; pass the magnitude of a parent matrix when m is a shifted copy.
template <Scalar T>
int mat3_rank(const Mat3<T>& m, const Field<T>& field = {}, double scale = -1.0);

Mat3<double> to_double(const Mat3<Rational>& m);

}  // namespace lorentz3
