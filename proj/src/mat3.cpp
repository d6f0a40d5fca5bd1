#include "lorentz3/mat3.hpp"

#include <utility>

namespace lorentz3 {

template <Scalar T>
Mat3<T> inverse(const Mat3<T>& m, const Field<T>& field) {
  const T d = m.det();
  if (field.is_zero(d, std::pow(std::max(1.0, m.max_abs()), 3))) throw SingularMatrix("matrix is singular");
  Mat3<T> adj;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj(i, j) = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
    }
  const T inv_d = T(1) / d;
  return inv_d * adj;
}

template <Scalar T>
bool approx_symmetric(const Mat3<T>& m, const Field<T>& field) {
  const double s = m.max_abs();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (!field.is_zero(T(m(i, j) - m(j, i)), s)) return false;
  return true;
}

namespace {

int bareiss_rank(Mat3<Rational> a) {
  Rational prev(1);
  // Row-echelon with fraction-free updates: a(i,j) <- (a(r,c) a(i,j) - a(i,c) a(r,j)) / prev.
  int r = 0;
  for (int c = 0; c < 3 && r < 3; ++c) {
    int piv = -1;
    for (int i = r; i < 3; ++i)
      if (sgn(a(i, c)) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < 3; ++j) std::swap(a(r, j), a(piv, j));
    for (int i = r + 1; i < 3; ++i) {
      for (int j = c + 1; j < 3; ++j) {
        Rational v = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        a(i, j) = v / prev;
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

int pivot_rank(Mat3<double> a, double threshold) {
  int rank = 0;
  std::array<bool, 3> row_done{false, false, false}, col_done{false, false, false};
  for (int step = 0; step < 3; ++step) {
    int pr = -1, pc = -1;
    double best = 0.0;
    for (int i = 0; i < 3; ++i) {
      if (row_done[i]) continue;
      for (int j = 0; j < 3; ++j) {
        if (col_done[j]) continue;
        if (std::abs(a(i, j)) > best) {
          best = std::abs(a(i, j));
          pr = i;
          pc = j;
        }
      }
    }
    if (pr < 0 || best <= threshold) break;
    ++rank;
    row_done[pr] = col_done[pc] = true;
    for (int i = 0; i < 3; ++i) {
      if (row_done[i]) continue;
      const double f = a(i, pc) / a(pr, pc);
      for (int j = 0; j < 3; ++j) a(i, j) -= f * a(pr, j);
    }
  }
  return rank;
}

}  // namespace

template <Scalar T>
int mat3_rank(const Mat3<T>& m, const Field<T>& field, double scale) {
  if constexpr (std::is_same_v<T, Rational>) {
    (void)field;
    (void)scale;
    return bareiss_rank(m);
  } else {
    const double s = scale < 0 ? m.max_abs() : scale;
    return pivot_rank(m, field.tau() * std::max(1.0, s));
  }
}

Mat3<double> to_double(const Mat3<Rational>& m) {
  Mat3<double> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = m(i, j).get_d();
  return r;
}

template Mat3<Rational> inverse(const Mat3<Rational>&, const Field<Rational>&);
template Mat3<double> inverse(const Mat3<double>&, const Field<double>&);
template bool approx_symmetric(const Mat3<Rational>&, const Field<Rational>&);
template bool approx_symmetric(const Mat3<double>&, const Field<double>&);
template int mat3_rank(const Mat3<Rational>&, const Field<Rational>&, double);
template int mat3_rank(const Mat3<double>&, const Field<double>&, double);

}  // namespace lorentz3
