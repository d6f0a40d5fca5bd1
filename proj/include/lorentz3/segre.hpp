#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "lorentz3/roots.hpp"

namespace lorentz3 {

// Jordan structure of a real 3x3 operator: diagonalizable over R, one real
// eigenvalue plus a complex pair, one 2x2 block, one 3x3 block.
enum class SegreType { S111, S1ZZ, S21, S3 };

std::string_view segre_type_name(SegreType t);  // "{111}", "{1zz}", "{21}", "{3}"
// Also accepts "{12}" (same type as "{21}") and the bare names "S111", ...
std::optional<SegreType> segre_type_from_name(std::string_view name);

// Eigenvalue layout by type:
//   S111  three values ascending, repeats listed;
//   S1ZZ  {k1}, with the pair in pair_re +- i pair_im (pair_im > 0);
//   S21   {simple, jordan} (equal when the block shares the simple value);
//   S3    {k}.
template <Scalar T>
struct SegreData {
  SegreType type = SegreType::S111;
  std::vector<RealOf<T>> eigenvalues;
  double pair_re = 0.0;
  double pair_im = 0.0;
  Poly<T> char_poly;
  std::optional<double> tau;  // set by approx classification

  const RealOf<T>& jordan_eigenvalue() const;
  T trace() const { return T(-char_poly.coeff(2)); }
};

// Exact data determines its eigenvalues through the characteristic
// polynomial, so equality is type plus polynomial.
bool operator==(const SegreData<Rational>& a, const SegreData<Rational>& b);

// Approx comparison: same type, eigenvalues within tol * max(1, |x|).
bool segre_close(const SegreData<double>& a, const SegreData<double>& b, double tol);

template <Scalar T>
SegreData<T> classify(const Mat3<T>& K, const Field<T>& field = {});
template <>
SegreData<Rational> classify(const Mat3<Rational>& K, const Field<Rational>& field);
template <>
SegreData<double> classify(const Mat3<double>& K, const Field<double>& field);

// Matrix with the prescribed data: a Jordan or real canonical form, or the
// companion matrix when eigenvalues are irrational.
template <Scalar T>
Mat3<T> canonical_witness(const SegreData<T>& d);
template <>
Mat3<Rational> canonical_witness(const SegreData<Rational>& d);
template <>
Mat3<double> canonical_witness(const SegreData<double>& d);

template <Scalar T>
SegreData<T> segre_111(const T& a, const T& b, const T& c);
// Pair re +- i im with im > 0; exact data needs only im^2 rational.
template <Scalar T>
SegreData<T> segre_1zz(const T& k1, const T& re, const T& im);
template <Scalar T>
SegreData<T> segre_1zz_sq(const T& k1, const T& re, const T& im_squared);
template <Scalar T>
SegreData<T> segre_21(const T& simple, const T& jordan);
template <Scalar T>
SegreData<T> segre_3(const T& k);

// Rebuilds exact data from a type tag and characteristic polynomial; throws
// std::invalid_argument when the polynomial's roots cannot carry that type.
SegreData<Rational> segre_from_char_poly(SegreType type, const Poly<Rational>& p);

SegreData<double> to_double(const SegreData<Rational>& d);

}  // namespace lorentz3
