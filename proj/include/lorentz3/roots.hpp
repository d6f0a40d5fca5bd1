#pragma once

#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "lorentz3/poly.hpp"

namespace lorentz3 {

// Closed rational interval. Arithmetic is outward-exact (no rounding), so a
// sign read off an interval is a proof.
struct Interval {
  Rational lo{0};
  Rational hi{0};

  Interval() = default;
  Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}
  static Interval point(const Rational& x) { return {x, x}; }

  // +1 / -1 when the whole interval is strictly on one side of zero, 0 for
  // the degenerate interval [0,0], 2 when undecided.
  int sign() const {
    if (sgn(lo) > 0) return 1;
    if (sgn(hi) < 0) return -1;
    if (sgn(lo) == 0 && sgn(hi) == 0) return 0;
    return 2;
  }

  friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
  friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
  friend Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, long d);
};

// A real algebraic number given either exactly or as the unique root of a
// square-free rational polynomial inside the open interval (lo, hi).
class RealRoot {
 public:
  RealRoot() : RealRoot(Rational(0)) {}
  explicit RealRoot(const Rational& value);
  // Requires p(lo) * p(hi) < 0 and exactly one root of p in (lo, hi).
  RealRoot(Poly<Rational> p, Rational lo, Rational hi);

  bool is_exact() const { return exact_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  const Rational& exact_value() const;
  double approx() const { return approx_; }
  Interval interval() const { return {lo_, hi_}; }

  // Halves the isolating interval `steps` times; may land on the root exactly.
  void refine(int steps = 1);

  std::string to_string() const;

 private:
  Poly<Rational> p_;
  Rational lo_, hi_;
  int sign_lo_ = 0;
  bool exact_ = true;
  double approx_ = 0.0;
};

class UndecidedSign : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <Scalar T>
using RealOf = std::conditional_t<std::is_same_v<T, Rational>, RealRoot, double>;

// Root structure of a monic cubic. Real roots are distinct and ascending,
// with multiplicities; when disc_sign < 0 there is one real root and a
// conjugate pair pair_re +- i pair_im (pair_im > 0, reported in double).
template <Scalar T>
struct RootData {
  int disc_sign = 0;
  std::vector<RealOf<T>> roots;
  std::vector<int> multiplicity;
  double pair_re = 0.0;
  double pair_im = 0.0;
};

// Exact backend: repeated roots are rational and found by gcd; simple real
// roots are isolated with a Sturm sequence and reported exactly when rational.
// Approx backend: closed-form roots clustered at radius tau^(1/m) * max(1,|r|).
template <Scalar T>
RootData<T> cubic_root_data(const Poly<T>& p, const Field<T>& field = {});
template <>
RootData<Rational> cubic_root_data(const Poly<Rational>& p, const Field<Rational>& field);
template <>
RootData<double> cubic_root_data(const Poly<double>& p, const Field<double>& field);

double approx_of(const RealRoot& r);
inline double approx_of(double x) { return x; }

}  // namespace lorentz3
