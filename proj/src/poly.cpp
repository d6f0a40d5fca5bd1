#include "lorentz3/poly.hpp"

#include <stdexcept>

namespace lorentz3 {

template <Scalar T>
std::pair<Poly<T>, Poly<T>> divmod(const Poly<T>& num, const Poly<T>& den) {
  if (den.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<T> rem = num.coeffs();
  const int dd = den.degree();
  const int nd = num.degree();
  if (nd < dd) return {Poly<T>{}, num};
  std::vector<T> quo(nd - dd + 1, T(0));
  const T lead = den.leading();
  for (int k = nd - dd; k >= 0; --k) {
    const T f = rem[k + dd] / lead;
    quo[k] = f;
    for (int j = 0; j <= dd; ++j) rem[k + j] -= f * den.coeff(j);
    rem[k + dd] = T(0);
  }
  rem.resize(dd);
  return {Poly<T>(std::move(quo)), Poly<T>(std::move(rem))};
}

template <Scalar T>
  requires std::same_as<T, Rational>
Poly<T> poly_gcd(const Poly<T>& p, const Poly<T>& q) {
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
  Poly<T> a = p, b = q;
  while (!b.is_zero()) {
    Poly<T> r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <Scalar T>
Poly<T> char_poly(const Mat3<T>& m) {
  return Poly<T>({T(-m.det()), m.principal_minor_sum(), T(-m.trace()), T(1)});
}

template <Scalar T>
T cubic_discriminant(const Poly<T>& p) {
  const T a = p.coeff(3), b = p.coeff(2), c = p.coeff(1), d = p.coeff(0);
  T disc = b * b * c * c;
  disc -= T(4) * a * c * c * c;
  disc -= T(4) * b * b * b * d;
  disc -= T(27) * a * a * d * d;
  disc += T(18) * a * b * c * d;
  return disc;
}

Poly<Rational> square_free_part(const Poly<Rational>& p) {
  if (p.degree() <= 0) return p.monic();
  const Poly<Rational> g = poly_gcd(p, p.derivative());
  return divmod(p, g).first.monic();
}

Poly<double> to_double(const Poly<Rational>& p) {
  std::vector<double> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.push_back(x.get_d());
  return Poly<double>(std::move(c));
}

template std::pair<Poly<Rational>, Poly<Rational>> divmod(const Poly<Rational>&, const Poly<Rational>&);
template std::pair<Poly<double>, Poly<double>> divmod(const Poly<double>&, const Poly<double>&);
template Poly<Rational> poly_gcd(const Poly<Rational>&, const Poly<Rational>&);
template Poly<Rational> char_poly(const Mat3<Rational>&);
template Poly<double> char_poly(const Mat3<double>&);
template Rational cubic_discriminant(const Poly<Rational>&);
template double cubic_discriminant(const Poly<double>&);

}  // namespace lorentz3
