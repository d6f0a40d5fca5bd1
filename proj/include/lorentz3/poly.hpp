#pragma once

#include <utility>
#include <vector>

#include "lorentz3/mat3.hpp"

namespace lorentz3 {

// Univariate polynomial, coefficients lowest degree first. Exactly-zero
// leading coefficients are trimmed, so the zero polynomial has no coefficients.
template <Scalar T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Poly monomial(int degree, const T& coeff = T(1)) {
    std::vector<T> c(degree + 1, T(0));
    c[degree] = coeff;
    return Poly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  // Coefficient of x^k, zero beyond the degree.
  T coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : T(0); }
  T leading() const { return c_.empty() ? T(0) : c_.back(); }

  T operator()(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // Horner evaluation at a matrix argument.
  Mat3<T> operator()(const Mat3<T>& m) const {
    Mat3<T> acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * m + (*it) * Mat3<T>::identity();
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = T(static_cast<long>(k)) * c_[k];
    return Poly(std::move(d));
  }

  Poly monic() const {
    if (c_.empty()) return {};
    std::vector<T> m(c_);
    const T lead = c_.back();
    for (auto& x : m) x /= lead;
    return Poly(std::move(m));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(static_cast<int>(k)) - b.coeff(static_cast<int>(k));
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }

  std::vector<T> c_;
};

// Polynomial long division; throws std::domain_error on a zero divisor.
template <Scalar T>
std::pair<Poly<T>, Poly<T>> divmod(const Poly<T>& num, const Poly<T>& den);

// Monic gcd by Euclid's algorithm. Exact backend only: gcd is not defined
// for floating coefficients, and the constraint rejects Poly<double> at
// compile time.
template <Scalar T>
  requires std::same_as<T, Rational>
Poly<T> poly_gcd(const Poly<T>& p, const Poly<T>& q);

// det(xI - m): monic, degree 3.
template <Scalar T>
Poly<T> char_poly(const Mat3<T>& m);

// Discriminant of a cubic a3 x^3 + a2 x^2 + a1 x + a0.
template <Scalar T>
T cubic_discriminant(const Poly<T>& p);

// Square-free part p / gcd(p, p').
Poly<Rational> square_free_part(const Poly<Rational>& p);

Poly<double> to_double(const Poly<Rational>& p);

}  // namespace lorentz3
