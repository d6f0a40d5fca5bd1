#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

namespace lorentz3 {

using Rational = mpq_class;

enum class Backend { exact, approx };

std::string_view backend_name(Backend b);

// Parses "n", "n/d", or a finite decimal such as "-0.25" into an exact rational.
// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

// True when the text looks like a float literal ("0.5", "1e-3") rather than an
// integer or "n/d" rational. Floats force the approx backend at the CLI.
bool looks_like_float(std::string_view text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

inline constexpr double kDefaultTau = 1e-9;

// Reads LORENTZ3_TAU from the environment, falling back to kDefaultTau.
double tau_from_env();

// Square root of a nonnegative rational when it is rational.
bool rational_sqrt(const Rational& q, Rational& out);

// The single comparator behind every approx-backend decision:
// a == b  iff  |a - b| <= tau * max(1, |a|, |b|).
struct Tolerance {
  double tau = kDefaultTau;

  bool equal(double a, double b) const {
    return std::abs(a - b) <= tau * std::max({1.0, std::abs(a), std::abs(b)});
  }
  // Zero test for a quantity whose natural magnitude is `scale`.
  bool is_zero(double a, double scale = 1.0) const {
    return std::abs(a) <= tau * std::max(1.0, std::abs(scale));
  }
  int compare(double a, double b) const {
    if (equal(a, b)) return 0;
    return a < b ? -1 : 1;
  }
  int sign(double a, double scale = 1.0) const {
    if (is_zero(a, scale)) return 0;
    return a < 0 ? -1 : 1;
  }
  Tolerance tightened(double factor) const { return Tolerance{tau / factor}; }
};

template <class T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, double>;

// Backend policy. Classification and predicates are written once against this
// interface and instantiated for both scalar types.
template <Scalar T>
struct Field;

template <>
struct Field<Rational> {
  static constexpr Backend backend = Backend::exact;

  bool is_zero(const Rational& a, double = 1.0) const { return sgn(a) == 0; }
  int sign(const Rational& a, double = 1.0) const { return sgn(a); }
  int compare(const Rational& a, const Rational& b) const {
    const int c = cmp(a, b);
    return (c > 0) - (c < 0);
  }
  bool equal(const Rational& a, const Rational& b) const { return a == b; }
  double tau() const { return 0.0; }
};

template <>
struct Field<double> {
  static constexpr Backend backend = Backend::approx;
  Tolerance tol{};

  bool is_zero(double a, double scale = 1.0) const { return tol.is_zero(a, scale); }
  int sign(double a, double scale = 1.0) const { return tol.sign(a, scale); }
  int compare(double a, double b) const { return tol.compare(a, b); }
  bool equal(double a, double b) const { return tol.equal(a, b); }
  double tau() const { return tol.tau; }
};

template <Scalar T>
T from_int(long v) {
  return T(v);
}

template <Scalar T>
T half_of(const T& x) {
  return T(x / 2);
}

inline double magnitude(const Rational& q) { return std::abs(q.get_d()); }
inline double magnitude(double x) { return std::abs(x); }

}  // namespace lorentz3
