#include "lorentz3/scalar.hpp"

#include <cstdlib>
#include <stdexcept>

namespace lorentz3 {

std::string_view backend_name(Backend b) { return b == Backend::exact ? "exact" : "approx"; }

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

Rational parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
  mpz_class z(std::string(s), 10);
  return Rational(neg ? mpz_class(-z) : z);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty rational");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const Rational num = parse_integer(trim(s.substr(0, slash)), s);
    const Rational den = parse_integer(trim(s.substr(slash + 1)), s);
    if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    Rational q = num / den;
    q.canonicalize();
    return q;
  }

  // Decimal with optional exponent, read exactly: 1.25e-2 -> 125/10000.
  std::string_view mant = s;
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mant = s.substr(0, e);
    const Rational ex = parse_integer(s.substr(e + 1), s);
    if (ex.get_den() != 1 || abs(ex) > 4000) throw std::invalid_argument("bad exponent in '" + std::string(s) + "'");
    exponent = ex.get_num().get_si();
  }
  std::string digits;
  long frac = 0;
  if (auto dot = mant.find('.'); dot != std::string_view::npos) {
    std::string_view ip = mant.substr(0, dot), fp = mant.substr(dot + 1);
    if (!fp.empty() && !all_digits(fp)) throw std::invalid_argument("not a rational number: '" + std::string(s) + "'");
    digits = std::string(ip) + std::string(fp);
    frac = static_cast<long>(fp.size());
    if (digits == "-" || digits == "+" || digits.empty()) throw std::invalid_argument("not a rational number: '" + std::string(s) + "'");
  } else {
    digits = std::string(mant);
  }
  Rational q = parse_integer(digits, s);
  const long shift = exponent - frac;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift >= 0) q *= p10;
  else q /= p10;
  q.canonicalize();
  return q;
}

bool looks_like_float(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.find('/') != std::string_view::npos) return false;
  return s.find_first_of(".eE") != std::string_view::npos || s.find("inf") != std::string_view::npos ||
         s.find("nan") != std::string_view::npos;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double tau_from_env() {
  if (const char* v = std::getenv("LORENTZ3_TAU")) {
    char* end = nullptr;
    const double t = std::strtod(v, &end);
    if (end != v && t > 0.0 && std::isfinite(t)) return t;
  }
  return kDefaultTau;
}

bool rational_sqrt(const Rational& q, Rational& out) {
  if (sgn(q) < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return false;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  out = Rational(n, d);
  out.canonicalize();
  return true;
}

}  // namespace lorentz3
