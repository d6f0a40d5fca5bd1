#include "lorentz3/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace lorentz3 {

Interval operator*(const Interval& a, const Interval& b) {
  const Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval operator/(const Interval& a, long d) {
  const Rational dd(d);
  if (d > 0) return {a.lo / dd, a.hi / dd};
  return {a.hi / dd, a.lo / dd};
}

RealRoot::RealRoot(const Rational& value) : lo_(value), hi_(value), exact_(true), approx_(value.get_d()) {}

RealRoot::RealRoot(Poly<Rational> p, Rational lo, Rational hi)
    : p_(std::move(p)), lo_(std::move(lo)), hi_(std::move(hi)), exact_(false) {
  sign_lo_ = sgn(p_(lo_));
  const int sign_hi = sgn(p_(hi_));
  if (sign_lo_ == 0 || sign_hi == 0 || sign_lo_ == sign_hi)
    throw std::invalid_argument("RealRoot: interval does not isolate a sign change");
  // Double estimate by bisection on the rational interval; the interval
  // itself stays the authority for every sign decision.
  const Poly<double> pd = to_double(p_);
  double a = lo_.get_d(), b = hi_.get_d();
  const double sa = pd(a) < 0 ? -1.0 : 1.0;
  for (int k = 0; k < 200 && b - a > 0.0; ++k) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double v = pd(m);
    if (v == 0.0) {
      a = b = m;
      break;
    }
    if ((v < 0 ? -1.0 : 1.0) == sa) a = m;
    else b = m;
  }
  approx_ = 0.5 * (a + b);
}

const Rational& RealRoot::exact_value() const {
  if (!exact_) throw std::logic_error("RealRoot is irrational");
  return lo_;
}

void RealRoot::refine(int steps) {
  for (int k = 0; k < steps && !exact_; ++k) {
    Rational mid = (lo_ + hi_) / 2;
    const int s = sgn(p_(mid));
    if (s == 0) {
      lo_ = hi_ = mid;
      exact_ = true;
      approx_ = mid.get_d();
      return;
    }
    if (s == sign_lo_) lo_ = std::move(mid);
    else hi_ = std::move(mid);
  }
}

std::string RealRoot::to_string() const {
  if (exact_) return lo_.get_str();
  std::ostringstream os;
  os.precision(17);
  os << approx_;
  return os.str();
}

double approx_of(const RealRoot& r) { return r.approx(); }

namespace {

// Sign variations of the Sturm sequence at x, zeros skipped.
int variations(const std::vector<Poly<Rational>>& seq, const Rational& x) {
  int count = 0, last = 0;
  for (const auto& s : seq) {
    const int v = sgn(s(x));
    if (v == 0) continue;
    if (last != 0 && v != last) ++count;
    last = v;
  }
  return count;
}

std::vector<Poly<Rational>> sturm_sequence(const Poly<Rational>& p) {
  std::vector<Poly<Rational>> seq{p, p.derivative()};
  while (seq.back().degree() > 0) {
    Poly<Rational> r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(Poly<Rational>() - r);
  }
  return seq;
}

Rational cauchy_bound(const Poly<Rational>& monic) {
  Rational m(0);
  for (int k = 0; k < monic.degree(); ++k) m = std::max(m, Rational(abs(monic.coeff(k))));
  return m + 1;
}

mpz_class denominator_lcm(const Poly<Rational>& p) {
  mpz_class l(1);
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

// If the root isolated in `r` is rational it is n / L for an integer n, L the
// denominator lcm of the monic p. Narrow until at most two candidates remain.
void snap_rational(RealRoot& r, const Poly<Rational>& p, const mpz_class& l) {
  const Rational L(l);
  while (!r.is_exact() && (r.hi() - r.lo()) * L >= 1) r.refine();
  if (r.is_exact()) return;
  mpz_class first, last;
  const Rational a = r.lo() * L, b = r.hi() * L;
  mpz_cdiv_q(first.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  mpz_fdiv_q(last.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
  for (mpz_class n = first; n <= last; ++n) {
    Rational cand(n, l);
    cand.canonicalize();
    if (cand > r.lo() && cand < r.hi() && sgn(p(cand)) == 0) {
      r = RealRoot(cand);
      return;
    }
  }
}

RootData<Rational> exact_root_data(const Poly<Rational>& p_in) {
  const Poly<Rational> p = p_in.monic();
  RootData<Rational> rd;
  const Rational disc = cubic_discriminant(p);
  rd.disc_sign = sgn(disc);

  if (rd.disc_sign == 0) {
    const Poly<Rational> g = poly_gcd(p, p.derivative());
    if (g.degree() == 2) {
      rd.roots.emplace_back(Rational(-p.coeff(2) / 3));
      rd.multiplicity.push_back(3);
    } else {
      const Rational d = -g.coeff(0);
      const Rational s = -p.coeff(2) - 2 * d;
      if (s < d) {
        rd.roots = {RealRoot(s), RealRoot(d)};
        rd.multiplicity = {1, 2};
      } else {
        rd.roots = {RealRoot(d), RealRoot(s)};
        rd.multiplicity = {2, 1};
      }
    }
    return rd;
  }

  const auto seq = sturm_sequence(p);
  const Rational bound = cauchy_bound(p);
  const mpz_class l = denominator_lcm(p);
  struct Piece {
    Rational a, b;
    int count;
  };
  std::vector<Piece> stack{{-bound, bound, variations(seq, -bound) - variations(seq, bound)}};
  while (!stack.empty()) {
    Piece pc = std::move(stack.back());
    stack.pop_back();
    if (pc.count == 0) continue;
    if (pc.count == 1) {
      if (sgn(p(pc.b)) == 0) {
        rd.roots.emplace_back(pc.b);
        continue;
      }
      if (sgn(p(pc.a)) != 0) {
        RealRoot r(p, pc.a, pc.b);
        snap_rational(r, p, l);
        rd.roots.push_back(std::move(r));
        continue;
      }
    }
    Rational m = (pc.a + pc.b) / 2;
    const int vm = variations(seq, m);
    const int va = variations(seq, pc.a);
    stack.push_back({m, pc.b, pc.count - (va - vm)});
    stack.push_back({pc.a, std::move(m), va - vm});
  }
  std::sort(rd.roots.begin(), rd.roots.end(), [](const RealRoot& x, const RealRoot& y) { return x.lo() + x.hi() < y.lo() + y.hi(); });
  rd.multiplicity.assign(rd.roots.size(), 1);

  if (rd.disc_sign < 0) {
    // Deflate by the real root: x^2 + (a2 + k) x + (a1 + k (a2 + k)).
    if (rd.roots.front().is_exact()) {
      const Rational& k = rd.roots.front().exact_value();
      const Rational b = p.coeff(2) + k, c = p.coeff(1) + k * b;
      const Rational re = -b / 2;
      rd.pair_re = re.get_d();
      rd.pair_im = std::sqrt(Rational(c - re * re).get_d());
      return rd;
    }
    const double k = rd.roots.front().approx();
    const double a2 = p.coeff(2).get_d(), a1 = p.coeff(1).get_d();
    const double b = a2 + k, c = a1 + k * b;
    rd.pair_re = -b / 2;
    rd.pair_im = std::sqrt(std::max(0.0, c - rd.pair_re * rd.pair_re));
  }
  return rd;
}

double newton_polish(const Poly<double>& p, double x) {
  const Poly<double> dp = p.derivative();
  for (int k = 0; k < 4; ++k) {
    const double d = dp(x);
    if (d == 0.0) break;
    const double nx = x - p(x) / d;
    // Near a double root p' is tiny and a step can jump to another root.
    if (std::abs(nx - x) > 1e-4 * std::max(1.0, std::abs(x))) break;
    if (!std::isfinite(nx) || std::abs(p(nx)) >= std::abs(p(x))) break;
    x = nx;
  }
  return x;
}

std::array<std::complex<double>, 3> raw_cubic_roots(const Poly<double>& p) {
  const double a = p.coeff(2), b = p.coeff(1), c = p.coeff(0);
  const double P = b - a * a / 3.0;
  const double Q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double shift = -a / 3.0;
  const double D = Q * Q / 4.0 + P * P * P / 27.0;
  std::array<std::complex<double>, 3> r;
  if (D <= 0.0 && P < 0.0) {
    const double m = 2.0 * std::sqrt(-P / 3.0);
    const double arg = std::clamp(3.0 * Q / (P * m), -1.0, 1.0);
    const double th = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) r[k] = m * std::cos(th - 2.0 * std::numbers::pi * k / 3.0) + shift;
  } else {
    const double sq = std::sqrt(std::max(0.0, D));
    const double u = std::cbrt(-Q / 2.0 + sq), v = std::cbrt(-Q / 2.0 - sq);
    const double x = newton_polish(p, u + v + shift);
    const double bb = a + x, cc = b + x * bb;
    const double re = -bb / 2.0, disc = cc - re * re;
    r[0] = x;
    if (disc >= 0.0) {
      r[1] = {re, -std::sqrt(disc)};
      r[2] = {re, std::sqrt(disc)};
    } else {
      r[1] = re - std::sqrt(-disc);
      r[2] = re + std::sqrt(-disc);
    }
  }
  for (auto& z : r)
    if (z.imag() == 0.0) z = newton_polish(p, z.real());
  return r;
}

RootData<double> approx_root_data(const Poly<double>& p_in, const Field<double>& field) {
  const Poly<double> p = p_in.monic();
  auto r = raw_cubic_roots(p);
  const double tau = field.tau();
  double s = 1.0;
  for (const auto& z : r) s = std::max(s, std::abs(z));
  RootData<double> rd;
  auto dist = [](std::complex<double> x, std::complex<double> y) { return std::abs(x - y); };

  const double r3 = std::cbrt(tau) * s, r2 = std::sqrt(tau) * s;
  const double dmax = std::max({dist(r[0], r[1]), dist(r[0], r[2]), dist(r[1], r[2])});
  if (dmax <= r3) {
    rd.disc_sign = 0;
    rd.roots = {(r[0].real() + r[1].real() + r[2].real()) / 3.0};
    rd.multiplicity = {3};
    return rd;
  }
  int bi = 0, bj = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (dist(r[i], r[j]) < dist(r[bi], r[bj])) bi = i, bj = j;
  if (dist(r[bi], r[bj]) <= r2) {
    const int k = 3 - bi - bj;
    const double dbl = 0.5 * (r[bi].real() + r[bj].real());
    const double simple = r[k].real();
    rd.disc_sign = 0;
    if (simple < dbl) {
      rd.roots = {simple, dbl};
      rd.multiplicity = {1, 2};
    } else {
      rd.roots = {dbl, simple};
      rd.multiplicity = {2, 1};
    }
    return rd;
  }
  int complex_idx = -1;
  for (int i = 0; i < 3; ++i)
    if (std::abs(r[i].imag()) > 0.0) complex_idx = i;
  if (complex_idx >= 0) {
    rd.disc_sign = -1;
    for (const auto& z : r)
      if (z.imag() == 0.0) rd.roots = {z.real()};
    rd.multiplicity = {1};
    rd.pair_re = r[complex_idx].real();
    rd.pair_im = std::abs(r[complex_idx].imag());
    return rd;
  }
  rd.disc_sign = 1;
  rd.roots = {r[0].real(), r[1].real(), r[2].real()};
  std::sort(rd.roots.begin(), rd.roots.end());
  rd.multiplicity = {1, 1, 1};
  return rd;
}

}  // namespace

template <>
RootData<Rational> cubic_root_data(const Poly<Rational>& p, const Field<Rational>&) {
  if (p.degree() != 3) throw std::invalid_argument("cubic_root_data needs a cubic");
  return exact_root_data(p);
}

template <>
RootData<double> cubic_root_data(const Poly<double>& p, const Field<double>& field) {
  if (p.degree() != 3) throw std::invalid_argument("cubic_root_data needs a cubic");
  return approx_root_data(p, field);
}

}  // namespace lorentz3
