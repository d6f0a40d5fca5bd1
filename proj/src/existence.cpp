#include "lorentz3/existence.hpp"

#include <algorithm>
#include <cmath>

namespace lorentz3 {

namespace {

// a + b sqrt(d), d > 0 a non-square rational (or d = 0 when b = 0).
struct QSqrt {
  Rational a{0}, b{0}, d{0};

  static Rational common(const QSqrt& x, const QSqrt& y) { return sgn(x.d) != 0 ? x.d : y.d; }
  friend QSqrt operator+(const QSqrt& x, const QSqrt& y) { return {x.a + y.a, x.b + y.b, common(x, y)}; }
  friend QSqrt operator-(const QSqrt& x, const QSqrt& y) { return {x.a - y.a, x.b - y.b, common(x, y)}; }
  friend QSqrt operator-(const QSqrt& x) { return {-x.a, -x.b, x.d}; }
  friend QSqrt operator*(const QSqrt& x, const QSqrt& y) {
    const Rational d = common(x, y);
    return {x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a, d};
  }
  friend QSqrt operator/(const QSqrt& x, long n) { return {x.a / n, x.b / n, x.d}; }

  int sign() const {
    const int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    const int c = cmp(a * a, b * b * d);
    if (c > 0) return sa;
    if (c < 0) return sb;
    return 0;
  }
};

// Sign decisions over exact eigenvalues. When one root is rational all of
// them live in Q(sqrt d) and every comparison is decided algebraically.
// Otherwise the cubic is irreducible, none of the compared expressions can
// vanish, and refining isolating intervals terminates.
class ExactCmp {
 public:
  explicit ExactCmp(std::vector<QSqrt> q) : algebraic_(true), q_(std::move(q)) {}
  explicit ExactCmp(std::vector<RealRoot> r) : algebraic_(false), r_(std::move(r)) {}

  template <class F>
  int compare(F&& f) const {
    if (algebraic_) {
      const auto [l, r] = f(q_);
      return (l - r).sign();
    }
    for (int round = 0; round < 4000; ++round) {
      std::vector<Interval> iv;
      iv.reserve(r_.size());
      for (const auto& x : r_) iv.push_back(x.interval());
      const auto [l, r] = f(iv);
      const int s = (l - r).sign();
      if (s != 2) return s;
      for (auto& x : r_) x.refine(4);
    }
    throw UndecidedSign("eigenvalue comparison did not resolve");
  }

 private:
  bool algebraic_;
  std::vector<QSqrt> q_;
  mutable std::vector<RealRoot> r_;
};

class ApproxCmp {
 public:
  ApproxCmp(std::vector<double> v, Tolerance t) : v_(std::move(v)), t_(t) {}

  template <class F>
  int compare(F&& f) const {
    const auto [l, r] = f(v_);
    return t_.compare(l, r);
  }

 private:
  std::vector<double> v_;
  Tolerance t_;
};

QSqrt rational_q(const Rational& x) { return {x, Rational(0), Rational(0)}; }

// Eigenvalues of an exact {111} triple.
ExactCmp triple_cmp(const SegreData<Rational>& d) {
  const auto& ev = d.eigenvalues;
  const auto exact_count = std::count_if(ev.begin(), ev.end(), [](const RealRoot& r) { return r.is_exact(); });
  if (exact_count == 3) {
    std::vector<QSqrt> q;
    for (const auto& r : ev) q.push_back(rational_q(r.exact_value()));
    return ExactCmp(std::move(q));
  }
  if (exact_count == 0) return ExactCmp(ev);
  const auto rat = std::find_if(ev.begin(), ev.end(), [](const RealRoot& r) { return r.is_exact(); });
  const Rational r0 = rat->exact_value();
  const auto quad = divmod(d.char_poly, Poly<Rational>({Rational(-r0), Rational(1)})).first;
  const Rational half_b = quad.coeff(1) / 2;
  const Rational disc = half_b * half_b - quad.coeff(0);
  std::vector<QSqrt> q;
  bool lower_taken = false;
  for (const auto& r : ev) {
    if (r.is_exact()) {
      q.push_back(rational_q(r.exact_value()));
    } else {
      q.push_back({Rational(-half_b), Rational(lower_taken ? 1 : -1), disc});
      lower_taken = true;
    }
  }
  return ExactCmp(std::move(q));
}

template <class V>
using Elem = std::decay_t<decltype(std::declval<const V&>()[0])>;

template <class Cmp>
std::vector<std::string> diag_conditions(const Cmp& c) {
  static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  auto zero = [&](int i) {
    return c.compare([i](const auto& k) { return std::pair{k[i], Elem<decltype(k)>{}}; }) == 0;
  };
  std::vector<std::string> out;

  if (c.compare([](const auto& k) { return std::pair{k[0], k[1]}; }) == 0 &&
      c.compare([](const auto& k) { return std::pair{k[1], k[2]}; }) == 0)
    out.push_back("T7.1");

  const bool z[3] = {zero(0), zero(1), zero(2)};
  for (int i = 0; i < 3; ++i)
    if (!z[i] && z[(i + 1) % 3] && z[(i + 2) % 3]) {
      out.push_back("T7.2");
      break;
    }

  int zero_sums = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (c.compare([i, j](const auto& k) { return std::pair{k[i] + k[j], Elem<decltype(k)>{}}; }) == 0) ++zero_sums;
  if (zero_sums == 2) out.push_back("T7.3");

  if (c.compare([](const auto& k) {
        return std::pair{(k[0] + k[1]) * (k[0] + k[2]) * (k[1] + k[2]), Elem<decltype(k)>{}};
      }) < 0)
    out.push_back("T7.4");

  bool c5 = false, c6 = false, c7 = false;
  for (const auto& p : perms) {
    const int a = p[0], b = p[1], d = p[2];
    auto mean = [b, d](const auto& k) { return (k[b] + k[d]) / 2; };
    if (!c5 && c.compare([=](const auto& k) { return std::pair{k[b] * k[d], k[a] * k[a]}; }) <= 0 &&
        c.compare([=](const auto& k) { return std::pair{k[a] * k[a], mean(k) * mean(k)}; }) < 0 &&
        c.compare([=](const auto& k) { return std::pair{k[a], mean(k)}; }) < 0)
      c5 = true;
    if (!c6 && c.compare([=](const auto& k) { return std::pair{k[b], Elem<decltype(k)>{}}; }) < 0 &&
        c.compare([=](const auto& k) { return std::pair{k[d], Elem<decltype(k)>{}}; }) < 0 &&
        c.compare([=](const auto& k) { return std::pair{k[a] * k[a], k[b] * k[d]}; }) <= 0)
      c6 = true;
    if (!c7 && c.compare([=](const auto& k) { return std::pair{k[a], mean(k)}; }) < 0 &&
        c.compare([=](const auto& k) { return std::pair{k[a], -mean(k)}; }) < 0)
      c7 = true;
  }
  if (c5) out.push_back("T7.5");
  if (c6) out.push_back("T7.6");
  if (c7) out.push_back("T7.7");
  return out;
}

// vars = {k1, trace}; Re of the pair = (trace - k1) / 2.
template <class Cmp>
std::vector<std::string> complex_pair_conditions(const Cmp& c) {
  auto re = [](const auto& k) { return (k[1] - k[0]) / 2; };
  std::vector<std::string> out;
  const int s = c.compare([&](const auto& k) { return std::pair{re(k), Elem<decltype(k)>{}}; });
  if (s < 0) out.push_back("T6.3a");
  if (s >= 0 && c.compare([&](const auto& k) { return std::pair{re(k), -k[0]}; }) < 0) out.push_back("T6.3b");
  return out;
}

// vars = {simple, jordan}.
template <class Cmp>
std::vector<std::string> jordan2_conditions(const Cmp& c) {
  std::vector<std::string> out;
  const int sj = c.compare([](const auto& k) { return std::pair{k[1], Elem<decltype(k)>{}}; });
  const int ss = c.compare([](const auto& k) { return std::pair{k[0], Elem<decltype(k)>{}}; });
  if (sj == 0 && ss == 0) out.push_back("T6.1a");
  if (sj < 0) out.push_back("T6.1b");
  return out;
}

Verdict from_conditions(std::vector<std::string> conds) {
  Verdict v;
  v.conditions = std::move(conds);
  v.admissible = !v.conditions.empty();
  return v;
}

std::vector<Rational> exact_values(const std::vector<RealRoot>& ev) {
  std::vector<Rational> out;
  for (const auto& r : ev) out.push_back(r.exact_value());
  return out;
}

std::vector<QSqrt> as_q(const std::vector<Rational>& v) {
  std::vector<QSqrt> out;
  for (const auto& x : v) out.push_back(rational_q(x));
  return out;
}

}  // namespace

template <>
Verdict admissible_nondiagonalizable(const SegreData<Rational>& d, const Field<Rational>&) {
  switch (d.type) {
    case SegreType::S111:
      throw WrongType("{111} data goes to admissible_diagonalizable");
    case SegreType::S21:
      return from_conditions(jordan2_conditions(ExactCmp(as_q(exact_values(d.eigenvalues)))));
    case SegreType::S3: {
      std::vector<std::string> c;
      if (sgn(d.eigenvalues[0].exact_value()) < 0) c.push_back("T6.2");
      return from_conditions(c);
    }
    case SegreType::S1ZZ: {
      const RealRoot& k1 = d.eigenvalues[0];
      if (k1.is_exact()) return from_conditions(complex_pair_conditions(ExactCmp(as_q({k1.exact_value(), d.trace()}))));
      return from_conditions(complex_pair_conditions(ExactCmp(std::vector<RealRoot>{k1, RealRoot(d.trace())})));
    }
  }
  throw std::logic_error("unknown Segre type");
}

template <>
Verdict admissible_nondiagonalizable(const SegreData<double>& d, const Field<double>& field) {
  const Tolerance t = field.tol;
  switch (d.type) {
    case SegreType::S111:
      throw WrongType("{111} data goes to admissible_diagonalizable");
    case SegreType::S21:
      return from_conditions(jordan2_conditions(ApproxCmp(d.eigenvalues, t)));
    case SegreType::S3: {
      std::vector<std::string> c;
      if (t.sign(d.eigenvalues[0]) < 0) c.push_back("T6.2");
      return from_conditions(c);
    }
    case SegreType::S1ZZ:
      return from_conditions(complex_pair_conditions(ApproxCmp({d.eigenvalues[0], d.eigenvalues[0] + 2 * d.pair_re}, t)));
  }
  throw std::logic_error("unknown Segre type");
}

template <>
Verdict admissible_diagonalizable(const SegreData<Rational>& d, const Field<Rational>&) {
  if (d.type != SegreType::S111) throw WrongType("admissible_diagonalizable needs {111} data");
  return from_conditions(diag_conditions(triple_cmp(d)));
}

template <>
Verdict admissible_diagonalizable(const SegreData<double>& d, const Field<double>& field) {
  if (d.type != SegreType::S111) throw WrongType("admissible_diagonalizable needs {111} data");
  return from_conditions(diag_conditions(ApproxCmp(d.eigenvalues, field.tol)));
}

template <>
Verdict admissible_diagonalizable(const std::array<Rational, 3>& k, const Field<Rational>&) {
  return from_conditions(diag_conditions(ExactCmp(as_q({k[0], k[1], k[2]}))));
}

template <>
Verdict admissible_diagonalizable(const std::array<double, 3>& k, const Field<double>& field) {
  return from_conditions(diag_conditions(ApproxCmp({k[0], k[1], k[2]}, field.tol)));
}

template <Scalar T>
Verdict admissible_symmetric(const SegreData<T>& d, const Field<T>& field) {
  Verdict v;
  auto val = [](const RealOf<T>& r) -> T {
    if constexpr (std::is_same_v<T, Rational>) return r.is_exact() ? r.exact_value() : Rational(1, 7);
    else return r;
  };
  auto is_rational = [](const RealOf<T>& r) {
    if constexpr (std::is_same_v<T, Rational>) return r.is_exact();
    else return (void)r, true;
  };
  if (d.type == SegreType::S111) {
    const auto& e = d.eigenvalues;
    // Repeated roots of a rational cubic are rational, so the irrational
    // case never reaches the equalities below.
    if (!std::all_of(e.begin(), e.end(), is_rational)) return v;
    const T a = val(e[0]), b = val(e[1]), c = val(e[2]);
    if (field.equal(a, b) && field.equal(b, c)) {
      v.conditions.push_back("T5.1");
      v.witness = SymmetricSpaceSpec<T>(SpaceForm<T>{T((a + b + c) / 3)});
    } else {
      const bool z[3] = {field.is_zero(a), field.is_zero(b), field.is_zero(c)};
      if (int(z[0]) + int(z[1]) + int(z[2]) == 2) {
        const T cc = z[0] ? (z[1] ? c : b) : a;
        v.conditions.push_back("T5.2");
        v.witness = SymmetricSpaceSpec<T>(
            Product<T>{field.sign(cc) > 0 ? ProductKind::S2_x_R_1 : ProductKind::H2_x_R_1, cc});
      }
    }
  } else if (d.type == SegreType::S21) {
    if (field.is_zero(val(d.eigenvalues[0])) && field.is_zero(val(d.eigenvalues[1]))) {
      v.conditions.push_back("T5.3");
      v.witness = SymmetricSpaceSpec<T>(PlaneWaveLike<T>{1, T(1), {}, {}});
    }
  }
  v.admissible = !v.conditions.empty();
  return v;
}

template <Scalar T>
Verdict admissible(const SegreData<T>& d, const Field<T>& field) {
  Verdict v = d.type == SegreType::S111 ? admissible_diagonalizable(d, field) : admissible_nondiagonalizable(d, field);
  Verdict s = admissible_symmetric(d, field);
  v.conditions.insert(v.conditions.end(), s.conditions.begin(), s.conditions.end());
  if (s.witness) v.witness = s.witness;
  v.admissible = !v.conditions.empty();
  return v;
}

A2Reconstruction reconstruct_A2(const Rational& k1, const Rational& k2) {
  A2Reconstruction out;
  if (sgn(k2) > 0) throw OutOfRange("reconstruct_A2 needs k2 <= 0");
  if (sgn(k2) == 0) {
    if (sgn(k1) == 0) {
      out.exact.push_back({Family::A2, {Rational(0), Rational(1)}});
      out.lambda2_free = true;
    }
    return out;
  }
  Rational m;
  if (rational_sqrt(Rational(-k2), m)) {
    const Rational l2 = (k1 + 3 * k2) / (2 * m);
    out.exact.push_back({Family::A2, {Rational(2 * m), Rational(-l2)}});
    out.exact.push_back({Family::A2, {Rational(-2 * m), l2}});
  } else {
    const double md = std::sqrt(-k2.get_d());
    const double l2 = (k1.get_d() + 3 * k2.get_d()) / (2 * md);
    out.approx.push_back({Family::A2, {2 * md, -l2}});
    out.approx.push_back({Family::A2, {-2 * md, l2}});
  }
  return out;
}

A2Reconstruction reconstruct_A2(double k1, double k2) {
  const Tolerance t{tau_from_env()};
  A2Reconstruction out;
  if (t.sign(k2) > 0) throw OutOfRange("reconstruct_A2 needs k2 <= 0");
  if (t.sign(k2) == 0) {
    if (t.sign(k1) == 0) {
      out.approx.push_back({Family::A2, {0.0, 1.0}});
      out.lambda2_free = true;
    }
    return out;
  }
  const double md = std::sqrt(-k2);
  const double l2 = (k1 + 3 * k2) / (2 * md);
  out.approx.push_back({Family::A2, {2 * md, -l2}});
  out.approx.push_back({Family::A2, {-2 * md, l2}});
  return out;
}

template <Scalar T>
ForwardCheck<T> forward_check(const Mat3<T>& K, const Field<T>& field) {
  ForwardCheck<T> fc{classify(K, field), {}};
  fc.verdict = admissible(fc.segre, field);
  return fc;
}

template <Scalar T>
bool verify_forward(const MetricLieAlgebra<T>& alg, const Field<T>& field) {
  return forward_check(curvature_operator(alg, field).K, field).verdict.admissible;
}

#define LORENTZ3_INSTANTIATE(T)                                                \
  template Verdict admissible_symmetric(const SegreData<T>&, const Field<T>&); \
  template Verdict admissible(const SegreData<T>&, const Field<T>&);           \
  template ForwardCheck<T> forward_check(const Mat3<T>&, const Field<T>&);     \
  template bool verify_forward(const MetricLieAlgebra<T>&, const Field<T>&);

LORENTZ3_INSTANTIATE(Rational)
LORENTZ3_INSTANTIATE(double)

#undef LORENTZ3_INSTANTIATE

}  // namespace lorentz3
