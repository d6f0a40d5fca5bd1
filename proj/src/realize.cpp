#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <thread>

#include <Eigen/Core>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "lorentz3/curvature.hpp"
#include "lorentz3/existence.hpp"

namespace lorentz3 {

namespace {

constexpr double kBad = 1e3;

// What the search has to hit, in double.
struct Target {
  SegreData<double> d;
  std::array<double, 3> coeffs{};  // c0, c1, c2 of the monic char poly
  std::vector<double> distinct;    // for the minimal polynomial residual
  bool minpoly = false;            // {111} with a repeated root
  double tau = kDefaultTau;
  double bound = 1e-8;
};

Target make_target(const SegreData<double>& d, const RealizeOptions& opts) {
  Target t;
  t.d = d;
  for (int i = 0; i < 3; ++i) t.coeffs[i] = d.char_poly.coeff(i);
  if (d.type == SegreType::S111) {
    for (double e : d.eigenvalues)
      if (t.distinct.empty() || !Tolerance{opts.tau}.equal(t.distinct.back(), e)) t.distinct.push_back(e);
    t.minpoly = t.distinct.size() < 3;
  }
  t.tau = opts.tau;
  t.bound = opts.residual_bound;
  return t;
}

int search_dim(Family f) {
  switch (f) {
    case Family::A2:
    case Family::A3:
      return 2;
    case Family::NB:
      return 4;
    default:
      return 3;
  }
}

// NA is searched over (sqrt lambda, sqrt mu, phi) so the sign and unit
// circle constraints hold by construction.
FamilyParams<double> decode(Family f, const Eigen::VectorXd& x) {
  FamilyParams<double> p{f, {}};
  if (f == Family::NA) {
    p.values = {x[0] * x[0], x[1] * x[1], std::cos(x[2]), std::sin(x[2])};
  } else {
    for (Eigen::Index i = 0; i < x.size(); ++i) p.values.push_back(x[i]);
  }
  return p;
}

std::optional<Mat3<double>> operator_of(const FamilyParams<double>& p, double tau) {
  try {
    const Field<double> field{Tolerance{tau}};
    return curvature_operator(build(p, field), field).K;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::array<double, 4> residuals(const Target& t, const Mat3<double>& K) {
  std::array<double, 4> r{};
  const Poly<double> cp = char_poly(K);
  for (int i = 0; i < 3; ++i) r[i] = cp.coeff(i) - t.coeffs[i];
  if (t.minpoly) {
    Mat3<double> m = Mat3<double>::identity();
    for (double e : t.distinct) m = m * (K - e * Mat3<double>::identity());
    double s = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s += m(i, j) * m(i, j);
    r[3] = std::sqrt(s);
  }
  for (double& v : r)
    if (!std::isfinite(v)) v = kBad;
  return r;
}

double norm(const std::array<double, 4>& r) {
  double s = 0;
  for (double v : r) s += v * v;
  return std::sqrt(s);
}

struct Functor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  const Target* target = nullptr;
  Family family = Family::A1;
  int n = 3;

  int inputs() const { return n; }
  int values() const { return 4; }
  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& fv) const {
    const auto K = operator_of(decode(family, x), target->tau);
    fv.resize(4);
    if (!K) {
      fv.setConstant(kBad);
      return 0;
    }
    const auto r = residuals(*target, *K);
    for (int i = 0; i < 4; ++i) fv[i] = r[i];
    return 0;
  }
};

struct Candidate {
  FamilyParams<double> params;
  double residual = std::numeric_limits<double>::infinity();
  bool accepted = false;
};

// Same type under a tighter tolerance and eigenvalues close to the target.
bool accept(const Target& t, const FamilyParams<double>& p, double& residual) {
  const auto K = operator_of(p, t.tau);
  if (!K) return false;
  residual = norm(residuals(t, *K));
  if (!(residual < t.bound)) return false;
  try {
    const SegreData<double> got = classify(*K, Field<double>{Tolerance{t.tau / 10}});
    return got.type == t.d.type && segre_close(got, t.d, std::sqrt(t.bound));
  } catch (const std::exception&) {
    return false;
  }
}

Candidate run_start(const Target& t, Family f, std::uint64_t seed, const RealizeOptions& opts) {
  std::mt19937_64 rng(seed);
  const int n = search_dim(f);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = uniform_real(rng, -opts.box, opts.box);

  Functor fn;
  fn.target = &t;
  fn.family = f;
  fn.n = n;
  Eigen::NumericalDiff<Functor, Eigen::Central> nd(fn);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Functor, Eigen::Central>> lm(nd);
  lm.parameters.maxfev = opts.max_evals;
  lm.parameters.ftol = 1e-15;
  lm.parameters.xtol = 1e-15;
  lm.minimize(x);

  Candidate c;
  c.params = decode(f, x);
  c.accepted = accept(t, c.params, c.residual);
  return c;
}

// Nearest fraction with denominator <= max_den, by continued fractions.
Rational nearest_rational(double x, long max_den) {
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int i = 0; i < 40; ++i) {
    const double a = std::floor(r);
    if (std::abs(a) > 1e12) break;
    const long ai = static_cast<long>(a);
    const long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
    const double frac = r - a;
    if (frac < 1e-12) break;
    r = 1.0 / frac;
  }
  if (q1 == 0) return Rational(static_cast<long>(std::lround(x)));
  return Rational(p1, q1);
}

template <Scalar T>
bool same_data(const SegreData<T>& got, const SegreData<T>& want, const Target& t) {
  if constexpr (std::is_same_v<T, Rational>) {
    return got == want;
  } else {
    return got.type == want.type && segre_close(got, want, std::sqrt(t.bound));
  }
}

template <Scalar T>
Field<T> field_for(const RealizeOptions& opts) {
  if constexpr (std::is_same_v<T, Rational>) return {};
  else return Field<double>{Tolerance{opts.tau}};
}

std::optional<Verdict> exact_witness(const FamilyParams<Rational>& p, const SegreData<Rational>& d, Verdict v) {
  try {
    const auto K = curvature_operator(build(p)).K;
    if (!(classify(K) == d)) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  v.witness = p;
  v.residual = 0.0;
  return v;
}

std::optional<Verdict> approx_witness(const FamilyParams<double>& p, const Target& t, Verdict v) {
  double res = 0;
  if (!accept(t, p, res)) return std::nullopt;
  v.witness = p;
  v.residual = res;
  return v;
}

// Rational target: try to turn a double witness into an exact one.
std::optional<Verdict> snap(const FamilyParams<double>& p, const SegreData<Rational>& d, const Verdict& v) {
  if (p.family == Family::NA) return std::nullopt;
  for (long den : {1L, 2L, 4L, 8L, 16L, 64L}) {
    FamilyParams<Rational> q{p.family, {}};
    for (double x : p.values) q.values.push_back(nearest_rational(x, den));
    if (auto w = exact_witness(q, d, v)) return w;
  }
  return std::nullopt;
}

// Closed forms: A2 for {21} and for {111} of shape (a, -a, -a), A3 for {3}.
template <Scalar T>
std::optional<Verdict> closed_form(const SegreData<T>& d, const Target& t, const Verdict& v, bool a2_ok, bool a3_ok) {
  auto value = [](const RealOf<T>& r) -> std::optional<T> {
    if constexpr (std::is_same_v<T, Rational>) {
      if (!r.is_exact()) return std::nullopt;
      return r.exact_value();
    } else {
      return r;
    }
  };
  const Field<T> field = [&] {
    if constexpr (std::is_same_v<T, Rational>) return Field<Rational>{};
    else return Field<double>{Tolerance{t.tau}};
  }();

  if (d.type == SegreType::S21 && a2_ok) {
    const auto k1 = value(d.eigenvalues[0]), k2 = value(d.eigenvalues[1]);
    if (k1 && k2) {
      A2Reconstruction rec;
      try {
        rec = reconstruct_A2(*k1, *k2);
      } catch (const OutOfRange&) {
        return std::nullopt;
      }
      if constexpr (std::is_same_v<T, Rational>) {
        for (const auto& p : rec.exact)
          if (auto w = exact_witness(p, d, v)) return w;
      }
      for (const auto& p : rec.approx)
        if (auto w = approx_witness(p, t, v)) return w;
    }
  }
  if (d.type == SegreType::S111 && a2_ok) {
    const auto lo = value(d.eigenvalues[0]), mid = value(d.eigenvalues[1]), hi = value(d.eigenvalues[2]);
    if (lo && mid && hi && field.equal(*lo, *mid) && field.equal(*hi, T(-*lo)) && field.sign(*hi) > 0) {
      if constexpr (std::is_same_v<T, Rational>) {
        Rational m;
        if (rational_sqrt(*hi, m)) return exact_witness({Family::A2, {Rational(2 * m), m}}, d, v);
      }
      const double md = std::sqrt(to_double(*hi));
      if (auto w = approx_witness({Family::A2, {2 * md, md}}, t, v)) return w;
    }
  }
  if (d.type == SegreType::S3 && a3_ok) {
    const auto k = value(d.eigenvalues[0]);
    if (k && field.sign(*k) < 0) {
      if constexpr (std::is_same_v<T, Rational>) {
        Rational m;
        if (rational_sqrt(Rational(-*k), m)) return exact_witness({Family::A3, {Rational(2 * m), Rational(2 * m)}}, d, v);
      }
      const double l = 2 * std::sqrt(-to_double(*k));
      if (auto w = approx_witness({Family::A3, {l, l}}, t, v)) return w;
    }
  }
  return std::nullopt;
}

}  // namespace

template <Scalar T>
Verdict realize(const SegreData<T>& d, const RealizeOptions& opts) {
  const Field<T> field = field_for<T>(opts);
  Verdict v = admissible(d, field);
  if (!v.admissible) throw NotAdmissible("no admissibility condition holds for " + std::string(segre_type_name(d.type)));

  Target t;
  if constexpr (std::is_same_v<T, Rational>) t = make_target(to_double(d), opts);
  else t = make_target(d, opts);

  std::optional<Family> only;
  const bool symmetric_only = opts.family == "symmetric";
  if (!opts.family.empty() && !symmetric_only) {
    only = family_from_name(opts.family);
    if (!only) throw std::invalid_argument("unknown family: " + opts.family);
  }

  if (!only && v.witness) {
    try {
      const auto& spec = std::get<SymmetricSpaceSpec<T>>(*v.witness);
      const auto K = symmetric_operator(spec, field).K;
      if (same_data(classify(K, field), d, t)) {
        v.residual = 0.0;
        return v;
      }
    } catch (const std::exception&) {
    }
  }
  if (symmetric_only) throw SearchFailed("no locally symmetric space carries this operator", kBad);
  v.witness.reset();

  if (auto w = closed_form(d, t, v, !only || *only == Family::A2, !only || *only == Family::A3)) return *w;

  double best = std::numeric_limits<double>::infinity();
  const int batch = std::max(1, opts.batch);
  const int threads = std::max(1, opts.threads);
  for (std::size_t fi = 0; fi < kAllFamilies.size(); ++fi) {
    const Family f = kAllFamilies[fi];
    if (only && *only != f) continue;
    for (int b0 = 0; b0 < opts.starts; b0 += batch) {
      const int b1 = std::min(opts.starts, b0 + batch);
      std::vector<Candidate> got(b1 - b0);
      auto work = [&](int w) {
        for (int i = b0 + w; i < b1; i += threads)
          got[i - b0] = run_start(t, f, derive_seed(opts.seed, fi * 1000003ULL + i), opts);
      };
      if (threads == 1) {
        work(0);
      } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
      }
      const Candidate* pick = nullptr;
      for (const auto& c : got) {
        if (std::isfinite(c.residual)) best = std::min(best, c.residual);
        if (c.accepted && (!pick || c.residual < pick->residual)) pick = &c;
      }
      if (pick) {
        if constexpr (std::is_same_v<T, Rational>) {
          if (auto w = snap(pick->params, d, v)) return *w;
        }
        v.witness = pick->params;
        v.residual = pick->residual;
        return v;
      }
    }
  }
  throw SearchFailed("no witness within the search budget", best);
}

template Verdict realize(const SegreData<Rational>&, const RealizeOptions&);
template Verdict realize(const SegreData<double>&, const RealizeOptions&);

}  // namespace lorentz3
