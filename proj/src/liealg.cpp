#include "lorentz3/liealg.hpp"

#include <cmath>
#include <numbers>

namespace lorentz3 {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::A1: return "A1";
    case Family::A2: return "A2";
    case Family::A3: return "A3";
    case Family::A4: return "A4";
    case Family::NA: return "NA";
    case Family::NB: return "NB";
    case Family::C1: return "C1";
    case Family::C2: return "C2";
  }
  return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
  for (Family f : kAllFamilies)
    if (family_name(f) == name) return f;
  if (name == "A" || name == "N" || name == "NonUniA") return Family::NA;
  if (name == "B") return Family::NB;
  if (name == "NC1") return Family::C1;
  if (name == "NC2") return Family::C2;
  return std::nullopt;
}

bool is_unimodular(Family f) {
  return f == Family::A1 || f == Family::A2 || f == Family::A3 || f == Family::A4;
}

const std::vector<std::string>& param_names(Family f) {
  static const std::map<Family, std::vector<std::string>> names{
      {Family::A1, {"lambda1", "lambda2", "lambda3"}},
      {Family::A2, {"lambda1", "lambda2"}},
      {Family::A3, {"lambda", "lambda1"}},
      {Family::A4, {"alpha", "beta", "lambda3"}},
      {Family::NA, {"lambda", "mu", "cos_phi", "sin_phi"}},
      {Family::NB, {"p", "q", "s", "t"}},
      {Family::C1, {"p", "q", "s"}},
      {Family::C2, {"p", "q", "r"}},
  };
  return names.at(f);
}

template <Scalar T>
StructureConstants<T>::StructureConstants() {
  for (auto& row : c_) row.fill(zero_vec<T>());
}

template <Scalar T>
void StructureConstants<T>::set(int i, int j, const Vec3<T>& v) {
  if (i == j) throw std::invalid_argument("bracket of a vector with itself is zero");
  c_[i][j] = v;
  c_[j][i] = {T(-v[0]), T(-v[1]), T(-v[2])};
}

template <Scalar T>
Vec3<T> StructureConstants<T>::bracket(const Vec3<T>& x, const Vec3<T>& y) const {
  Vec3<T> r = zero_vec<T>();
  for (int i = 0; i < 3; ++i) {
    if (x[i] == T(0)) continue;
    for (int j = 0; j < 3; ++j) {
      if (i == j || y[j] == T(0)) continue;
      const T f = x[i] * y[j];
      for (int k = 0; k < 3; ++k) r[k] += f * c_[i][j][k];
    }
  }
  return r;
}

namespace {

template <Scalar T>
Vec3<T> v3(const T& a, const T& b, const T& c) {
  return {a, b, c};
}

void require(bool ok, const char* what) {
  if (!ok) throw ConstraintViolation(what);
}

}  // namespace

template <Scalar T>
void check_constraints(const FamilyParams<T>& params, const Field<T>& field) {
  const auto& v = params.values;
  if (v.size() != param_names(params.family).size())
    throw ConstraintViolation(std::string(family_name(params.family)) + " expects " +
                              std::to_string(param_names(params.family).size()) + " parameters");
  switch (params.family) {
    case Family::A4:
      require(!field.is_zero(v[1]), "A4 requires beta != 0");
      break;
    case Family::NA: {
      require(!field.is_zero(v[3]), "NA requires sin(phi) != 0");
      require(!field.is_zero(T(v[0] + v[1])), "NA requires lambda + mu != 0");
      require(field.sign(v[0]) >= 0, "NA requires lambda >= 0");
      require(field.sign(v[1]) >= 0, "NA requires mu >= 0");
      require(field.equal(T(v[2] * v[2] + v[3] * v[3]), T(1)), "NA requires cos(phi)^2 + sin(phi)^2 = 1");
      break;
    }
    case Family::NB:
      require(!field.equal(v[1], v[3]), "NB requires q != t");
      break;
    case Family::C1:
      require(!field.equal(v[1], v[2]), "C1 requires q != s");
      break;
    case Family::C2:
      require(!field.is_zero(v[1]), "C2 requires q != 0");
      require(!field.is_zero(T(v[0] + v[2])), "C2 requires p + r != 0");
      break;
    default:
      break;
  }
}

template <Scalar T>
MetricLieAlgebra<T> build(const FamilyParams<T>& params, const Field<T>& field) {
  check_constraints(params, field);
  const auto& v = params.values;
  const T z(0), one(1);
  MetricLieAlgebra<T> alg;
  alg.params = params;
  auto& sc = alg.sc;
  switch (params.family) {
    case Family::A1:
      sc.set(0, 1, v3(z, z, v[2]));
      sc.set(0, 2, v3(z, T(-v[1]), z));
      sc.set(1, 2, v3(v[0], z, z));
      alg.gram = Mat3<T>::diag(T(-1), one, one);
      break;
    case Family::A2:
      sc.set(0, 1, v3(z, T(-1), T(one - v[1])));
      sc.set(0, 2, v3(z, T(-(one + v[1])), one));
      sc.set(1, 2, v3(v[0], z, z));
      alg.gram = Mat3<T>::diag(one, one, T(-1));
      break;
    case Family::A3:
      sc.set(0, 1, v3(one, z, T(-v[0])));
      sc.set(0, 2, v3(T(-1), T(-v[0]), z));
      sc.set(1, 2, v3(v[1], one, one));
      alg.gram = Mat3<T>::diag(one, one, T(-1));
      break;
    case Family::A4:
      sc.set(0, 1, v3(z, z, v[2]));
      sc.set(0, 2, v3(T(-v[1]), T(-v[0]), z));
      sc.set(1, 2, v3(T(-v[0]), v[1], z));
      alg.gram = Mat3<T>::diag(T(-1), one, one);
      break;
    case Family::NA:
      sc.set(0, 2, v3(T(v[0] * v[3]), T(-v[1] * v[2]), z));
      sc.set(1, 2, v3(T(v[0] * v[2]), T(v[1] * v[3]), z));
      alg.gram = Mat3<T>::diag(one, one, T(-1));
      break;
    case Family::NB:
      sc.set(0, 2, v3(v[3], T(-v[2]), z));
      sc.set(1, 2, v3(v[0], v[1], z));
      alg.gram = Mat3<T>{{z, z, T(-1)}, {z, one, z}, {T(-1), z, z}};
      break;
    case Family::C1:
      sc.set(0, 2, v3(v[2], v[0], z));
      sc.set(1, 2, v3(v[0], v[1], z));
      alg.gram = Mat3<T>::diag(one, T(-1), one);
      break;
    case Family::C2:
      sc.set(0, 2, v3(v[1], T(-v[2]), z));
      sc.set(1, 2, v3(v[0], v[1], z));
      alg.gram = Mat3<T>::diag(one, T(-1), one);
      break;
  }
  return alg;
}

template <Scalar T>
bool check_jacobi(const StructureConstants<T>& sc, const Field<T>& field) {
  const Vec3<T> e0 = unit_vec<T>(0), e1 = unit_vec<T>(1), e2 = unit_vec<T>(2);
  const Vec3<T> s = sc.bracket(sc(0, 1), e2) + sc.bracket(sc(1, 2), e0) + sc.bracket(sc(2, 0), e1);
  double scale = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) scale = std::max(scale, magnitude(sc(i, j)[k]));
  for (const auto& x : s)
    if (!field.is_zero(x, scale * scale)) return false;
  return true;
}

template <Scalar T>
bool is_lorentzian_gram(const Mat3<T>& gram, const Field<T>& field) {
  if (!approx_symmetric(gram, field)) return false;
  const double s = std::max(1.0, gram.max_abs());
  const int det = field.sign(gram.det(), s * s * s);
  if (det >= 0) return false;
  // Coefficients of det(xI - G) in descending order: 1, -tr, minors, -det.
  const int signs[4] = {1, -field.sign(gram.trace(), s), field.sign(gram.principal_minor_sum(), s * s), -det};
  int changes = 0, last = 0;
  for (int sg : signs) {
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes == 2;
}

template <Scalar T>
MetricLieAlgebra<T> make_free_algebra(const StructureConstants<T>& sc, const Mat3<T>& gram, const Field<T>& field) {
  if (!check_jacobi(sc, field)) throw ConstraintViolation("structure constants fail the Jacobi identity");
  if (!is_lorentzian_gram(gram, field)) throw DegenerateMetric("Gram matrix is not Lorentzian (signature (+,+,-))");
  return {sc, gram, std::nullopt};
}

std::string_view lie_type_name(LieType t) {
  switch (t) {
    case LieType::su2: return "su(2)";
    case LieType::sl2R: return "sl(2,R)";
    case LieType::e2: return "e(2)";
    case LieType::e11: return "e(1,1)";
    case LieType::h: return "h";
    case LieType::R3: return "R^3";
    case LieType::not_applicable: return "-";
  }
  return "?";
}

LieType lie_type_from_signs(std::array<int, 3> signs) {
  int zeros = 0, pos = 0, neg = 0;
  for (int s : signs) {
    if (s == 0) ++zeros;
    else if (s > 0) ++pos;
    else ++neg;
  }
  switch (zeros) {
    case 0: return (pos == 3 || neg == 3) ? LieType::su2 : LieType::sl2R;
    case 1: return (pos == 2 || neg == 2) ? LieType::e2 : LieType::e11;
    case 2: return LieType::h;
    default: return LieType::R3;
  }
}

template <Scalar T>
LieType unimodular_type(const FamilyParams<T>& params, const Field<T>& field) {
  const auto& v = params.values;
  auto nz = [&](const T& x) { return !field.is_zero(x); };
  switch (params.family) {
    case Family::A1:
      return lie_type_from_signs({field.sign(v[0]), field.sign(v[1]), field.sign(v[2])});
    case Family::A2:
      if (nz(v[0]) && nz(v[1])) return LieType::sl2R;
      if (nz(v[0]) || nz(v[1])) return LieType::e11;
      return LieType::h;
    case Family::A3:
      return nz(v[0]) ? LieType::sl2R : LieType::e11;
    case Family::A4:
      return nz(v[2]) ? LieType::sl2R : LieType::e11;
    default:
      throw NotUnimodular(std::string(family_name(params.family)) + " is not unimodular");
  }
}

ParamRange default_range(Family f, std::string_view param) {
  if (f == Family::NA && (param == "lambda" || param == "mu")) return {0.0, 3.0};
  if (f == Family::NA) return {-1.0, 1.0};
  return {-3.0, 3.0};
}

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw EmptyRange("empty integer range");
  const auto n = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % n);
}

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

namespace {

ParamRange range_for(Family f, const SampleSpec& spec, const std::string& name) {
  if (auto it = spec.ranges.find(name); it != spec.ranges.end()) {
    if (!(it->second.lo <= it->second.hi)) throw EmptyRange("range for " + name + " is empty");
    return it->second;
  }
  return default_range(f, name);
}

Rational draw_rational(std::mt19937_64& rng, ParamRange r, long max_den) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const long d = static_cast<long>(uniform_int(rng, 1, std::max(1L, max_den)));
    const auto lo = static_cast<std::int64_t>(std::ceil(r.lo * d));
    const auto hi = static_cast<std::int64_t>(std::floor(r.hi * d));
    if (lo > hi) continue;
    Rational q(static_cast<long>(uniform_int(rng, lo, hi)), d);
    q.canonicalize();
    return q;
  }
  throw EmptyRange("no rational with the allowed denominators in range");
}

}  // namespace

template <Scalar T>
FamilyParams<T> draw(Family f, const SampleSpec& spec, std::mt19937_64& rng) {
  FamilyParams<T> out{f, {}};
  const auto& names = param_names(f);
  const std::size_t plain = f == Family::NA ? 2 : names.size();
  for (std::size_t i = 0; i < plain; ++i) {
    const ParamRange r = range_for(f, spec, names[i]);
    if constexpr (std::is_same_v<T, Rational>) out.values.push_back(draw_rational(rng, r, spec.max_denominator));
    else out.values.push_back(uniform_real(rng, r.lo, r.hi));
  }
  if (f == Family::NA) {
    if constexpr (std::is_same_v<T, Rational>) {
      // Rational point on the unit circle from a Pythagorean parametrization.
      const long m = static_cast<long>(uniform_int(rng, 0, std::max(1L, spec.max_denominator)));
      const long n = static_cast<long>(uniform_int(rng, 1, std::max(1L, spec.max_denominator)));
      const long h = m * m + n * n;
      Rational c(m * m - n * n, h), s(2 * m * n, h);
      c.canonicalize();
      s.canonicalize();
      if (uniform_int(rng, 0, 1)) c = -c;
      if (uniform_int(rng, 0, 1)) s = -s;
      out.values.push_back(c);
      out.values.push_back(s);
    } else {
      const double phi = uniform_real(rng, 0.0, 2.0 * std::numbers::pi);
      out.values.push_back(std::cos(phi));
      out.values.push_back(std::sin(phi));
    }
  }
  return out;
}

template <Scalar T>
FamilyParams<T> sample(Family f, const SampleSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    FamilyParams<T> p = draw<T>(f, spec, rng);
    try {
      check_constraints(p);
      return p;
    } catch (const ConstraintViolation&) {
    }
  }
  throw EmptyRange(std::string("constraints of ") + std::string(family_name(f)) + " exclude the sampling ranges");
}

template class StructureConstants<Rational>;
template class StructureConstants<double>;
template MetricLieAlgebra<Rational> build(const FamilyParams<Rational>&, const Field<Rational>&);
template MetricLieAlgebra<double> build(const FamilyParams<double>&, const Field<double>&);
template void check_constraints(const FamilyParams<Rational>&, const Field<Rational>&);
template void check_constraints(const FamilyParams<double>&, const Field<double>&);
template MetricLieAlgebra<Rational> make_free_algebra(const StructureConstants<Rational>&, const Mat3<Rational>&,
                                                      const Field<Rational>&);
template MetricLieAlgebra<double> make_free_algebra(const StructureConstants<double>&, const Mat3<double>&,
                                                    const Field<double>&);
template bool check_jacobi(const StructureConstants<Rational>&, const Field<Rational>&);
template bool check_jacobi(const StructureConstants<double>&, const Field<double>&);
template bool is_lorentzian_gram(const Mat3<Rational>&, const Field<Rational>&);
template bool is_lorentzian_gram(const Mat3<double>&, const Field<double>&);
template LieType unimodular_type(const FamilyParams<Rational>&, const Field<Rational>&);
template LieType unimodular_type(const FamilyParams<double>&, const Field<double>&);
template FamilyParams<Rational> draw<Rational>(Family, const SampleSpec&, std::mt19937_64&);
template FamilyParams<double> draw<double>(Family, const SampleSpec&, std::mt19937_64&);
template FamilyParams<Rational> sample<Rational>(Family, const SampleSpec&, std::uint64_t);
template FamilyParams<double> sample<double>(Family, const SampleSpec&, std::uint64_t);

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace lorentz3
