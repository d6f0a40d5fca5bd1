#include "lorentz3/segre.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lorentz3 {

std::string_view segre_type_name(SegreType t) {
  switch (t) {
    case SegreType::S111: return "{111}";
    case SegreType::S1ZZ: return "{1zz}";
    case SegreType::S21: return "{21}";
    case SegreType::S3: return "{3}";
  }
  return "?";
}

std::optional<SegreType> segre_type_from_name(std::string_view name) {
  if (name == "{111}" || name == "S111" || name == "111") return SegreType::S111;
  if (name == "{1zz}" || name == "{1zz\xcc\x84}" || name == "S1ZZ" || name == "1zz") return SegreType::S1ZZ;
  if (name == "{21}" || name == "{12}" || name == "S21" || name == "21" || name == "12") return SegreType::S21;
  if (name == "{3}" || name == "S3" || name == "3") return SegreType::S3;
  return std::nullopt;
}

template <Scalar T>
const RealOf<T>& SegreData<T>::jordan_eigenvalue() const {
  if (type == SegreType::S21) return eigenvalues[1];
  if (type == SegreType::S3) return eigenvalues[0];
  throw std::logic_error("no Jordan block in this Segre type");
}

bool operator==(const SegreData<Rational>& a, const SegreData<Rational>& b) {
  return a.type == b.type && a.char_poly == b.char_poly;
}

bool segre_close(const SegreData<double>& a, const SegreData<double>& b, double tol) {
  if (a.type != b.type || a.eigenvalues.size() != b.eigenvalues.size()) return false;
  const Tolerance t{tol};
  for (std::size_t i = 0; i < a.eigenvalues.size(); ++i)
    if (!t.equal(a.eigenvalues[i], b.eigenvalues[i])) return false;
  if (a.type == SegreType::S1ZZ && !(t.equal(a.pair_re, b.pair_re) && t.equal(a.pair_im, b.pair_im))) return false;
  return true;
}

namespace {

template <Scalar T>
Poly<T> linear(const T& root) {
  return Poly<T>({T(-root), T(1)});
}

template <Scalar T>
RealOf<T> real_of(const T& x) {
  if constexpr (std::is_same_v<T, Rational>) return RealRoot(x);
  else return x;
}

template <Scalar T>
std::vector<RealOf<T>> expand(const RootData<T>& rd) {
  std::vector<RealOf<T>> out;
  for (std::size_t i = 0; i < rd.roots.size(); ++i)
    for (int m = 0; m < rd.multiplicity[i]; ++m) out.push_back(rd.roots[i]);
  return out;
}

// {simple, jordan} from a double-root layout.
template <Scalar T>
std::vector<RealOf<T>> simple_then_double(const RootData<T>& rd) {
  if (rd.multiplicity[0] == 2) return {rd.roots[1], rd.roots[0]};
  return {rd.roots[0], rd.roots[1]};
}

template <Scalar T>
Mat3<T> companion(const Poly<T>& p) {
  const T z(0), one(1);
  return Mat3<T>{{z, z, T(-p.coeff(0))}, {one, z, T(-p.coeff(1))}, {z, one, T(-p.coeff(2))}};
}

SegreData<Rational> classify_exact(const Mat3<Rational>& K) {
  SegreData<Rational> d;
  d.char_poly = char_poly(K);
  const RootData<Rational> rd = cubic_root_data(d.char_poly);
  if (rd.disc_sign < 0) {
    d.type = SegreType::S1ZZ;
    d.eigenvalues = rd.roots;
    d.pair_re = rd.pair_re;
    d.pair_im = rd.pair_im;
    return d;
  }
  if (rd.disc_sign > 0) {
    d.type = SegreType::S111;
    d.eigenvalues = rd.roots;
    return d;
  }
  const Poly<Rational> q = square_free_part(d.char_poly);
  const Mat3<Rational> qk = q(K);
  if (qk == Mat3<Rational>::zero()) {
    d.type = SegreType::S111;
    d.eigenvalues = expand(rd);
    return d;
  }
  if (q.degree() == 2) {
    d.type = SegreType::S21;
    d.eigenvalues = simple_then_double(rd);
    return d;
  }
  if (qk * qk == Mat3<Rational>::zero()) {
    d.type = SegreType::S21;
    d.eigenvalues = {rd.roots[0], rd.roots[0]};
  } else {
    d.type = SegreType::S3;
    d.eigenvalues = {rd.roots[0]};
  }
  return d;
}

SegreData<double> classify_approx(const Mat3<double>& K, const Field<double>& field) {
  SegreData<double> d;
  d.tau = field.tau();
  d.char_poly = char_poly(K);
  RootData<double> rd = cubic_root_data(d.char_poly, field);
  const double scale = std::max(1.0, K.max_abs());
  // A clustered root is only sqrt(eps)-accurate; the trace pins it to eps so
  // the rank test below can use tau.
  const double tr = K.trace();
  if (rd.disc_sign == 0 && rd.roots.size() == 2) {
    const int dbl = rd.multiplicity[0] == 2 ? 0 : 1;
    rd.roots[dbl] = (tr - rd.roots[1 - dbl]) / 2;
  } else if (rd.disc_sign == 0 && rd.roots.size() == 1) {
    rd.roots[0] = tr / 3;
  }
  if (rd.disc_sign < 0) {
    d.type = SegreType::S1ZZ;
    d.eigenvalues = rd.roots;
    d.pair_re = rd.pair_re;
    d.pair_im = rd.pair_im;
    return d;
  }
  if (rd.disc_sign > 0) {
    d.type = SegreType::S111;
    d.eigenvalues = rd.roots;
    return d;
  }
  if (rd.roots.size() == 2) {
    const double k = rd.multiplicity[0] == 2 ? rd.roots[0] : rd.roots[1];
    const int r = mat3_rank(K - k * Mat3<double>::identity(), field, scale);
    if (r <= 1) {
      d.type = SegreType::S111;
      d.eigenvalues = expand(rd);
    } else {
      d.type = SegreType::S21;
      d.eigenvalues = simple_then_double(rd);
    }
    return d;
  }
  const double k = rd.roots[0];
  const int r = mat3_rank(K - k * Mat3<double>::identity(), field, scale);
  if (r == 0) {
    d.type = SegreType::S111;
    d.eigenvalues = {k, k, k};
  } else if (r == 1) {
    d.type = SegreType::S21;
    d.eigenvalues = {k, k};
  } else {
    d.type = SegreType::S3;
    d.eigenvalues = {k};
  }
  return d;
}

}  // namespace

template <>
SegreData<Rational> classify(const Mat3<Rational>& K, const Field<Rational>&) {
  return classify_exact(K);
}

template <>
SegreData<double> classify(const Mat3<double>& K, const Field<double>& field) {
  return classify_approx(K, field);
}

template <Scalar T>
SegreData<T> segre_111(const T& a, const T& b, const T& c) {
  std::vector<T> v{a, b, c};
  std::sort(v.begin(), v.end());
  SegreData<T> d;
  d.type = SegreType::S111;
  d.char_poly = linear(v[0]) * linear(v[1]) * linear(v[2]);
  for (const auto& x : v) d.eigenvalues.push_back(real_of(x));
  return d;
}

template <Scalar T>
SegreData<T> segre_1zz_sq(const T& k1, const T& re, const T& im_squared) {
  if (!(im_squared > T(0))) throw std::invalid_argument("{1zz} needs a nonzero imaginary part");
  SegreData<T> d;
  d.type = SegreType::S1ZZ;
  d.char_poly = linear(k1) * Poly<T>({T(re * re + im_squared), T(T(-2) * re), T(1)});
  d.eigenvalues = {real_of(k1)};
  d.pair_re = to_double(re);
  d.pair_im = std::sqrt(to_double(im_squared));
  return d;
}

template <Scalar T>
SegreData<T> segre_1zz(const T& k1, const T& re, const T& im) {
  return segre_1zz_sq(k1, re, T(im * im));
}

template <Scalar T>
SegreData<T> segre_21(const T& simple, const T& jordan) {
  SegreData<T> d;
  d.type = SegreType::S21;
  d.char_poly = linear(simple) * linear(jordan) * linear(jordan);
  d.eigenvalues = {real_of(simple), real_of(jordan)};
  return d;
}

template <Scalar T>
SegreData<T> segre_3(const T& k) {
  SegreData<T> d;
  d.type = SegreType::S3;
  d.char_poly = linear(k) * linear(k) * linear(k);
  d.eigenvalues = {real_of(k)};
  return d;
}

SegreData<Rational> segre_from_char_poly(SegreType type, const Poly<Rational>& p_in) {
  if (p_in.degree() != 3) throw std::invalid_argument("characteristic polynomial must be cubic");
  const Poly<Rational> p = p_in.monic();
  const RootData<Rational> rd = cubic_root_data(p);
  SegreData<Rational> d;
  d.type = type;
  d.char_poly = p;
  auto bad = [&] {
    return std::invalid_argument(std::string("polynomial roots do not fit Segre type ") +
                                 std::string(segre_type_name(type)));
  };
  switch (type) {
    case SegreType::S1ZZ:
      if (rd.disc_sign >= 0) throw bad();
      d.eigenvalues = rd.roots;
      d.pair_re = rd.pair_re;
      d.pair_im = rd.pair_im;
      break;
    case SegreType::S111:
      if (rd.disc_sign < 0) throw bad();
      d.eigenvalues = expand(rd);
      break;
    case SegreType::S21:
      if (rd.disc_sign != 0) throw bad();
      d.eigenvalues = rd.roots.size() == 1 ? std::vector<RealRoot>{rd.roots[0], rd.roots[0]} : simple_then_double(rd);
      break;
    case SegreType::S3:
      if (rd.roots.size() != 1 || rd.multiplicity[0] != 3) throw bad();
      d.eigenvalues = rd.roots;
      break;
  }
  return d;
}

SegreData<double> to_double(const SegreData<Rational>& d) {
  SegreData<double> r;
  r.type = d.type;
  for (const auto& e : d.eigenvalues) r.eigenvalues.push_back(e.approx());
  r.pair_re = d.pair_re;
  r.pair_im = d.pair_im;
  r.char_poly = to_double(d.char_poly);
  return r;
}

template <>
Mat3<Rational> canonical_witness(const SegreData<Rational>& d) {
  const Rational z(0), one(1);
  switch (d.type) {
    case SegreType::S111: {
      const bool all_exact =
          std::all_of(d.eigenvalues.begin(), d.eigenvalues.end(), [](const RealRoot& r) { return r.is_exact(); });
      if (!all_exact) return companion(d.char_poly);
      return Mat3<Rational>::diag(d.eigenvalues[0].exact_value(), d.eigenvalues[1].exact_value(),
                                  d.eigenvalues[2].exact_value());
    }
    case SegreType::S1ZZ: {
      if (!d.eigenvalues[0].is_exact()) return companion(d.char_poly);
      const Rational k1 = d.eigenvalues[0].exact_value();
      const auto [q, rem] = divmod(d.char_poly, linear(k1));
      const Rational re = -q.coeff(1) / 2;
      const Rational im2 = q.coeff(0) - re * re;
      Rational im;
      if (rational_sqrt(im2, im)) return Mat3<Rational>{{k1, z, z}, {z, re, Rational(-im)}, {z, im, re}};
      return Mat3<Rational>{{k1, z, z}, {z, re, Rational(-im2)}, {z, one, re}};
    }
    case SegreType::S21: {
      const Rational s = d.eigenvalues[0].exact_value(), j = d.eigenvalues[1].exact_value();
      return Mat3<Rational>{{s, z, z}, {z, j, one}, {z, z, j}};
    }
    case SegreType::S3: {
      const Rational k = d.eigenvalues[0].exact_value();
      return Mat3<Rational>{{k, one, z}, {z, k, one}, {z, z, k}};
    }
  }
  throw std::logic_error("unknown Segre type");
}

template <>
Mat3<double> canonical_witness(const SegreData<double>& d) {
  switch (d.type) {
    case SegreType::S111:
      return Mat3<double>::diag(d.eigenvalues[0], d.eigenvalues[1], d.eigenvalues[2]);
    case SegreType::S1ZZ:
      return Mat3<double>{{d.eigenvalues[0], 0, 0}, {0, d.pair_re, -d.pair_im}, {0, d.pair_im, d.pair_re}};
    case SegreType::S21:
      return Mat3<double>{{d.eigenvalues[0], 0, 0}, {0, d.eigenvalues[1], 1}, {0, 0, d.eigenvalues[1]}};
    case SegreType::S3:
      return Mat3<double>{{d.eigenvalues[0], 1, 0}, {0, d.eigenvalues[0], 1}, {0, 0, d.eigenvalues[0]}};
  }
  throw std::logic_error("unknown Segre type");
}

template struct SegreData<Rational>;
template struct SegreData<double>;

#define LORENTZ3_INSTANTIATE(T)                                        \
  template SegreData<T> segre_111(const T&, const T&, const T&);       \
  template SegreData<T> segre_1zz(const T&, const T&, const T&);       \
  template SegreData<T> segre_1zz_sq(const T&, const T&, const T&);    \
  template SegreData<T> segre_21(const T&, const T&);                  \
  template SegreData<T> segre_3(const T&);

LORENTZ3_INSTANTIATE(Rational)
LORENTZ3_INSTANTIATE(double)

#undef LORENTZ3_INSTANTIATE

}  // namespace lorentz3
