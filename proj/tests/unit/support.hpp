#pragma once

#include <random>
#include <string>

#include "lorentz3/liealg.hpp"

namespace lorentz3::testing {

inline Rational q(const std::string& s) { return parse_rational(s); }

// n/d with |n/d| <= bound and 1 <= d <= max_den.
inline Rational random_rational(std::mt19937_64& rng, long bound, long max_den) {
  const long d = static_cast<long>(uniform_int(rng, 1, max_den));
  Rational r(static_cast<long>(uniform_int(rng, -bound * d, bound * d)), d);
  r.canonicalize();
  return r;
}

}  // namespace lorentz3::testing

#include "lorentz3/segre.hpp"

namespace lorentz3::testing {

// Exact Segre data of type t with small rational eigenvalues. Half of the
// draws reuse one value so coincident and triple roots show up often.
inline SegreData<Rational> random_segre(std::mt19937_64& rng, SegreType t) {
  auto r = [&] { return random_rational(rng, 4, 3); };
  const bool coincide = uniform_int(rng, 0, 1) == 1;
  switch (t) {
    case SegreType::S111: {
      const Rational a = r(), b = coincide ? a : r(), c = uniform_int(rng, 0, 1) ? b : r();
      return segre_111(a, b, c);
    }
    case SegreType::S1ZZ: {
      Rational im = r();
      if (sgn(im) == 0) im = 1;
      return segre_1zz(r(), r(), im);
    }
    case SegreType::S21: {
      const Rational j = r();
      return segre_21(coincide ? j : r(), j);
    }
    case SegreType::S3:
      return segre_3(r());
  }
  return {};
}

// Random invertible rational matrix with small entries.
inline Mat3<Rational> random_invertible(std::mt19937_64& rng) {
  for (;;) {
    Mat3<Rational> s;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s(i, j) = random_rational(rng, 3, 2);
    if (sgn(s.det()) != 0) return s;
  }
}

}  // namespace lorentz3::testing
