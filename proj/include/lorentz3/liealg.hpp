#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lorentz3/mat3.hpp"

namespace lorentz3 {

// The eight frame families of three-dimensional Lorentzian metric Lie
// algebras. A1-A4 are unimodular; NA, NB, C1, C2 are not.
enum class Family { A1, A2, A3, A4, NA, NB, C1, C2 };

inline constexpr std::array<Family, 8> kAllFamilies{Family::A1, Family::A2, Family::A3, Family::A4,
                                                    Family::NA, Family::NB, Family::C1, Family::C2};

std::string_view family_name(Family f);
// Accepts the canonical names plus a few aliases ("B" for NB, "NC1" for C1...).
std::optional<Family> family_from_name(std::string_view name);
bool is_unimodular(Family f);

// Parameter order per family. NA carries (lambda, mu, cos phi, sin phi) so the
// angle stays rational; the pair must lie on the unit circle.
const std::vector<std::string>& param_names(Family f);

template <Scalar T>
struct FamilyParams {
  Family family = Family::A1;
  std::vector<T> values;

  const T& operator[](std::size_t i) const { return values[i]; }
  friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

class ConstraintViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateMetric : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class EmptyRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// [e_i, e_j] = sum_k c(i,j)[k] e_k, stored for all ordered pairs.
template <Scalar T>
class StructureConstants {
 public:
  StructureConstants();
  // Sets [e_i, e_j] = v and [e_j, e_i] = -v (0-based indices).
  void set(int i, int j, const Vec3<T>& v);
  const Vec3<T>& operator()(int i, int j) const { return c_[i][j]; }
  // Bracket of two frame-coordinate vectors.
  Vec3<T> bracket(const Vec3<T>& x, const Vec3<T>& y) const;

  friend bool operator==(const StructureConstants&, const StructureConstants&) = default;

 private:
  std::array<std::array<Vec3<T>, 3>, 3> c_;
};

template <Scalar T>
struct MetricLieAlgebra {
  StructureConstants<T> sc;
  Mat3<T> gram;
  std::optional<FamilyParams<T>> params;  // absent for free algebras
};

// Validates the family constraints and returns the frame algebra. Throws
// ConstraintViolation naming the failed inequality.
template <Scalar T>
MetricLieAlgebra<T> build(const FamilyParams<T>& params, const Field<T>& field = {});

// Throws ConstraintViolation describing the first violated constraint.
template <Scalar T>
void check_constraints(const FamilyParams<T>& params, const Field<T>& field = {});

// Free algebra from raw constants; rejects Jacobi failures and non-Lorentzian Gram.
template <Scalar T>
MetricLieAlgebra<T> make_free_algebra(const StructureConstants<T>& sc, const Mat3<T>& gram,
                                      const Field<T>& field = {});

template <Scalar T>
bool check_jacobi(const StructureConstants<T>& sc, const Field<T>& field = {});

// Symmetric, det < 0 and exactly one negative eigenvalue. Counts positive
// eigenvalues with Descartes' rule, exact because the spectrum is real.
template <Scalar T>
bool is_lorentzian_gram(const Mat3<T>& gram, const Field<T>& field = {});

enum class LieType { su2, sl2R, e2, e11, h, R3, not_applicable };

std::string_view lie_type_name(LieType t);

class NotUnimodular : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Unimodular type lookup for A1-A4. For A1 only the sign pattern matters, up
// to reordering and a global sign change.
template <Scalar T>
LieType unimodular_type(const FamilyParams<T>& params, const Field<T>& field = {});

// A1 sign-pattern row: entries in {-1, 0, +1}.
LieType lie_type_from_signs(std::array<int, 3> signs);

struct ParamRange {
  double lo = -3.0;
  double hi = 3.0;
};

struct SampleSpec {
  std::map<std::string, ParamRange> ranges;  // missing names use default_range(f, name)
  // Exact draws use rationals n/d with 1 <= d <= max_denominator.
  long max_denominator = 4;
};

ParamRange default_range(Family f, std::string_view param);

// One unconstrained draw: every parameter from its range. The result may
// violate the family constraints (sweeps count those as rejections).
template <Scalar T>
FamilyParams<T> draw(Family f, const SampleSpec& spec, std::mt19937_64& rng);

// Deterministic for a fixed seed; retries until the constraints hold and
// throws EmptyRange when they never do.
template <Scalar T>
FamilyParams<T> sample(Family f, const SampleSpec& spec, std::uint64_t seed);

// Portable bounded integer draw in [lo, hi] from raw engine output.
std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);
double uniform_real(std::mt19937_64& rng, double lo, double hi);

// splitmix64 of (seed, index): independent per-item seeds, so results do not
// depend on iteration order or thread count.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace lorentz3
