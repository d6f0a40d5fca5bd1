#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lorentz3/segre.hpp"
#include "lorentz3/symspace.hpp"

namespace lorentz3 {

// Condition identifiers reported in verdicts:
//   T5.1 equal eigenvalues (space form)     T6.1a {21} all zero
//   T5.2 two zero, one nonzero (product)    T6.1b {21} Jordan eigenvalue < 0
//   T5.3 {21} all zero (plane wave)         T6.2  {3} negative
//                                           T6.3a {1zz} Re < 0
//                                           T6.3b {1zz} 0 <= Re < -k1
//   T7.1 ... T7.7 the seven {111} conditions, see admissible_diagonalizable.
using AnyWitness = std::variant<FamilyParams<Rational>, FamilyParams<double>, SymmetricSpaceSpec<Rational>,
                                SymmetricSpaceSpec<double>>;

struct Verdict {
  bool admissible = false;
  std::vector<std::string> conditions;
  std::optional<AnyWitness> witness;
  std::optional<double> residual;
};

class WrongType : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OutOfRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotAdmissible : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Budget exhausted without a witness. Inconclusive, never a disproof.
class SearchFailed : public std::runtime_error {
 public:
  SearchFailed(const std::string& what, double best) : std::runtime_error(what), best_residual(best) {}
  double best_residual;
};

// {21}, {3} and {1zz} data. Throws WrongType for {111}.
template <Scalar T>
Verdict admissible_nondiagonalizable(const SegreData<T>& d, const Field<T>& field = {});

// The seven {111} conditions, each over all renumerations:
//   1 all equal;  2 two zero, third nonzero;  3 exactly two pair sums zero;
//   4 (k1+k2)(k1+k3)(k2+k3) < 0;  5 k2 k3 <= k1^2 < m^2 and k1 < m;
//   6 k2 < 0, k3 < 0, k1^2 <= k2 k3;  7 k1 < -|m|;  m = (k2+k3)/2.
template <Scalar T>
Verdict admissible_diagonalizable(const SegreData<T>& d, const Field<T>& field = {});
template <Scalar T>
Verdict admissible_diagonalizable(const std::array<T, 3>& k, const Field<T>& field = {});

// Locally symmetric shapes, with a SymmetricSpaceSpec witness.
template <Scalar T>
Verdict admissible_symmetric(const SegreData<T>& d, const Field<T>& field = {});

// The predicate matching d's type ({111} or not), merged with admissible_symmetric.
template <Scalar T>
Verdict admissible(const SegreData<T>& d, const Field<T>& field = {});

// A2 parameters with the prescribed {21} data (simple k1, Jordan k2).
// Exact branches when -k2 is a rational square, double branches otherwise.
// For k1 = k2 = 0 the single branch (0, 1) stands for the line lambda1 = 0.
struct A2Reconstruction {
  std::vector<FamilyParams<Rational>> exact;
  std::vector<FamilyParams<double>> approx;
  bool lambda2_free = false;
};

A2Reconstruction reconstruct_A2(const Rational& k1, const Rational& k2);
A2Reconstruction reconstruct_A2(double k1, double k2);

struct RealizeOptions {
  // Empty: symmetric catalog, closed forms, then every family in turn.
  // "symmetric" restricts to the catalog; a family name restricts to it.
  std::string family;
  int starts = 32;
  int batch = 8;  // starts per batch; the best accepted start of a batch wins
  int max_evals = 4000;
  std::uint64_t seed = 0;
  double residual_bound = 1e-8;
  double tau = kDefaultTau;
  double box = 3.0;  // half-width of the start box
  int threads = 1;
};

// Witness search. Throws NotAdmissible when no predicate accepts d and
// SearchFailed when the budget runs out.
template <Scalar T>
Verdict realize(const SegreData<T>& d, const RealizeOptions& opts = {});

// Classifies the algebra's operator and checks it against the predicates.
template <Scalar T>
bool verify_forward(const MetricLieAlgebra<T>& alg, const Field<T>& field = {});

// Same check with the intermediate results.
template <Scalar T>
struct ForwardCheck {
  SegreData<T> segre;
  Verdict verdict;
};

template <Scalar T>
ForwardCheck<T> forward_check(const Mat3<T>& K, const Field<T>& field = {});

}  // namespace lorentz3
