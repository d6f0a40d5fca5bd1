#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lorentz3/existence.hpp"
#include "lorentz3/sweep.hpp"

namespace lorentz3 {

using json = nlohmann::json;

// Thrown on malformed payloads; what() names the offending field.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exact scalars: integers as JSON numbers, others as "n/d" strings.
json scalar_json(const Rational& q);
json scalar_json(double x);
json scalar_json(const RealRoot& r);

// Integers and "n/d" / decimal strings without exponent or point parse
// exactly; JSON floats and float-looking strings force the approx backend.
using AnyScalars = std::variant<std::vector<Rational>, std::vector<double>>;
AnyScalars scalars_from_json(const json& j, const std::string& field);
AnyScalars scalars_from_text(const std::string& csv, const std::string& field);

template <Scalar T>
json mat_json(const Mat3<T>& m);
template <Scalar T>
json poly_json(const Poly<T>& p);

// {"type", "eigenvalues", "jordan_eigenvalue", "char_poly", "tau", "backend"}.
// {1zz} eigenvalues are [k1, re, im].
template <Scalar T>
json segre_json(const SegreData<T>& d);

// Reads "type" plus "char_poly" (preferred, exact round trip) or "eigenvalues".
using AnySegre = std::variant<SegreData<Rational>, SegreData<double>>;
AnySegre segre_from_json(const json& j);

template <Scalar T>
json params_json(const FamilyParams<T>& p);

template <Scalar T>
json spec_json(const SymmetricSpaceSpec<T>& s);
using AnySpec = std::variant<SymmetricSpaceSpec<Rational>, SymmetricSpaceSpec<double>>;
AnySpec spec_from_json(const json& j);

// {"brackets": [[i, j, [c1, c2, c3]], ...] (i < j, 1-based), "gram", "family", "params"}.
template <Scalar T>
json algebra_json(const MetricLieAlgebra<T>& a);
using AnyAlgebra = std::variant<MetricLieAlgebra<Rational>, MetricLieAlgebra<double>>;
AnyAlgebra algebra_from_json(const json& j);

json verdict_json(const Verdict& v);

SweepConfig sweep_config_from_json(const json& j);
json report_to_json(const SweepReport& r);
json summary_json(const RegionSummary& s);

}  // namespace lorentz3
