#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "lorentz3/curvature.hpp"
#include "lorentz3/poly.hpp"

namespace lorentz3 {

// Constant curvature c: flat, de Sitter or anti de Sitter type by sign.
template <Scalar T>
struct SpaceForm {
  T c{0};
  friend bool operator==(const SpaceForm&, const SpaceForm&) = default;
};

// R x S2_1, R x H2_1 (Lorentzian curved factor) and S2 x R_1, H2 x R_1
// (Riemannian curved factor, timelike line).
enum class ProductKind { R_x_S2_1, R_x_H2_1, S2_x_R_1, H2_x_R_1 };

std::string_view product_kind_name(ProductKind k);
std::optional<ProductKind> product_kind_from_name(std::string_view name);

template <Scalar T>
struct Product {
  ProductKind kind = ProductKind::S2_x_R_1;
  T c{1};  // curvature of the curved factor
  friend bool operator==(const Product&, const Product&) = default;
};

// g = [[0,0,1],[0,eps,0],[1,0,f]], f = alpha u2^2 + u2 beta(u3) + xi(u3).
template <Scalar T>
struct PlaneWaveLike {
  int epsilon = 1;
  T alpha{0};
  Poly<T> beta;
  Poly<T> xi;
  friend bool operator==(const PlaneWaveLike&, const PlaneWaveLike&) = default;
};

template <Scalar T>
using SymmetricSpaceSpec = std::variant<SpaceForm<T>, Product<T>, PlaneWaveLike<T>>;

template <Scalar T>
using CoordinatePoint = Vec3<T>;

// Throws std::invalid_argument on a sign mismatch, c = 0 product, or |eps| != 1.
template <Scalar T>
void validate_spec(const SymmetricSpaceSpec<T>& spec, const Field<T>& field = {});

// "R3_1", "S3_1", "H3_1" for space forms, the product name, or "plane_wave".
template <Scalar T>
std::string spec_kind_name(const SymmetricSpaceSpec<T>& spec, const Field<T>& field = {});

// Operator in a pseudo-orthonormal frame (space forms, products) or the null
// frame (d1, d2, d3 - f/2 d1) of the coordinate metric.
template <Scalar T>
CurvatureOperator<T> symmetric_operator(const SymmetricSpaceSpec<T>& spec, const Field<T>& field = {});

// Christoffel symbols of g at p, the coordinate curvature tensor, then the
// operator in the null frame above. Independent of p, beta and xi.
template <Scalar T>
CurvatureOperator<T> coordinate_curvature_operator(const PlaneWaveLike<T>& spec, const CoordinatePoint<T>& p,
                                                   const Field<T>& field = {});

}  // namespace lorentz3
