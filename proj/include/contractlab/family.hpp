#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "contractlab/rng.hpp"
#include "contractlab/types.hpp"

namespace contractlab {

enum class FamilyKind { FullCube, Linear, RayFamily };

// A searchable subset F of the contract cube, anchored at the principal's
// value vector v. The search parametrization differs by kind:
//   FullCube  — params are the contract coordinates themselves (dim = m, or
//               m-1 when pin_null is set and the null coordinate is fixed 0).
//   Linear    — one parameter alpha in [0,1]; contract = alpha * v.
//   RayFamily — F(R) = { v + beta * r : beta in [0,1], r in rays }; grid and
//               sampling iterate rays x beta.
struct ContractFamily {
  FamilyKind kind = FamilyKind::FullCube;
  std::vector<double> anchor;              // v, length = contract length
  std::vector<std::vector<double>> rays;   // unit vectors, RayFamily only
  bool pin_null = false;                   // FullCube over non-null coordinates

  std::size_t contract_length() const { return anchor.size(); }

  // Parameter-space dimension used for grid caps: m for a cube, 1 otherwise.
  std::size_t dim() const;

  // Map grid/search parameters to a contract.
  Contract embed(std::span<const double> params) const;

  // Coordinate-wise membership, with tolerance `tol` on the defining
  // constraints (collinearity for Linear, ray decomposition for RayFamily).
  bool contains(const Contract& f, double tol = 1e-9) const;

  // Uniform sample from the family (used by property suites).
  Contract sample(Rng& rng) const;

  static ContractFamily full_cube(std::vector<double> v);
  // Cube over the non-null coordinates with f_0 fixed to 0.
  static ContractFamily free_cube(std::vector<double> v);
  static ContractFamily linear(std::vector<double> v);
  static ContractFamily ray_family(std::vector<double> v,
                                   std::vector<std::vector<double>> rays);

  const char* kind_name() const;
};

double l2_norm(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace contractlab
