#pragma once

#include <memory>
#include <optional>

#include "instab/linalg.hpp"

namespace instab {

// Primitive integer direction vector.
struct Ray {
  ZVec coords;
  bool operator==(const Ray& o) const { return coords == o.coords; }
  bool operator<(const Ray& o) const { return coords < o.coords; }
};

Ray canonicalize_ray(const ZVec& v);

bool proj_points_equal(const QVec& r1, const QVec& r2);
bool proj_points_equal(const ZVec& r1, const ZVec& r2);

// {x : eq·x = 0 for all equalities, h·x >= 0 for all inequalities}
struct HalfspaceDesc {
  ZMat equalities;
  ZMat inequalities;
};

class RationalCone {
 public:
  RationalCone(int ambient_dim, std::vector<Ray> generators);
  static RationalCone from_generators(int ambient_dim, const ZMat& gens);
  static RationalCone from_inequalities(int ambient_dim, const ZMat& equalities,
                                        const ZMat& inequalities);

  int ambient_dim() const { return ambient_dim_; }
  const std::vector<Ray>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  int dim() const;  // dimension of the linear span
  bool is_simplicial() const;
  bool strictly_convex() const;

  const HalfspaceDesc& facets() const;
  // Flattened view: each equality contributes a pair of opposite functionals.
  ZMat facet_functionals() const;

  bool contains(const QVec& x) const;
  bool contains(const ZVec& x) const;
  // A facet functional negative at x, when x is outside; nullopt when inside.
  std::optional<ZVec> separating_facet(const QVec& x) const;

  RationalCone intersect(const RationalCone& other) const;
  bool same_cone(const RationalCone& other) const;  // mutual containment
  bool is_face_of(const RationalCone& big) const;
  std::vector<RationalCone> faces() const;  // all faces, including 0 and C

  std::vector<RationalCone> simplicial_subdivision() const;

 private:
  int ambient_dim_;
  std::vector<Ray> gens_;
  // write-once cache; shared_ptr keeps copies cheap and the fill idempotent
  mutable std::shared_ptr<const HalfspaceDesc> facets_;
};

struct Fan {
  int ambient_dim = 0;
  std::vector<RationalCone> cones;
};

bool is_classical_fan(const std::vector<RationalCone>& cones);

// Nonnegative injective integer matrix, columns = images of basis vectors.
struct ConeMorphism {
  ZMat matrix;  // n rows, k cols
  int rows() const { return static_cast<int>(matrix.size()); }
  int cols() const { return matrix.empty() ? 0 : static_cast<int>(matrix[0].size()); }
  ZVec column(int j) const;
  QVec apply(const QVec& lambda) const;
};

bool morphism_check(const ZMat& M, int k, int n);
ConeMorphism compose(const ConeMorphism& outer, const ConeMorphism& inner);

}  // namespace instab
