#pragma once

#include "torweight/linalg.hpp"
#include "torweight/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace torweight {

// Sorted ray indices; empty for the zero cone.
using Cone = std::vector<int>;

std::string cone_key(const Cone& c);
// Throws ParseError on malformed keys.
Cone parse_cone_key(std::string_view key);

bool is_subset(const Cone& a, const Cone& b);
Cone cone_union(const Cone& a, const Cone& b);
Cone cone_difference(const Cone& a, const Cone& b);

struct RawFan {
  int dim = 0;
  std::vector<IntVector> rays;
  std::vector<Cone> max_cones;
};

constexpr std::uint64_t kDefaultFanSeed = 20240611;

class Fan {
 public:
  Fan() = default;

  // Face-closes, checks convexity, primitivity and pairwise intersections,
  // and computes the flags. Throws on invalid input.
  static Fan validate(const RawFan& raw, std::uint64_t seed = kDefaultFanSeed);

  int dim() const noexcept { return dim_; }
  const std::vector<IntVector>& rays() const noexcept { return rays_; }
  const IntVector& ray(int i) const { return rays_[static_cast<std::size_t>(i)]; }
  // All cones, ordered by dimension then lexicographically.
  const std::vector<Cone>& cones() const noexcept { return cones_; }
  const std::vector<Cone>& maximal_cones() const noexcept { return maximal_; }

  bool complete() const noexcept { return complete_; }
  bool simplicial() const noexcept { return simplicial_; }
  bool smooth() const noexcept { return smooth_; }

  bool contains(const Cone& c) const { return index_.count(c) != 0; }
  std::size_t index_of(const Cone& c) const;
  int cone_dim(const Cone& c) const;
  int codim(const Cone& c) const { return dim_ - cone_dim(c); }

  // beta in the fan with alpha a face of beta (alpha included).
  std::vector<Cone> star(const Cone& alpha) const;
  // beta with alpha a facet of beta.
  std::vector<Cone> covers(const Cone& alpha) const;
  // Cones of the given dimension.
  std::vector<Cone> cones_of_dim(int d) const;

  RawFan raw() const;

 private:
  int dim_ = 0;
  std::vector<IntVector> rays_;
  std::vector<Cone> cones_;
  std::vector<Cone> maximal_;
  std::map<Cone, std::size_t> index_;
  std::vector<int> cone_dims_;
  bool complete_ = false;
  bool simplicial_ = false;
  bool smooth_ = false;
};

IntMatrix ray_matrix(const Fan& fan, const Cone& c);

// Throws NotSimplicial.
Integer multiplicity(const Fan& fan, const Cone& c);

// mult(beta)/mult(alpha) * prod over rho in beta \ alpha of
// mult(alpha)/mult(alpha + rho).
Rational relative_multiplicity(const Fan& fan, const Cone& alpha, const Cone& beta);
// Same quantity as the index of the projected primitive rays in N_alpha.
Integer relative_multiplicity_snf(const Fan& fan, const Cone& alpha, const Cone& beta);

// Faces of cone(rays) as subsets of the given index list.
std::vector<Cone> cone_faces(const std::vector<IntVector>& all_rays, const Cone& c);

// x in cone(rays) (closed); interior=true asks for relative interior.
bool cone_contains(const std::vector<IntVector>& all_rays, const Cone& c, const RatVector& x,
                   bool interior);

// Quotient by the span of alpha.
struct StarFan {
  Cone alpha;
  // (n - dim alpha) x n integer matrix; kernel is the saturated span of alpha.
  IntMatrix projection;
  // Cones beta containing alpha.
  std::vector<Cone> cones;
  // Primitive image of each ray rho with alpha + rho in the fan.
  std::map<int, IntVector> images;

  IntVector project(const IntVector& v) const;
  RatVector project(const RatVector& v) const;
  // The star as a fan in Z^{n - dim alpha}; ray i of the result is
  // ray_map[i] of the original.
  Fan as_fan(std::vector<int>* ray_map = nullptr) const;
};

// The projection N -> N_alpha alone.
IntMatrix quotient_projection(const Fan& fan, const Cone& alpha);

StarFan star_fan(const Fan& fan, const Cone& alpha);

// Smallest cone whose relative interior contains x; throws OutsideSupport.
Cone containing_cone(const Fan& fan, const RatVector& x);

struct Refinement {
  Fan fan;
  // cone of the refinement -> smallest cone of the original containing it
  std::map<Cone, Cone> cone_map;
};

// Pulling triangulation by increasing ray index; identity on simplicial fans.
Refinement triangulate(const Fan& fan);

// Triangulate, then stellar subdivisions until smooth.
Refinement smooth_refine(const Fan& fan);

}  // namespace torweight
