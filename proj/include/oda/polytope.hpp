// Exact convex polytopes and pointed polyhedra in dimension <= 3.
#pragma once

#include <optional>
#include <vector>

#include "oda/lattice.hpp"

namespace oda {

// <x, normal> + offset >= 0  (or == 0 for equations)
struct Halfspace {
  IntVector normal;
  Rat offset;

  Rat eval(const RatVector& x) const { return dot(normal, x) + offset; }
  friend bool operator==(const Halfspace& a, const Halfspace& b) {
    return a.normal == b.normal && a.offset == b.offset;
  }
  friend bool operator<(const Halfspace& a, const Halfspace& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  }
};

class RationalPolytope {
 public:
  int ambient() const { return ambient_; }
  int dim() const { return dim_; }
  // lexicographically sorted
  const std::vector<RatVector>& vertices() const { return vertices_; }
  // irredundant inequalities; for lower-dimensional polytopes these are relative facets
  const std::vector<Halfspace>& facets() const { return facets_; }
  const std::vector<Halfspace>& equations() const { return equations_; }
  // facets plus both orientations of every equation
  std::vector<Halfspace> halfspaces() const;
  // indices into facets() tight at vertex i
  const std::vector<int>& incidence(std::size_t i) const { return incidence_[i]; }

  bool contains(const RatVector& x) const;
  bool contains(const RationalPolytope& q) const;
  // strict on every facet, equal on every equation
  bool relint_contains(const RatVector& x) const;
  bool is_lattice() const;
  RatVector barycenter() const;
  bool full_dimensional() const { return dim_ == ambient_; }

  friend bool operator==(const RationalPolytope& a, const RationalPolytope& b) {
    return a.vertices_ == b.vertices_;
  }
  friend bool operator!=(const RationalPolytope& a, const RationalPolytope& b) { return !(a == b); }

  // Assembles a polytope from data already known to be consistent; incidence is recomputed
  // and every vertex is checked against every halfspace.
  static RationalPolytope assemble(int ambient, int dim, std::vector<RatVector> vertices,
                                   std::vector<Halfspace> facets, std::vector<Halfspace> equations);

 private:
  int ambient_ = 0;
  int dim_ = -1;
  std::vector<RatVector> vertices_;
  std::vector<Halfspace> facets_;
  std::vector<Halfspace> equations_;
  std::vector<std::vector<int>> incidence_;
};

// Thin wrapper asserting integral vertices.
class LatticePolytope {
 public:
  explicit LatticePolytope(RationalPolytope p);
  const RationalPolytope& poly() const { return p_; }
  operator const RationalPolytope&() const { return p_; }

 private:
  RationalPolytope p_;
};

struct EdgeDescriptor {
  RatVector a, b;
  IntVector direction;  // primitive, points from a to b
  Rat length;           // lattice length: (b - a) = length * direction
};

struct FacetDescriptor {
  Halfspace h;
  std::vector<RatVector> vertices;
};

struct Cone {
  std::vector<IntVector> generators;  // primitive
  int ambient = 0;
};

RationalPolytope hull(const std::vector<RatVector>& points);
RationalPolytope hull(const std::vector<IntVector>& points);
// Intersection of halfspaces; nullopt when empty, throws when unbounded.
std::optional<RationalPolytope> from_halfspaces(int d, const std::vector<Halfspace>& hs);
std::optional<RationalPolytope> intersect(const RationalPolytope& p, const RationalPolytope& q);
// p intersected with one halfspace
std::optional<RationalPolytope> clip(const RationalPolytope& p, const Halfspace& h);

RationalPolytope translate(const RationalPolytope& p, const RatVector& v);
RationalPolytope scale(const RationalPolytope& p, const Rat& c);
// c*P - c*v + v
RationalPolytope homothety(const RationalPolytope& p, const Rat& c, const RatVector& center);

RationalPolytope minkowski_sum(const RationalPolytope& p, const RationalPolytope& q);
std::optional<RationalPolytope> minkowski_difference(const RationalPolytope& p,
                                                     const RationalPolytope& q);

std::vector<IntVector> lattice_points(const RationalPolytope& p);
std::size_t count_lattice_points(const RationalPolytope& p);

std::vector<EdgeDescriptor> edges(const RationalPolytope& p);
std::vector<FacetDescriptor> facets(const RationalPolytope& p);
// vertices of p minimizing <x, n>
std::vector<RatVector> face_vertices(const RationalPolytope& p, const IntVector& n);
Rat support_min(const RationalPolytope& p, const IntVector& n);
int affine_dim(const std::vector<RatVector>& pts);

Rat lattice_length_min(const LatticePolytope& p);
// Full-dimensional polytopes with the same facet normals and vertex-normal incidences.
bool same_normal_fan(const RationalPolytope& p, const RationalPolytope& q);
Rat edge_ratio_min(const RationalPolytope& p1, const RationalPolytope& p2);

// 2D only: vertices in counter-clockwise order starting from the lex-smallest
std::vector<RatVector> ccw_vertices(const RationalPolytope& p);
// 2D only: twice the area
Rat twice_area(const RationalPolytope& p);
// 2A = 2I + B - 2 on a lattice polygon
bool pick_holds(const LatticePolytope& p);

// Generators of {n : <g, n> >= 0 for all g}; lineality directions appear with both signs.
std::vector<IntVector> dual_cone_generators(const std::vector<IntVector>& gens, int d);
bool is_pointed(const Cone& c);

class Polyhedron {
 public:
  const RationalPolytope& finite_part() const { return finite_; }
  const Cone& recession() const { return cone_; }
  const std::vector<Halfspace>& facets() const { return facets_; }
  const std::vector<Halfspace>& equations() const { return equations_; }
  int ambient() const { return finite_.ambient(); }
  int dim() const { return dim_; }
  bool contains(const RatVector& x) const;
  // Q intersected with <x, s> <= h
  std::optional<RationalPolytope> truncate(const IntVector& s, const Rat& h) const;

  friend Polyhedron polyhedron_sum(const RationalPolytope& p, const Cone& c);

 private:
  RationalPolytope finite_;
  Cone cone_;
  std::vector<Halfspace> facets_;
  std::vector<Halfspace> equations_;
  int dim_ = 0;
};

Polyhedron polyhedron_sum(const RationalPolytope& p, const Cone& c);
// Maximal bounded faces (by inclusion).
std::vector<RationalPolytope> finite_boundary(const Polyhedron& q);
// A co-vector strictly positive on every nonzero element of the recession cone.
IntVector interior_dual_vector(const Cone& c);
std::vector<IntVector> polyhedron_lattice_points_truncated(const Polyhedron& q, const IntVector& s,
                                                           const Rat& h);

}  // namespace oda
