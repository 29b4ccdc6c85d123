// Complete fans, toric line bundles as ray coefficients, intersection numbers, bounds.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "oda/polytope.hpp"

namespace oda {

struct Fan {
  std::vector<IntVector> rays;
  std::vector<std::vector<int>> max_cones;  // sorted ray indices
  int dim = 0;
};

// codimension-one cone shared by two maximal cones
struct Wall {
  std::vector<int> rays;
  int cone_a = -1, cone_b = -1;
};

// Validates rays (primitive, common dimension) and cones (full-dimensional, strongly convex).
Fan make_fan(std::vector<IntVector> rays, std::vector<std::vector<int>> cones);

Fan fan_p1();
Fan fan_p2();
Fan fan_p1xp1();
Fan fan_hirzebruch(long a);
Fan fan_p3();
Fan fan_p1xp2();

// Facets of a maximal cone as sorted ray-index sets.
std::vector<std::vector<int>> cone_facets(const Fan& f, int cone);
bool is_complete(const Fan& f);
bool is_smooth(const Fan& f);
// Walls of a complete fan, sorted by ray set; throws if the fan is not complete.
std::vector<Wall> walls(const Fan& f);
// Primitive generator of the orthogonal complement of the wall, positive on the rays of cone_b
// outside the wall.
IntVector wall_normal(const Fan& f, const Wall& w);

// Stellar subdivision of a smooth maximal cone by the sum of its rays.
Fan stellar_subdivision(const Fan& f, int cone);
// 2D blow-up of the torus-fixed point of a smooth maximal cone.
Fan blowup(const Fan& f, int cone);
// Canonical form: rays sorted, cones re-indexed and sorted.
Fan canonical(const Fan& f);
bool same_fan(const Fan& a, const Fan& b);

struct ToricLineBundle {
  std::shared_ptr<const Fan> fan;
  std::vector<Int> coeffs;  // a_rho, P_L = {m : <m, rho> >= -a_rho}
};

ToricLineBundle bundle(std::shared_ptr<const Fan> f, std::vector<long> coeffs);
std::optional<RationalPolytope> polytope_of(const ToricLineBundle& l);
Fan normal_fan(const RationalPolytope& p);

// m_sigma solving <m, rho> = -a_rho on the rays of the cone; nullopt if inconsistent.
std::optional<RatVector> cone_vertex(const ToricLineBundle& l, int cone);
bool is_nef(const ToricLineBundle& l);
bool is_ample(const ToricLineBundle& l);
// Signed intersection number with the invariant curve of the wall.
Int intersection_number(const ToricLineBundle& l, const Wall& w);
std::vector<Int> intersection_numbers(const ToricLineBundle& l);
// a_rho replaced by the support value -min_{v in P_L} <v, rho>.
ToricLineBundle retighten(const ToricLineBundle& l);
ToricLineBundle tensor(const ToricLineBundle& a, const ToricLineBundle& b);
// Coefficient-wise difference, not retightened.
ToricLineBundle difference(const ToricLineBundle& a, const ToricLineBundle& b);

bool is_general(const Fan& f);

// Coordinates on Pic: coefficients normalized to vanish on a unimodular base cone.
struct PicardFrame {
  std::shared_ptr<const Fan> fan;
  int base_cone = -1;
  std::vector<int> free_rays;
  std::vector<Wall> walls;
  std::vector<std::vector<Int>> matrix;  // matrix[tau][j] = (unit bundle on free ray j).C_tau
  int rank() const { return static_cast<int>(free_rays.size()); }
};

PicardFrame picard_frame(std::shared_ptr<const Fan> f);
std::vector<Int> pic_coords(const PicardFrame& fr, const ToricLineBundle& l);
ToricLineBundle from_pic(const PicardFrame& fr, const std::vector<Int>& x);
std::vector<Int> wall_degrees(const PicardFrame& fr, const std::vector<Int>& x);

// Minimal generators of the nef monoid; Picard rank <= 3 only.
std::vector<ToricLineBundle> hilbert_basis(std::shared_ptr<const Fan> f);
std::vector<std::vector<Int>> hilbert_basis_coords(const PicardFrame& fr);

// n_C per wall: max over the basis of B.C_tau
std::vector<Int> sufficiently_ample_threshold(const Fan& f, const std::vector<ToricLineBundle>& basis);
// L.C_tau > d * n_C(tau) on every wall
bool in_D(const ToricLineBundle& l, const std::vector<Int>& thresholds);

// Ample classes minimal for the order x <= y iff y - x nef, by box enumeration.
std::vector<std::vector<Int>> minimal_ample_coords(const PicardFrame& fr, const Int& box, const Int& verify_box);

struct LoprReport {
  IntVector rho;
  std::vector<Int> l2_coeffs;
  Int r_rho;
  Int w_rho;
  std::vector<Rat> per_wall;  // c_tau + 4 |I| c^2 w / r
};

struct BoundReport {
  Int c;
  std::vector<Int> c_tau;
  std::size_t num_walls = 0;
  int dim = 0;
  Int loqr_bound;
  std::vector<std::string> subcones_covered;
  std::vector<std::vector<Int>> ample_generators;  // Picard coordinates
  std::optional<LoprReport> lopr;
};

Int r_rho(const Fan& f, const IntVector& rho);
Int w_rho(const ToricLineBundle& l2, const IntVector& rho);
BoundReport section5_bounds(std::shared_ptr<const Fan> f, const std::optional<ToricLineBundle>& l2,
                            const std::optional<IntVector>& rho);

// Each maximal cone (vertex) of the fine normal fan mapped to the coarse cone containing it;
// indices follow the lexicographic vertex order of the two polytopes.
std::vector<int> vertex_partition(const ToricLineBundle& fine, const ToricLineBundle& coarse);

struct LinearSubsetIndex {
  std::vector<int> J;  // wall indices
  std::vector<Int> b;  // one entry per wall
};
bool linear_subset_member(const ToricLineBundle& l, const LinearSubsetIndex& s);

}  // namespace oda
