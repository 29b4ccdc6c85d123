// Exact decision of "does a union of polytopes cover a polytope".
#pragma once

#include <optional>
#include <vector>

#include "oda/polytope.hpp"

namespace oda {

class CellLimitError : public Error {
 public:
  using Error::Error;
};

struct CoverReport {
  bool covered = false;
  std::optional<RatVector> witness;  // present iff !covered
  std::size_t pieces_used = 0;
  std::size_t cells_explored = 0;
};

// Cell cap for the splitting engine; ODA_MAX_CELLS overrides the default of 10^6.
std::size_t max_cells();

CoverReport covers(const RationalPolytope& target, const std::vector<RationalPolytope>& pieces);
// Full-dimensional (relative to target) cells of target left uncovered by the pieces.
std::vector<RationalPolytope> residual_cells(const RationalPolytope& target,
                                             const std::vector<RationalPolytope>& pieces);

// Pieces c*P - c*v + v over the vertices v of P.
std::vector<RationalPolytope> vertex_fit_pieces(const RationalPolytope& p, const Rat& c);
CoverReport vertex_fit_cover(const RationalPolytope& p, const Rat& c);

struct ResidualComponent {
  std::vector<RationalPolytope> cells;
  RationalPolytope hull;
  bool convex = false;  // union of cells equals its hull
};

struct QuasiCoverReport {
  std::vector<ResidualComponent> leftover_components;
  // sup over residual points of the sup-norm distance to the nearest target vertex
  Rat max_vertex_distance;
};

QuasiCoverReport quasi_cover_report(const RationalPolytope& target,
                                    const std::vector<RationalPolytope>& pieces);
// max over x in cell of min over vertices v of |x - v|_inf
Rat max_min_supnorm(const RationalPolytope& cell, const std::vector<RatVector>& vertices);

CoverReport minkowski_weyl_check(const Polyhedron& q);

}  // namespace oda
