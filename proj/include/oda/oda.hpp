// Multiplication maps on lattice points, real coverage by translates, and the three orders.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oda/coverage.hpp"
#include "oda/toric.hpp"

namespace oda {

struct Decomposition {
  IntVector point, p1, p2;  // point = p1 + p2
};

struct CokernelReport {
  std::vector<IntVector> missed;  // sorted
  std::size_t dim_coker = 0;
  std::vector<Decomposition> hit;  // one witness per non-missed point
  // set by the local checker: only points with <x, rho> <= slab_bound were examined
  bool truncated = false;
  std::optional<IntVector> rho;
  std::optional<Int> slab_bound;
};

struct PsiReport {
  CoverReport inner;
  std::vector<IntVector> translates;  // m with m + P1 inside P2
  std::string note;
};

CokernelReport phi_cokernel(const RationalPolytope& p1, const RationalPolytope& p2);
PsiReport psi_check(const RationalPolytope& p1, const RationalPolytope& p2);

// L2 - L1 nef
bool prec(const ToricLineBundle& l1, const ToricLineBundle& l2);
// every point of P_L2 lies in a lattice translate of P_L1 inside P_L2
bool prec_c(const ToricLineBundle& l1, const ToricLineBundle& l2);
// prec and Phi_{L1, L2 - L1} surjective
bool prec_o(const ToricLineBundle& l1, const ToricLineBundle& l2);

struct OrderReport {
  bool prec = false, prec_c = false, prec_o = false;
  bool chain_holds = true;  // prec_c => prec_o => prec
};
OrderReport order_report(const ToricLineBundle& l1, const ToricLineBundle& l2);

// Lattice points of P1 + P2 + sigma_dual up to depth above the minimum of <x, rho>, rho strictly
// positive on sigma_dual; the answer is evidence for that slab only.
CokernelReport local_oda_check(const RationalPolytope& p1, const RationalPolytope& p2, const Cone& sigma_dual,
                               long depth);

// Phi_{L, L^j} for j = 1..k_max
std::vector<CokernelReport> projective_normality_probe(const ToricLineBundle& l, int k_max);

// Smooth complete 2D fans reachable from P^2 and F_0..F_3 by blow-ups, Picard rank <= max_picard,
// deduplicated by literal ray set.
std::vector<Fan> smooth_surface_family(int max_picard);

// Nef bundles with Picard coordinates in 0..max_coeff.
std::vector<ToricLineBundle> nef_bundles(const PicardFrame& fr, long max_coeff);

}  // namespace oda
