// Smooth lattice polygons: chord functions, contact points, translation-vector types and the
// blow-down certificate for covering P2 by translates of P1.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oda/oda.hpp"

namespace oda {

// Chord lengths along u as a function of t = <x, w>, w = u rotated by +90 degrees.
// Lengths are in units of u, so every value stays rational.
struct ChordFunction {
  struct Break {
    Rat t, lo, hi;  // chord at t covers s in [lo, hi], s = <x, u> / <u, u>
  };
  IntVector u;
  std::vector<Break> breaks;  // strictly increasing t, one per vertex level

  Rat t_min() const { return breaks.front().t; }
  Rat t_max() const { return breaks.back().t; }
  Rat value(const Rat& t) const;  // 0 outside [t_min, t_max]
  Rat lo(const Rat& t) const;
  Rat hi(const Rat& t) const;
  Rat max() const;
  std::pair<Rat, Rat> argmax() const;
  // max over t in [a, b]
  Rat max_on(const Rat& a, const Rat& b) const;
  // slopes non-increasing across every breakpoint
  bool concave() const;
  // point with coordinates (s, t)
  RatVector point(const Rat& s, const Rat& t) const;
  Rat t_of(const RatVector& x) const;
  Rat s_of(const RatVector& x) const;
};

ChordFunction chord_function(const RationalPolytope& p, const IntVector& u);

struct ContactPointSet {
  IntVector direction;
  std::vector<RatVector> points;  // one or two
  Rat c, d;                       // {t : chord >= 1} = [c, d]
};

ContactPointSet contact_points(const RationalPolytope& p, const IntVector& u);
// The three membership tests of a contact point, evaluated exactly.
bool is_contact_point(const RationalPolytope& p, const IntVector& u, const RatVector& x);
// P and u + P meet inside the strip between the lines through the contact points.
bool contact_strip_holds(const RationalPolytope& p, const IntVector& u);

struct TranslationVectorType {
  char tag = '?';  // 'a'..'h'
  // parameters along A0 -> A0' of the projections of the contact points along v;
  // empty when v is parallel to the edge or there are fewer than two contact points
  std::vector<Rat> contact_positions;
  Rat at_a0, at_a0p, on_edge;  // chord lengths in units of v
};

TranslationVectorType classify_translation_vector(const RationalPolytope& p1, const IntVector& v,
                                                  const RatVector& a0, const RatVector& a0p);

// Parallelogram spanned at a vertex by its two primitive edge directions.
RationalPolytope unimodular_parallelogram(const RationalPolytope& p, const RatVector& vertex);

// Throws when a hypothesis fails; otherwise true iff the lower u-chord of length lu lies on the far
// side of the lower v-chord of length lv, seen from x0.
bool chord_order_check(const RationalPolytope& p, const RatVector& x0, const IntVector& u, const IntVector& v,
                       const Rat& lu, const Rat& lv);

// Basis of M dual to a smooth cone <alpha, beta>: <u_h, alpha> = <u_v, beta> = -1, the other pairings 0.
std::pair<IntVector, IntVector> hv_basis(const IntVector& alpha, const IntVector& beta);

struct FourVectorReport {
  CoverReport cover;
  std::vector<IntVector> translates;  // those that fit inside P2
  std::vector<IntVector> rejected;    // candidates sticking out of P2
  bool two_vectors = false;           // -alpha and -beta both rays
  std::optional<RatVector> c_point, d_point;
};

// Covers (chi + P1) cap P2 by translates chi - u for the four vectors of the construction.
FourVectorReport sfhn_four_vector_cover(const RationalPolytope& p1, const IntVector& chi, const RationalPolytope& p2,
                                        const IntVector& alpha, const IntVector& beta);

// Largest lambda >= 0 with p + lambda u inside the polytope, nullopt if p is outside.
std::optional<Rat> max_translation(const RationalPolytope& diff, const IntVector& p, const IntVector& u);

struct CertificateStep {
  std::string kind;  // base, shrink, blowdown, stretch
  int picard = 0;
  Int s1, s2;
  bool ok = false;
  std::size_t patches = 0;
};

struct SfhnReport {
  PsiReport direct;
  std::optional<bool> certificate;
  std::vector<CertificateStep> steps;
  bool agree = true;
};

bool is_unimodular_triangle(const RationalPolytope& p);

SfhnReport sfhn_verify(const RationalPolytope& p1, const RationalPolytope& p2, bool with_certificate);

// Covering certificate along blow-downs for ample L1 with L2 - L1 nef on a smooth complete fan.
bool sfhn_certificate(const ToricLineBundle& l1, const ToricLineBundle& l2, std::vector<CertificateStep>& steps);

// Rays in counter-clockwise order starting from ray 0.
std::vector<int> ccw_ray_order(const Fan& f);
// Ray indices equal to the sum of their two neighbours.
std::vector<int> exceptional_rays(const Fan& f);
// Removes an exceptional ray, merging its two cones.
Fan blow_down(const Fan& f, int ray);

struct ItnvConfig {
  ToricLineBundle l1, l2;
  int ray = -1;  // exceptional ray alpha + beta
  IntVector p0, q, qp;
  bool dgn = false;  // no admissible single translate covers S
};

struct ItnvResult {
  std::vector<IntVector> vectors;  // primitive p - p0 over the triangle, ordered by angle
  std::string tags;
  bool forbidden = false;  // a or b next to d or e
};

// Triangle configurations at one exceptional ray: interior p0, and q = p0 + u_{alpha_i},
// q' = p0 + u_{beta_j} inside P_{L2 - L1} with both vectors in the interior of P1 - P1,
// when no single translate u_{alpha_i} or u_{beta_j} that fits inside P2 covers S. With require_dgn
// false the last condition is only recorded.
std::vector<ItnvConfig> itnv_configs(const ToricLineBundle& l1, const ToricLineBundle& l2, int ray,
                                     bool require_dgn = true);
ItnvResult itnv_probe(const ItnvConfig& c);

}  // namespace oda
