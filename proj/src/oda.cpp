#include "oda/oda.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>

namespace oda {

namespace {

constexpr long kPackLimit = 1L << 19;

bool packable(const std::vector<IntVector>& pts) {
  for (const auto& p : pts)
    for (const auto& c : p)
      if (!c.fits_slong_p() || c.get_si() <= -kPackLimit || c.get_si() >= kPackLimit) return false;
  return true;
}

// three 21-bit fields; callers keep |coordinate| < 2^20
std::uint64_t pack(const IntVector& v) {
  std::uint64_t k = 0;
  for (int i = 0; i < v.dim(); ++i) k = (k << 21) | static_cast<std::uint64_t>(v[i].get_si() + (1L << 20));
  return k;
}

// sum-set lookup: for each target, some (i, j) with a[i] + b[j] == target
class SumIndex {
 public:
  SumIndex(const std::vector<IntVector>& a, const std::vector<IntVector>& b) {
    fast_ = packable(a) && packable(b);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) {
        IntVector s = a[i] + b[j];
        if (fast_) fast_map_.emplace(pack(s), std::make_pair(i, j));
        else slow_map_.emplace(s, std::make_pair(i, j));
      }
  }
  std::optional<std::pair<std::size_t, std::size_t>> find(const IntVector& x) const {
    if (fast_) {
      for (const auto& c : x)
        if (!c.fits_slong_p() || abs(c) >= 2 * kPackLimit) return std::nullopt;
      auto it = fast_map_.find(pack(x));
      if (it == fast_map_.end()) return std::nullopt;
      return it->second;
    }
    auto it = slow_map_.find(x);
    if (it == slow_map_.end()) return std::nullopt;
    return it->second;
  }

 private:
  bool fast_ = false;
  std::unordered_map<std::uint64_t, std::pair<std::size_t, std::size_t>> fast_map_;
  std::map<IntVector, std::pair<std::size_t, std::size_t>> slow_map_;
};

void fill(CokernelReport& r, const std::vector<IntVector>& targets, const std::vector<IntVector>& a,
          const std::vector<IntVector>& b) {
  SumIndex idx(a, b);
  for (const auto& x : targets) {
    auto w = idx.find(x);
    if (w) r.hit.push_back({x, a[w->first], b[w->second]});
    else r.missed.push_back(x);
  }
  std::sort(r.missed.begin(), r.missed.end());
  r.dim_coker = r.missed.size();
}

RationalPolytope poly_or_throw(const ToricLineBundle& l, const char* what) {
  auto p = polytope_of(l);
  if (!p) throw Error(std::string(what) + " has an empty polytope");
  return *p;
}

}  // namespace

CokernelReport phi_cokernel(const RationalPolytope& p1, const RationalPolytope& p2) {
  if (p1.ambient() != p2.ambient()) throw DimensionError("phi: dimension mismatch");
  CokernelReport r;
  fill(r, lattice_points(minkowski_sum(p1, p2)), lattice_points(p1), lattice_points(p2));
  return r;
}

PsiReport psi_check(const RationalPolytope& p1, const RationalPolytope& p2) {
  if (p1.ambient() != p2.ambient()) throw DimensionError("psi: dimension mismatch");
  PsiReport r;
  auto diff = minkowski_difference(p2, p1);
  if (diff) r.translates = lattice_points(*diff);
  if (r.translates.empty()) r.note = "no lattice translate of P1 fits inside P2";
  std::vector<RationalPolytope> pieces;
  for (const auto& m : r.translates) pieces.push_back(translate(p1, to_rat(m)));
  r.inner = covers(p2, pieces);
  return r;
}

bool prec(const ToricLineBundle& l1, const ToricLineBundle& l2) { return is_nef(difference(l2, l1)); }

bool prec_c(const ToricLineBundle& l1, const ToricLineBundle& l2) {
  return psi_check(poly_or_throw(l1, "L1"), poly_or_throw(l2, "L2")).inner.covered;
}

bool prec_o(const ToricLineBundle& l1, const ToricLineBundle& l2) {
  if (!prec(l1, l2)) return false;
  auto d = polytope_of(difference(l2, l1));
  return phi_cokernel(poly_or_throw(l1, "L1"), *d).dim_coker == 0;
}

OrderReport order_report(const ToricLineBundle& l1, const ToricLineBundle& l2) {
  OrderReport r;
  r.prec = prec(l1, l2);
  r.prec_c = prec_c(l1, l2);
  r.prec_o = prec_o(l1, l2);
  r.chain_holds = (!r.prec_c || r.prec_o) && (!r.prec_o || r.prec);
  return r;
}

CokernelReport local_oda_check(const RationalPolytope& p1, const RationalPolytope& p2, const Cone& sigma_dual,
                               long depth) {
  const int d = p1.ambient();
  if (p2.ambient() != d || sigma_dual.ambient != d) throw DimensionError("local check: dimension mismatch");
  if (depth <= 0) throw Error("local check needs a positive depth; the region is unbounded");
  std::vector<RatVector> gens;
  for (const auto& g : sigma_dual.generators) gens.push_back(to_rat(g));
  if (rank(gens) != d) throw Error("dual cone is not full-dimensional");
  IntVector rho = interior_dual_vector(sigma_dual);
  auto q2 = polyhedron_sum(p2, sigma_dual);
  auto sum = minkowski_sum(p1, p2);
  auto q = polyhedron_sum(sum, sigma_dual);
  Rat h = support_min(sum, rho) + depth;

  auto a = lattice_points(p1);
  CokernelReport r;
  r.truncated = true;
  r.rho = rho;
  r.slab_bound = floor_of(h);
  if (a.empty()) return r;
  Int amin = dot(a[0], rho);
  for (const auto& x : a) amin = std::min(amin, Int(dot(x, rho)));
  auto b = polyhedron_lattice_points_truncated(q2, rho, h - amin);
  fill(r, polyhedron_lattice_points_truncated(q, rho, h), a, b);
  return r;
}

std::vector<CokernelReport> projective_normality_probe(const ToricLineBundle& l, int k_max) {
  if (k_max < 1) throw Error("k_max must be positive");
  if (!is_ample(l)) throw Error("normality probe needs an ample bundle");
  auto p = *polytope_of(l);
  std::vector<CokernelReport> out;
  for (int j = 1; j <= k_max; ++j) out.push_back(phi_cokernel(p, scale(p, Rat(j))));
  return out;
}

std::vector<Fan> smooth_surface_family(int max_picard) {
  std::vector<Fan> out;
  std::set<std::vector<IntVector>> seen;
  auto add = [&](const Fan& f) {
    Fan c = canonical(f);
    if (static_cast<int>(c.rays.size()) - 2 > max_picard) return false;
    if (!seen.insert(c.rays).second) return false;
    out.push_back(f);
    return true;
  };
  add(fan_p2());
  for (long a = 0; a <= 3; ++a) add(fan_hirzebruch(a));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (static_cast<int>(out[i].rays.size()) - 2 >= max_picard) continue;
    for (int c = 0; c < static_cast<int>(out[i].max_cones.size()); ++c) add(blowup(out[i], c));
  }
  return out;
}

std::vector<ToricLineBundle> nef_bundles(const PicardFrame& fr, long max_coeff) {
  const int r = fr.rank();
  std::vector<ToricLineBundle> out;
  std::vector<Int> x(r, Int(0));
  while (true) {
    auto deg = wall_degrees(fr, x);
    if (std::all_of(deg.begin(), deg.end(), [](const Int& v) { return sgn(v) >= 0; })) out.push_back(from_pic(fr, x));
    int i = 0;
    while (i < r && x[i] == max_coeff) x[i] = 0, ++i;
    if (i == r) break;
    x[i] += 1;
  }
  return out;
}

}  // namespace oda
