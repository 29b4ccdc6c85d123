#include "oda/lattice.hpp"

#include <algorithm>
#include <ostream>

namespace oda {

IntVector ivec(std::initializer_list<long> xs) {
  std::vector<Int> c;
  for (long x : xs) c.emplace_back(x);
  return IntVector(std::move(c));
}

RatVector rvec(std::initializer_list<long> xs) {
  std::vector<Rat> c;
  for (long x : xs) c.emplace_back(x);
  return RatVector(std::move(c));
}

Rat rat(long p, long q) {
  if (q == 0) throw Error("zero denominator");
  Rat r(p, q);
  r.canonicalize();
  return r;
}

RatVector to_rat(const IntVector& v) {
  std::vector<Rat> c;
  c.reserve(v.size());
  for (const auto& x : v) c.emplace_back(x);
  return RatVector(std::move(c));
}

bool is_integral(const RatVector& v) {
  for (const auto& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

IntVector to_int(const RatVector& v) {
  std::vector<Int> c;
  c.reserve(v.size());
  for (const auto& x : v) {
    if (x.get_den() != 1) throw Error("non-integral coordinate " + to_string(x));
    c.push_back(x.get_num());
  }
  return IntVector(std::move(c));
}

Int dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DimensionError("dimension mismatch in dot");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const IntVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw DimensionError("dimension mismatch in dot");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

Rat dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw DimensionError("dimension mismatch in dot");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVector cross(const IntVector& a, const IntVector& b) {
  if (a.size() != 3 || b.size() != 3) throw DimensionError("cross product needs 3D vectors");
  return IntVector({Int(a[1] * b[2] - a[2] * b[1]), Int(a[2] * b[0] - a[0] * b[2]),
                    Int(a[0] * b[1] - a[1] * b[0])});
}

namespace {

template <class T>
T det_impl(const std::vector<Vec<T>>& m) {
  const std::size_t n = m.size();
  for (const auto& r : m)
    if (r.size() != n) throw DimensionError("determinant needs a square matrix");
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (n == 3)
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  throw DimensionError("determinant size must be 1..3");
}

// Row echelon over Q; returns pivot columns.
std::vector<int> echelon(std::vector<std::vector<Rat>>& a, int cols) {
  std::vector<int> piv;
  int r = 0;
  const int rows = static_cast<int>(a.size());
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (sgn(a[i][c]) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(a[r], a[p]);
    const std::size_t width = a[r].size();
    Rat inv = 1 / a[r][c];
    for (std::size_t j = 0; j < width; ++j) a[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      Rat f = a[i][c];
      for (std::size_t j = 0; j < width; ++j) a[i][j] -= f * a[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

Int det(const std::vector<IntVector>& rows) { return det_impl(rows); }
Rat det(const std::vector<RatVector>& rows) { return det_impl(rows); }

Int gcd_of(const IntVector& v) {
  Int g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntVector primitive(const IntVector& v) {
  if (v.is_zero()) throw Error("no primitive direction");
  Int g = gcd_of(v);
  std::vector<Int> c;
  for (const auto& x : v) c.push_back(x / g);
  return IntVector(std::move(c));
}

IntVector primitive(const RatVector& v) {
  if (v.is_zero()) throw Error("no primitive direction");
  Int l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
  std::vector<Int> c;
  for (const auto& x : v) c.push_back(Int(x.get_num() * (l / x.get_den())));
  return primitive(IntVector(std::move(c)));
}

bool is_primitive(const IntVector& v) { return !v.is_zero() && gcd_of(v) == 1; }

bool is_unimodular(const std::vector<IntVector>& vs) {
  if (vs.empty() || vs.size() != vs[0].size())
    throw DimensionError("is_unimodular needs d vectors of dimension d");
  Int d = det(vs);
  return abs(d) == 1;
}

std::vector<IntVector> complement_basis(const IntVector& u) {
  if (!is_primitive(u)) throw Error("complement_basis needs a primitive vector");
  const int d = u.dim();
  std::vector<IntVector> out;
  if (d == 1) return out;
  if (d == 2) {
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), u[0].get_mpz_t(), u[1].get_mpz_t());
    // s*a + t*b = 1, so det[(a,b),(-t,s)] = 1
    out.push_back(IntVector({Int(-t), s}));
  } else {
    const Int &a = u[0], &b = u[1], &c = u[2];
    if (a == 0 && b == 0) {
      out.push_back(ivec({1, 0, 0}));
      out.push_back(ivec({0, 1, 0}));
    } else {
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Int a1 = a / g, b1 = b / g;
      Int h, x, y;
      mpz_gcdext(h.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
      out.push_back(IntVector({Int(-y * a1), Int(-y * b1), x}));
      out.push_back(IntVector({Int(-t), s, Int(0)}));
    }
  }
  std::vector<IntVector> m{u};
  m.insert(m.end(), out.begin(), out.end());
  if (!is_unimodular(m)) throw std::logic_error("complement_basis produced a non-unimodular completion");
  return out;
}

int rank(const std::vector<RatVector>& vs) {
  if (vs.empty()) return 0;
  const int d = vs[0].dim();
  std::vector<std::vector<Rat>> a;
  for (const auto& v : vs) a.push_back(v.coords());
  return static_cast<int>(echelon(a, d).size());
}

int rank(const std::vector<IntVector>& vs) {
  std::vector<RatVector> r;
  for (const auto& v : vs) r.push_back(to_rat(v));
  return rank(r);
}

std::vector<IntVector> orthogonal_complement(const std::vector<RatVector>& vs, int d) {
  std::vector<std::vector<Rat>> a;
  for (const auto& v : vs) a.push_back(v.coords());
  std::vector<int> piv = echelon(a, d);
  std::vector<IntVector> out;
  for (int free = 0; free < d; ++free) {
    if (std::find(piv.begin(), piv.end(), free) != piv.end()) continue;
    std::vector<Rat> x(d, Rat(0));
    x[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -a[r][free];
    out.push_back(primitive(RatVector(x)));
  }
  return out;
}

bool solve(const std::vector<RatVector>& rows, const std::vector<Rat>& rhs, RatVector& x) {
  const int n = static_cast<int>(rows.size());
  std::vector<std::vector<Rat>> a;
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> r = rows[i].coords();
    r.push_back(rhs[i]);
    a.push_back(std::move(r));
  }
  std::vector<int> piv = echelon(a, n);
  if (static_cast<int>(piv.size()) != n) return false;
  std::vector<Rat> out(n);
  for (int i = 0; i < n; ++i) out[piv[i]] = a[i][n];
  x = RatVector(std::move(out));
  return true;
}

std::string to_string(const Int& r) { return r.get_str(); }

std::string to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

std::string to_string(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

Rat parse_rational(const std::string& s) {
  auto bad = [&]() { return Error("malformed rational \"" + s + "\""); };
  auto slash = s.find('/');
  auto parse_int = [&](const std::string& t, bool allow_sign) {
    if (t.empty()) throw bad();
    std::size_t i = 0;
    if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) throw bad();
    for (std::size_t j = i; j < t.size(); ++j)
      if (t[j] < '0' || t[j] > '9') throw bad();
    return Int(t[0] == '+' ? t.substr(1) : t);
  };
  if (slash == std::string::npos) return Rat(parse_int(s, true));
  Int num = parse_int(s.substr(0, slash), true);
  Int den = parse_int(s.substr(slash + 1), false);
  if (den == 0) throw Error("zero denominator in \"" + s + "\"");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Int floor_of(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Int ceil_of(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

std::ostream& operator<<(std::ostream& os, const IntVector& v) { return os << to_string(v); }
std::ostream& operator<<(std::ostream& os, const RatVector& v) { return os << to_string(v); }

}  // namespace oda
