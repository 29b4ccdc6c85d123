// Exact integer and rational vectors of dimension 1..3.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace oda {

using Int = mpz_class;
using Rat = mpq_class;

constexpr int kMaxDim = 3;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

template <class T>
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t d) : c_(d) { check(); }
  Vec(std::initializer_list<T> xs) : c_(xs) { check(); }
  explicit Vec(std::vector<T> xs) : c_(std::move(xs)) { check(); }

  std::size_t size() const { return c_.size(); }
  int dim() const { return static_cast<int>(c_.size()); }
  const T& operator[](std::size_t i) const { return c_[i]; }
  T& operator[](std::size_t i) { return c_[i]; }
  const std::vector<T>& coords() const { return c_; }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }

  bool is_zero() const {
    for (const auto& x : c_)
      if (sgn(x) != 0) return false;
    return true;
  }

  Vec operator-() const {
    Vec r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }
  Vec& operator+=(const Vec& o) {
    same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Vec& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, const T& s) { return a *= s; }
  friend Vec operator*(const T& s, Vec a) { return a *= s; }

  friend bool operator==(const Vec& a, const Vec& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Vec& a, const Vec& b) { return !(a == b); }
  friend bool operator<(const Vec& a, const Vec& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] < b.c_[i]) return true;
      if (b.c_[i] < a.c_[i]) return false;
    }
    return false;
  }

 private:
  void check() const {
    if (c_.empty() || c_.size() > kMaxDim)
      throw DimensionError("vector dimension must be 1, 2 or 3, got " + std::to_string(c_.size()));
  }
  void same(const Vec& o) const {
    if (o.c_.size() != c_.size()) throw DimensionError("dimension mismatch");
  }
  std::vector<T> c_;
};

using IntVector = Vec<Int>;
using RatVector = Vec<Rat>;

IntVector ivec(std::initializer_list<long> xs);
RatVector rvec(std::initializer_list<long> xs);
// Canonical p/q.
Rat rat(long p, long q);
RatVector to_rat(const IntVector& v);
// Throws if some coordinate is not an integer.
IntVector to_int(const RatVector& v);
bool is_integral(const RatVector& v);

Int dot(const IntVector& a, const IntVector& b);
Rat dot(const IntVector& a, const RatVector& b);
Rat dot(const RatVector& a, const RatVector& b);

IntVector cross(const IntVector& a, const IntVector& b);
Int det(const std::vector<IntVector>& rows);
Rat det(const std::vector<RatVector>& rows);

Int gcd_of(const IntVector& v);
IntVector primitive(const IntVector& v);
// Primitive integer vector positively proportional to a nonzero rational vector.
IntVector primitive(const RatVector& v);
bool is_primitive(const IntVector& v);
bool is_unimodular(const std::vector<IntVector>& vs);
std::vector<IntVector> complement_basis(const IntVector& u);

// Rank of a list of rational vectors.
int rank(const std::vector<RatVector>& vs);
int rank(const std::vector<IntVector>& vs);
// Integer basis of the orthogonal complement of span(vs) inside Q^d.
std::vector<IntVector> orthogonal_complement(const std::vector<RatVector>& vs, int d);
// Solves rows * x = rhs for square nonsingular rows; returns false if singular.
bool solve(const std::vector<RatVector>& rows, const std::vector<Rat>& rhs, RatVector& x);

// "p/q" with "p" for integers.
std::string to_string(const Rat& r);
std::string to_string(const Int& r);
std::string to_string(const IntVector& v);
std::string to_string(const RatVector& v);
// Accepts "p", "-p", "p/q"; rejects zero denominators.
Rat parse_rational(const std::string& s);

Int floor_of(const Rat& r);
Int ceil_of(const Rat& r);

std::ostream& operator<<(std::ostream& os, const IntVector& v);
std::ostream& operator<<(std::ostream& os, const RatVector& v);

}  // namespace oda
