#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "eqcalc/linalg.hpp"

namespace eqcalc {

using Dims = std::map<int, std::size_t>;
using GradedRanks = std::map<int, std::size_t>;  // only nonzero entries

inline std::size_t dim_at(const Dims& d, int n) {
  auto it = d.find(n);
  return it == d.end() ? 0 : it->second;
}

inline Dims prune(Dims d) {
  for (auto it = d.begin(); it != d.end();) it = it->second == 0 ? d.erase(it) : std::next(it);
  return d;
}

// Bounded chain complex of finite-dimensional Q-vector spaces with
// d_n : C_n -> C_{n-1}.
class ChainComplex {
 public:
  ChainComplex() = default;

  ChainComplex(Dims dims, std::map<int, SparseMatrix> d, bool validate = true)
      : dims_(prune(std::move(dims))), d_(std::move(d)) {
    for (auto it = d_.begin(); it != d_.end();) {
      int n = it->first;
      if (it->second.rows() != dim(n - 1) || it->second.cols() != dim(n))
        throw ValidationError("shape", "d_" + std::to_string(n) + " has shape " + std::to_string(it->second.rows()) +
                                           "x" + std::to_string(it->second.cols()));
      it = it->second.is_zero() ? d_.erase(it) : std::next(it);
    }
    if (validate) {
      for (auto& [n, m] : d_) {
        auto jt = d_.find(n - 1);
        if (jt != d_.end() && !(jt->second * m).is_zero())
          throw ValidationError("d^2", "d_" + std::to_string(n - 1) + " d_" + std::to_string(n) + " != 0");
      }
    }
  }

  // Q^dim in a single degree.
  static ChainComplex concentrated(int degree, std::size_t dim = 1) { return ChainComplex({{degree, dim}}, {}); }

  std::size_t dim(int n) const { return dim_at(dims_, n); }
  const Dims& dims() const { return dims_; }

  SparseMatrix d(int n) const {
    auto it = d_.find(n);
    return it == d_.end() ? SparseMatrix(dim(n - 1), dim(n)) : it->second;
  }
  const std::map<int, SparseMatrix>& differentials() const { return d_; }

  std::size_t total_dim() const {
    std::size_t s = 0;
    for (auto& [n, k] : dims_) s += k;
    return s;
  }
  bool is_zero() const { return dims_.empty(); }
  int min_degree() const { return dims_.empty() ? 0 : dims_.begin()->first; }
  int max_degree() const { return dims_.empty() ? 0 : dims_.rbegin()->first; }

  // (C[k])_n = C_{n-k}, with differential multiplied by (-1)^k.
  ChainComplex shift(int k) const {
    Dims dims;
    for (auto& [n, m] : dims_) dims[n + k] = m;
    std::map<int, SparseMatrix> d;
    for (auto& [n, m] : d_) d[n + k] = (k % 2) ? m.scaled(-1) : m;
    return ChainComplex(std::move(dims), std::move(d), false);
  }

  bool operator==(const ChainComplex& o) const {
    if (dims_ != o.dims_ || d_.size() != o.d_.size()) return false;
    for (auto& [n, m] : d_) {
      auto it = o.d_.find(n);
      if (it == o.d_.end() || !(it->second == m)) return false;
    }
    return true;
  }

 private:
  Dims dims_;
  std::map<int, SparseMatrix> d_;
};

// Degreewise linear maps f_n : A_n -> B_n.
class ChainMap {
 public:
  ChainMap() = default;
  ChainMap(Dims source, Dims target, std::map<int, SparseMatrix> f = {})
      : source_(prune(std::move(source))), target_(prune(std::move(target))), f_(std::move(f)) {
    for (auto it = f_.begin(); it != f_.end();) {
      if (it->second.rows() != dim_at(target_, it->first) || it->second.cols() != dim_at(source_, it->first))
        throw ValidationError("shape", "chain map component in degree " + std::to_string(it->first));
      it = it->second.is_zero() ? f_.erase(it) : std::next(it);
    }
  }

  static ChainMap identity(const Dims& d) {
    std::map<int, SparseMatrix> f;
    for (auto& [n, k] : d) f[n] = SparseMatrix::identity(k);
    return ChainMap(d, d, std::move(f));
  }

  const Dims& source() const { return source_; }
  const Dims& target() const { return target_; }

  SparseMatrix operator[](int n) const {
    auto it = f_.find(n);
    return it == f_.end() ? SparseMatrix(dim_at(target_, n), dim_at(source_, n)) : it->second;
  }
  const std::map<int, SparseMatrix>& components() const { return f_; }

  // this after g.
  ChainMap after(const ChainMap& g) const {
    if (g.target_ != source_) throw PreconditionError("composition of chain maps with mismatched dims");
    std::map<int, SparseMatrix> h;
    for (auto& [n, m] : f_) {
      auto it = g.f_.find(n);
      if (it != g.f_.end()) h[n] = m * it->second;
    }
    return ChainMap(g.source_, target_, std::move(h));
  }

  ChainMap scaled(const Rational& s) const {
    std::map<int, SparseMatrix> h;
    for (auto& [n, m] : f_) h[n] = m.scaled(s);
    return ChainMap(source_, target_, std::move(h));
  }

  bool operator==(const ChainMap& o) const {
    if (source_ != o.source_ || target_ != o.target_) return false;
    std::set<int> degs;
    for (auto& [n, m] : f_) degs.insert(n);
    for (auto& [n, m] : o.f_) degs.insert(n);
    for (int n : degs)
      if (!((*this)[n] == o[n])) return false;
    return true;
  }

 private:
  Dims source_;
  Dims target_;
  std::map<int, SparseMatrix> f_;
};

// Throws ValidationError unless f commutes with the differentials.
inline void validate_chain_map(const ChainMap& f, const ChainComplex& a, const ChainComplex& b) {
  if (prune(f.source()) != a.dims() || prune(f.target()) != b.dims())
    throw ValidationError("shape", "chain map dims do not match complexes");
  std::set<int> degs;
  for (auto& [n, k] : a.dims()) degs.insert(n);
  for (int n : degs) {
    if (!(b.d(n) * f[n] == f[n - 1] * a.d(n)))
      throw ValidationError("chain map", "f d != d f in degree " + std::to_string(n));
  }
}

inline std::map<int, std::size_t> differential_ranks(const ChainComplex& c) {
  std::map<int, std::size_t> r;
  for (auto& [n, m] : c.differentials()) r[n] = rank(m);
  return r;
}

// Betti numbers over Q.
inline GradedRanks homology(const ChainComplex& c) {
  auto r = differential_ranks(c);
  GradedRanks h;
  for (auto& [n, k] : c.dims()) {
    std::size_t b = k - dim_at(r, n) - dim_at(r, n + 1);
    if (b) h[n] = b;
  }
  return h;
}

inline bool is_acyclic(const ChainComplex& c) { return homology(c).empty(); }

struct IntegralHomology {
  GradedRanks ranks;
  std::map<int, std::vector<Integer>> torsion;  // invariant factors > 1
};

// Homology over Z for a complex with integral differentials.
inline IntegralHomology integral_homology(const ChainComplex& c) {
  IntegralHomology out;
  std::map<int, std::size_t> r;
  std::map<int, std::vector<Integer>> tors;
  for (auto& [n, m] : c.differentials()) {
    std::size_t rk = 0;
    tors[n] = torsion_coefficients(m, &rk);
    r[n] = rk;
  }
  for (auto& [n, k] : c.dims()) {
    std::size_t b = k - dim_at(r, n) - dim_at(r, n + 1);
    if (b) out.ranks[n] = b;
    auto it = tors.find(n + 1);
    if (it != tors.end() && !it->second.empty()) out.torsion[n] = it->second;
  }
  return out;
}

inline ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
  Dims dims = a.dims();
  for (auto& [n, k] : b.dims()) dims[n] += k;
  std::set<int> degs;
  for (auto& [n, k] : dims) degs.insert(n);
  std::map<int, SparseMatrix> d;
  for (int n : degs) d[n] = block_diagonal({a.d(n), b.d(n)});
  return ChainComplex(std::move(dims), std::move(d), false);
}

// Cone(f)_n = A_{n-1} + B_n, d(a, b) = (-da, f a + db).
inline ChainComplex cone(const ChainMap& f, const ChainComplex& a, const ChainComplex& b) {
  Dims dims;
  for (auto& [n, k] : a.dims()) dims[n + 1] += k;
  for (auto& [n, k] : b.dims()) dims[n] += k;
  std::map<int, SparseMatrix> d;
  for (auto& [n, k] : dims) {
    std::size_t a_src = a.dim(n - 1), a_tgt = a.dim(n - 2);
    MatrixBuilder mb(a_tgt + b.dim(n - 1), a_src + b.dim(n));
    mb.add_block(0, 0, a.d(n - 1), -1);
    mb.add_block(a_tgt, 0, f[n - 1]);
    mb.add_block(a_tgt, a_src, b.d(n));
    d[n] = mb.build();
  }
  return ChainComplex(std::move(dims), std::move(d), false);
}

// Homotopy fiber: Fib(f)_n = Cone(f)_{n+1}.
inline ChainComplex fiber(const ChainMap& f, const ChainComplex& a, const ChainComplex& b) {
  return cone(f, a, b).shift(-1);
}

inline bool is_quasi_isomorphism(const ChainMap& f, const ChainComplex& a, const ChainComplex& b) {
  return is_acyclic(cone(f, a, b));
}

// Cylinder A (x) I with I the interval complex (two vertices, one edge),
// with the inclusion at the far end and the collapse back to A.
struct Cylinder {
  ChainComplex complex;
  ChainMap include;   // A -> Cyl
  ChainMap collapse;  // Cyl -> A
};

inline Cylinder cylinder(const ChainComplex& a) {
  // Degree n: [A_n v0 | A_n v1 | A_{n-1} e], d(x e) = dx e + (-1)^{|x|} (x v1 - x v0).
  Dims dims;
  for (auto& [n, k] : a.dims()) {
    dims[n] += 2 * k;
    dims[n + 1] += k;
  }
  std::map<int, SparseMatrix> d;
  for (auto& [n, k] : dims) {
    std::size_t s0 = a.dim(n), s1 = a.dim(n - 1), t0 = a.dim(n - 1), t1 = a.dim(n - 2);
    MatrixBuilder mb(2 * t0 + t1, 2 * s0 + s1);
    mb.add_block(0, 0, a.d(n));
    mb.add_block(t0, s0, a.d(n));
    mb.add_block(2 * t0, 2 * s0, a.d(n - 1));
    Rational sign = ((n - 1) % 2 == 0) ? 1 : -1;
    mb.add_block(t0, 2 * s0, SparseMatrix::identity(s1), sign);
    mb.add_block(0, 2 * s0, SparseMatrix::identity(s1), -sign);
    d[n] = mb.build();
  }
  ChainComplex cyl(dims, d);
  std::map<int, SparseMatrix> inc, col;
  for (auto& [n, k] : a.dims()) {
    MatrixBuilder mi(dim_at(dims, n), k);
    mi.add_block(k, 0, SparseMatrix::identity(k));
    inc[n] = mi.build();
  }
  for (auto& [n, k] : dims) {
    std::size_t an = a.dim(n);
    MatrixBuilder mc(an, k);
    mc.add_block(0, 0, SparseMatrix::identity(an));
    mc.add_block(0, an, SparseMatrix::identity(an));
    col[n] = mc.build();
  }
  return {cyl, ChainMap(a.dims(), dims, std::move(inc)), ChainMap(dims, a.dims(), std::move(col))};
}

inline std::string format_ranks(const GradedRanks& h) {
  std::string s = "{";
  bool first = true;
  for (auto& [n, k] : h) {
    if (!first) s += ", ";
    s += "H" + std::to_string(n) + "=" + std::to_string(k);
    first = false;
  }
  return s + "}";
}

}  // namespace eqcalc
