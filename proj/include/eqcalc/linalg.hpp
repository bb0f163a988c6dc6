#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "eqcalc/errors.hpp"

namespace eqcalc {

using Rational = mpq_class;
using Integer = mpz_class;

struct Entry {
  std::size_t col;
  Rational value;
};

// Row-major sparse matrix over Q with sorted, nonzero row entries.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({i, Rational(1)});
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Entry>& row(std::size_t r) const { return data_[r]; }

  Rational at(std::size_t r, std::size_t c) const {
    for (const auto& e : data_[r])
      if (e.col == c) return e.value;
    return Rational(0);
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }

  bool is_zero() const { return nonzeros() == 0; }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& e : data_[r]) t.data_[e.col].push_back({r, e.value});
    return t;
  }

  bool operator==(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (data_[r].size() != o.data_[r].size()) return false;
      for (std::size_t i = 0; i < data_[r].size(); ++i)
        if (data_[r][i].col != o.data_[r][i].col || data_[r][i].value != o.data_[r][i].value) return false;
    }
    return true;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows_) throw PreconditionError("matrix product shape mismatch");
    SparseMatrix c(a.rows_, b.cols_);
    std::map<std::size_t, Rational> acc;
    for (std::size_t r = 0; r < a.rows_; ++r) {
      acc.clear();
      for (const auto& e : a.data_[r])
        for (const auto& f : b.data_[e.col]) acc[f.col] += e.value * f.value;
      for (auto& [col, v] : acc)
        if (v != 0) c.data_[r].push_back({col, v});
    }
    return c;
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix sum shape mismatch");
    SparseMatrix c(a.rows_, a.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      const auto& x = a.data_[r];
      const auto& y = b.data_[r];
      std::size_t i = 0, j = 0;
      while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].col < y[j].col)) {
          c.data_[r].push_back(x[i++]);
        } else if (i == x.size() || y[j].col < x[i].col) {
          c.data_[r].push_back(y[j++]);
        } else {
          Rational v = x[i].value + y[j].value;
          if (v != 0) c.data_[r].push_back({x[i].col, v});
          ++i;
          ++j;
        }
      }
    }
    return c;
  }

  SparseMatrix scaled(const Rational& s) const {
    if (s == 0) return SparseMatrix(rows_, cols_);
    SparseMatrix c = *this;
    for (auto& r : c.data_)
      for (auto& e : r) e.value *= s;
    return c;
  }

  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return a + b.scaled(-1); }

  bool is_integral() const {
    for (const auto& r : data_)
      for (const auto& e : r)
        if (e.value.get_den() != 1) return false;
    return true;
  }

  // Dense copy, mainly for tests and small Smith normal form inputs.
  std::vector<std::vector<Rational>> dense() const {
    std::vector<std::vector<Rational>> d(rows_, std::vector<Rational>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& e : data_[r]) d[r][e.col] = e.value;
    return d;
  }

  static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& d, std::size_t cols) {
    SparseMatrix m(d.size(), cols);
    for (std::size_t r = 0; r < d.size(); ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (d[r][c] != 0) m.data_[r].push_back({c, d[r][c]});
    return m;
  }

  friend class MatrixBuilder;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> data_;
};

// Accumulates (row, col, value) triplets; duplicates are summed.
class MatrixBuilder {
 public:
  MatrixBuilder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), pending_(rows) {}

  void add(std::size_t r, std::size_t c, const Rational& v) {
    if (r >= rows_ || c >= cols_) throw PreconditionError("matrix entry out of range");
    if (v != 0) pending_[r].push_back({c, v});
  }

  // Adds m at the given offset.
  void add_block(std::size_t r0, std::size_t c0, const SparseMatrix& m, const Rational& scale = 1) {
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (const auto& e : m.row(r)) add(r0 + r, c0 + e.col, e.value * scale);
  }

  SparseMatrix build() {
    SparseMatrix m(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      auto& p = pending_[r];
      std::sort(p.begin(), p.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
      for (std::size_t i = 0; i < p.size();) {
        std::size_t j = i;
        Rational v = 0;
        while (j < p.size() && p[j].col == p[i].col) v += p[j++].value;
        if (v != 0) m.data_[r].push_back({p[i].col, v});
        i = j;
      }
      p.clear();
    }
    return m;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<std::vector<Entry>> pending_;
};

inline SparseMatrix block_diagonal(const std::vector<SparseMatrix>& blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  MatrixBuilder mb(r, c);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    mb.add_block(r0, c0, b);
    r0 += b.rows();
    c0 += b.cols();
  }
  return mb.build();
}

namespace detail {

// Integer sparse row for fraction-free elimination.
template <class Int>
using IntRow = std::vector<std::pair<std::size_t, Int>>;

inline bool fits(__int128 v) { return v <= INT64_MAX && v >= -INT64_MAX; }

struct Overflow {};

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(std::gcd(a < 0 ? -a : a, b < 0 ? -b : b));
}

// a*r - b*p with the leading column cancelled, normalised by content.
inline IntRow<std::int64_t> combine(const IntRow<std::int64_t>& r, const IntRow<std::int64_t>& p) {
  std::int64_t a = p.front().second, b = r.front().second;
  std::int64_t g = gcd64(a, b);
  a /= g;
  b /= g;
  IntRow<std::int64_t> out;
  std::size_t i = 1, j = 1;
  while (i < r.size() || j < p.size()) {
    __int128 v;
    std::size_t col;
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      col = r[i].first;
      v = static_cast<__int128>(a) * r[i++].second;
    } else if (i == r.size() || p[j].first < r[i].first) {
      col = p[j].first;
      v = -static_cast<__int128>(b) * p[j++].second;
    } else {
      col = r[i].first;
      v = static_cast<__int128>(a) * r[i++].second - static_cast<__int128>(b) * p[j++].second;
    }
    if (v != 0) {
      if (!fits(v)) throw Overflow{};
      out.emplace_back(col, static_cast<std::int64_t>(v));
    }
  }
  std::int64_t c = 0;
  for (auto& e : out) c = gcd64(c, e.second);
  if (c > 1)
    for (auto& e : out) e.second /= c;
  return out;
}

inline IntRow<Integer> combine(const IntRow<Integer>& r, const IntRow<Integer>& p) {
  Integer a = p.front().second, b = r.front().second;
  Integer g = gcd(a, b);
  a /= g;
  b /= g;
  IntRow<Integer> out;
  std::size_t i = 1, j = 1;
  while (i < r.size() || j < p.size()) {
    Integer v;
    std::size_t col;
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      col = r[i].first;
      v = a * r[i++].second;
    } else if (i == r.size() || p[j].first < r[i].first) {
      col = p[j].first;
      v = -b * p[j++].second;
    } else {
      col = r[i].first;
      v = a * r[i++].second - b * p[j++].second;
    }
    if (v != 0) out.emplace_back(col, v);
  }
  Integer c = 0;
  for (auto& e : out) c = gcd(c, e.second);
  if (c > 1)
    for (auto& e : out) e.second /= c;
  return out;
}

template <class Int>
std::size_t eliminate(std::vector<IntRow<Int>> rows) {
  std::map<std::size_t, IntRow<Int>> pivots;
  for (auto& r : rows) {
    while (!r.empty()) {
      auto it = pivots.find(r.front().first);
      if (it == pivots.end()) {
        pivots.emplace(r.front().first, std::move(r));
        break;
      }
      r = combine(r, it->second);
    }
  }
  return pivots.size();
}

// Rows scaled to integers.
inline std::vector<IntRow<Integer>> integer_rows(const SparseMatrix& m) {
  std::vector<IntRow<Integer>> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.row(r).empty()) continue;
    Integer l = 1;
    for (const auto& e : m.row(r)) l = lcm(l, Integer(e.value.get_den()));
    IntRow<Integer> row;
    for (const auto& e : m.row(r)) row.emplace_back(e.col, Integer(e.value.get_num() * (l / e.value.get_den())));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

// Exact rank over Q.
inline std::size_t rank(const SparseMatrix& m) {
  auto rows = detail::integer_rows(m.rows() <= m.cols() ? m : m.transpose());
  bool small = true;
  for (auto& r : rows)
    for (auto& e : r)
      if (!e.second.fits_slong_p()) small = false;
  if (small) {
    std::vector<detail::IntRow<std::int64_t>> rows64;
    for (auto& r : rows) {
      detail::IntRow<std::int64_t> x;
      for (auto& e : r) x.emplace_back(e.first, e.second.get_si());
      rows64.push_back(std::move(x));
    }
    try {
      return detail::eliminate(std::move(rows64));
    } catch (const detail::Overflow&) {
    }
  }
  return detail::eliminate(std::move(rows));
}

// Invariant factors (> 1) of an integer matrix, by dense Smith normal form.
inline std::vector<Integer> torsion_coefficients(const SparseMatrix& m, std::size_t* rank_out = nullptr) {
  if (!m.is_integral()) throw PreconditionError("Smith normal form needs an integral matrix");
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::vector<Integer>> a(R, std::vector<Integer>(C));
  for (std::size_t r = 0; r < R; ++r)
    for (const auto& e : m.row(r)) a[r][e.col] = e.value.get_num();
  std::vector<Integer> diag;
  std::size_t t = 0;
  while (t < R && t < C) {
    // Pivot: smallest nonzero absolute value in the remaining block.
    std::optional<std::pair<std::size_t, std::size_t>> piv;
    for (std::size_t r = t; r < R; ++r)
      for (std::size_t c = t; c < C; ++c)
        if (a[r][c] != 0 && (!piv || abs(a[r][c]) < abs(a[piv->first][piv->second]))) piv = {r, c};
    if (!piv) break;
    std::swap(a[t], a[piv->first]);
    for (std::size_t r = 0; r < R; ++r) std::swap(a[r][t], a[r][piv->second]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t r = t + 1; r < R; ++r) {
        if (a[r][t] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[r][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t c = t; c < C; ++c) a[r][c] -= q * a[t][c];
        if (a[r][t] != 0) {
          std::swap(a[t], a[r]);
          clean = false;
        }
      }
      for (std::size_t c = t + 1; c < C; ++c) {
        if (a[t][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][c].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t r = t; r < R; ++r) a[r][c] -= q * a[r][t];
        if (a[t][c] != 0) {
          for (std::size_t r = 0; r < R; ++r) std::swap(a[r][t], a[r][c]);
          clean = false;
        }
      }
      if (clean) {
        // Divisibility: the pivot must divide every remaining entry.
        for (std::size_t r = t + 1; r < R && clean; ++r)
          for (std::size_t c = t + 1; c < C && clean; ++c)
            if (a[r][c] % a[t][t] != 0) {
              for (std::size_t k = t; k < C; ++k) a[t][k] += a[r][k];
              clean = false;
            }
      }
    }
    diag.push_back(abs(a[t][t]));
    ++t;
  }
  if (rank_out) *rank_out = diag.size();
  std::vector<Integer> out;
  for (auto& d : diag)
    if (d > 1) out.push_back(d);
  return out;
}

// Random integer matrix of determinant +-1 together with its inverse.
inline std::pair<SparseMatrix, SparseMatrix> random_unimodular(std::size_t n, std::mt19937_64& rng,
                                                               std::size_t steps = 0) {
  if (n == 0) return {SparseMatrix(0, 0), SparseMatrix(0, 0)};
  if (steps == 0) steps = 2 * n;
  std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n)), h(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = h[i][i] = 1;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (std::size_t s = 0; s < steps && n > 1; ++s) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    int c = coef(rng);
    if (c == 0) {
      std::swap(g[i], g[j]);
      for (auto& row : h) std::swap(row[i], row[j]);
      continue;
    }
    // g <- E g with E = I + c e_ij (row op), h <- h E^{-1} (column op).
    for (std::size_t k = 0; k < n; ++k) g[i][k] += c * g[j][k];
    for (std::size_t k = 0; k < n; ++k) h[k][j] -= c * h[k][i];
  }
  return {SparseMatrix::from_dense(g, n), SparseMatrix::from_dense(h, n)};
}

}  // namespace eqcalc
