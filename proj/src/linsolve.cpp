#include "tnt/linsolve.hpp"

#include <stdexcept>

namespace tnt {

std::vector<size_t> rref(QMatrix& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols && row < m.rows; col++) {
    size_t sel = row;
    while (sel < m.rows && m.at(sel, col) == 0) sel++;
    if (sel == m.rows) continue;
    for (size_t c = 0; c < m.cols; c++) std::swap(m.at(sel, c), m.at(row, c));
    Rat inv = Rat(1) / m.at(row, col);
    for (size_t c = col; c < m.cols; c++) m.at(row, c) *= inv;
    for (size_t r = 0; r < m.rows; r++) {
      if (r == row || m.at(r, col) == 0) continue;
      Rat f = m.at(r, col);
      for (size_t c = col; c < m.cols; c++) m.at(r, c) -= f * m.at(row, c);
    }
    pivots.push_back(col);
    row++;
  }
  return pivots;
}

std::vector<std::vector<Rat>> nullspace_basis(QMatrix m) {
  std::vector<size_t> pivots = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (size_t free = 0; free < m.cols; free++) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(m.cols, Rat(0));
    v[free] = 1;
    for (size_t pr = 0; pr < pivots.size(); pr++) v[pivots[pr]] = -m.at(pr, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rat>> solve_linear(QMatrix a, std::vector<Rat> b) {
  if (a.rows != b.size()) throw std::invalid_argument("solve_linear: shape mismatch");
  QMatrix aug(a.rows, a.cols + 1);
  for (size_t r = 0; r < a.rows; r++) {
    for (size_t c = 0; c < a.cols; c++) aug.at(r, c) = a.at(r, c);
    aug.at(r, a.cols) = b[r];
  }
  std::vector<size_t> pivots = rref(aug);
  for (size_t c : pivots)
    if (c == a.cols) return std::nullopt;  // 0 = 1 row
  std::vector<Rat> x(a.cols, Rat(0));
  for (size_t pr = 0; pr < pivots.size(); pr++) x[pivots[pr]] = aug.at(pr, a.cols);
  return x;
}

namespace {

// Tableau simplex over the rationals. Variables 0..n-1, basis of size m.
struct Simplex {
  size_t m, n;           // constraints, variables (incl. artificials)
  QMatrix t;             // m+1 rows: constraint rows then objective row
  std::vector<size_t> basis;

  Simplex(size_t m_, size_t n_) : m(m_), n(n_), t(m_ + 1, n_ + 1), basis(m_) {}

  // Bland's rule anti-cycling: smallest entering index, smallest-basis leaving row.
  // Returns false when optimal, throws Unbounded via nullptr sentinel.
  enum class Step { Optimal, Moved, Unbounded };

  Step step() {
    size_t enter = n;
    for (size_t j = 0; j < n; j++) {
      if (t.at(m, j) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == n) return Step::Optimal;
    size_t leave = m;
    Rat best_ratio = 0;
    for (size_t i = 0; i < m; i++) {
      if (t.at(i, enter) <= 0) continue;
      Rat ratio = t.at(i, n) / t.at(i, enter);
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) return Step::Unbounded;
    pivot(leave, enter);
    return Step::Moved;
  }

  void pivot(size_t row, size_t col) {
    Rat inv = Rat(1) / t.at(row, col);
    for (size_t j = 0; j <= n; j++) t.at(row, j) *= inv;
    for (size_t i = 0; i <= m; i++) {
      if (i == row || t.at(i, col) == 0) continue;
      Rat f = t.at(i, col);
      for (size_t j = 0; j <= n; j++) t.at(i, j) -= f * t.at(row, j);
    }
    basis[row] = col;
  }

  Step run() {
    while (true) {
      Step s = step();
      if (s != Step::Moved) return s;
    }
  }
};

}  // namespace

LpResult lp_solve(const QMatrix& a, const std::vector<Rat>& b, const std::vector<Rat>& c) {
  size_t m = a.rows, n = a.cols;
  if (b.size() != m || c.size() != n) throw std::invalid_argument("lp_solve: shape mismatch");

  // phase one: minimize the sum of one artificial variable per row
  Simplex p1(m, n + m);
  for (size_t i = 0; i < m; i++) {
    int sign = b[i] < 0 ? -1 : 1;
    for (size_t j = 0; j < n; j++) p1.t.at(i, j) = sign * a.at(i, j);
    p1.t.at(i, n + i) = 1;
    p1.t.at(i, n + m) = sign * b[i];
    p1.basis[i] = n + i;
  }
  // reduced costs for the all-artificial basis
  for (size_t i = 0; i < m; i++) {
    for (size_t j = 0; j < n; j++) p1.t.at(m, j) -= p1.t.at(i, j);
    p1.t.at(m, n + m) -= p1.t.at(i, n + m);
  }
  p1.run();
  if (p1.t.at(m, n + m) < 0) return LpResult{LpResult::Status::Infeasible, {}, 0};

  // pivot surviving artificials out; rows that cannot pivot are redundant
  for (size_t i = 0; i < m; i++) {
    if (p1.basis[i] < n) continue;
    for (size_t j = 0; j < n; j++) {
      if (p1.t.at(i, j) != 0) {
        p1.pivot(i, j);
        break;
      }
    }
  }

  // phase two on a fresh tableau without the artificial columns
  std::vector<size_t> live_rows;
  for (size_t i = 0; i < m; i++)
    if (p1.basis[i] < n) live_rows.push_back(i);
  size_t m2 = live_rows.size();
  Simplex p2(m2, n);
  for (size_t i2 = 0; i2 < m2; i2++) {
    size_t i = live_rows[i2];
    for (size_t j = 0; j < n; j++) p2.t.at(i2, j) = p1.t.at(i, j);
    p2.t.at(i2, n) = p1.t.at(i, n + m);
    p2.basis[i2] = p1.basis[i];
  }
  for (size_t j = 0; j < n; j++) p2.t.at(m2, j) = c[j];
  for (size_t i2 = 0; i2 < m2; i2++) {
    Rat f = c[p2.basis[i2]];
    if (f == 0) continue;
    for (size_t j = 0; j <= n; j++) p2.t.at(m2, j) -= f * p2.t.at(i2, j);
  }
  Simplex::Step s = p2.run();
  if (s == Simplex::Step::Unbounded) return LpResult{LpResult::Status::Unbounded, {}, 0};

  LpResult res{LpResult::Status::Optimal, std::vector<Rat>(n, Rat(0)), 0};
  for (size_t i2 = 0; i2 < m2; i2++) res.x[p2.basis[i2]] = p2.t.at(i2, n);
  for (size_t j = 0; j < n; j++) res.objective += c[j] * res.x[j];
  return res;
}

std::optional<std::vector<Rat>> lp_feasible(const QMatrix& a, const std::vector<Rat>& b) {
  std::vector<Rat> c(a.cols, Rat(0));
  LpResult r = lp_solve(a, b, c);
  if (r.status != LpResult::Status::Optimal) return std::nullopt;
  return r.x;
}

std::vector<Int> scale_to_coprime_ints(const std::vector<Rat>& v) {
  Int l = 1;
  for (auto& q : v) l = lcm_int(l, Int(denominator(q)));
  if (l == 0) l = 1;
  std::vector<Int> out(v.size());
  Int g = 0;
  for (size_t i = 0; i < v.size(); i++) {
    out[i] = Int(numerator(v[i])) * (l / Int(denominator(v[i])));
    g = gcd_int(g, out[i]);
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

}  // namespace tnt
