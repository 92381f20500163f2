#pragma once

#include <optional>
#include <vector>

#include "tnt/numeric.hpp"

namespace tnt {

// Dense rational matrix, row major.
struct QMatrix {
  size_t rows = 0, cols = 0;
  std::vector<Rat> a;

  QMatrix() = default;
  QMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, Rat(0)) {}
  Rat& at(size_t r, size_t c) { return a[r * cols + c]; }
  const Rat& at(size_t r, size_t c) const { return a[r * cols + c]; }
};

// In-place reduced row echelon form; returns pivot column per pivot row.
std::vector<size_t> rref(QMatrix& m);

// Basis of { x : M x = 0 }. One vector per free column, in column order;
// the free coordinate is 1 and pivot coordinates are filled from RREF.
std::vector<std::vector<Rat>> nullspace_basis(QMatrix m);

// One exact solution of A x = b, or nullopt if inconsistent.
std::optional<std::vector<Rat>> solve_linear(QMatrix a, std::vector<Rat> b);

// min c.x  subject to  A x = b, x >= 0   (two-phase simplex, Bland's rule)
struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded } status;
  std::vector<Rat> x;
  Rat objective = 0;
};

LpResult lp_solve(const QMatrix& a, const std::vector<Rat>& b, const std::vector<Rat>& c);

// Feasibility of A x = b, x >= 0 (phase one only).
std::optional<std::vector<Rat>> lp_feasible(const QMatrix& a, const std::vector<Rat>& b);

// Scale a rational vector to coprime integers (keeps direction and signs).
std::vector<Int> scale_to_coprime_ints(const std::vector<Rat>& v);

}  // namespace tnt
