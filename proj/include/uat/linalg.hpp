#pragma once

#include <optional>
#include <vector>

#include "uat/fields.hpp"

namespace uat {

/// Dense exact matrix over a field tower; rows of equal length.
using FieldMatrix = std::vector<std::vector<FieldElement>>;

/// Solve A x = b by Gaussian elimination. Returns one solution or nullopt
/// when the system is inconsistent.
inline std::optional<std::vector<FieldElement>> solve_linear(
    FieldMatrix A, std::vector<FieldElement> b, const TowerPtr& tower) {
  const std::size_t rows = A.size();
  const std::size_t cols = rows ? A[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && A[pr][c].is_zero()) ++pr;
    if (pr == rows) continue;
    std::swap(A[pr], A[r]);
    std::swap(b[pr], b[r]);
    FieldElement inv = A[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j) A[r][j] = A[r][j] * inv;
    b[r] = b[r] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c].is_zero()) continue;
      FieldElement f = A[i][c];
      for (std::size_t j = c; j < cols; ++j)
        A[i][j] = A[i][j] - f * A[r][j];
      b[i] = b[i] - f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;
  std::vector<FieldElement> x(cols, tower->zero());
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
  return x;
}

/// Incremental linear-dependence finder over a fixed column space; feeds one
/// vector at a time and reports the first combination of all fed vectors that
/// sums to zero (coefficients in feed order, last coefficient 1).
class DependenceFinder {
 public:
  DependenceFinder(std::size_t dim, TowerPtr tower)
      : dim_(dim), tower_(std::move(tower)) {}

  /// Returns the dependence coefficients once the new vector is linearly
  /// dependent on the previous ones, otherwise nullopt.
  std::optional<std::vector<FieldElement>> feed(std::vector<FieldElement> v) {
    // combo tracks v as a combination of the original fed vectors
    std::vector<FieldElement> combo(count_ + 1, tower_->zero());
    combo[count_] = tower_->one();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::size_t c = pivots_[i];
      if (v[c].is_zero()) continue;
      FieldElement f = v[c];
      for (std::size_t j = 0; j < dim_; ++j) v[j] = v[j] - f * rows_[i][j];
      for (std::size_t j = 0; j < combos_[i].size(); ++j)
        combo[j] = combo[j] - f * combos_[i][j];
    }
    std::size_t piv = dim_;
    for (std::size_t j = 0; j < dim_; ++j)
      if (!v[j].is_zero()) {
        piv = j;
        break;
      }
    ++count_;
    if (piv == dim_) return combo;  // dependent
    FieldElement inv = v[piv].inverse();
    for (std::size_t j = 0; j < dim_; ++j) v[j] = v[j] * inv;
    for (auto& c : combo) c = c * inv;
    combo.resize(count_, tower_->zero());
    rows_.push_back(std::move(v));
    combos_.push_back(std::move(combo));
    pivots_.push_back(piv);
    return std::nullopt;
  }

 private:
  std::size_t dim_;
  TowerPtr tower_;
  std::size_t count_ = 0;
  std::vector<std::vector<FieldElement>> rows_;    // echelon rows
  std::vector<std::vector<FieldElement>> combos_;  // row = combo of fed vectors
  std::vector<std::size_t> pivots_;
};

}  // namespace uat
