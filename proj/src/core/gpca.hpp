#pragma once

#include <vector>

#include "model.hpp"

namespace spca {

// Variable-association map with entries in [-1, 1], unit diagonal.
struct CorrelationMap {
  Matrix map;
  std::vector<std::size_t> degenerate_cols;  // zero-norm columns, flagged
};

// Ordered, possibly overlapping set of column indices.
struct VariableGroup {
  std::vector<std::size_t> indices;
};

// Non-centered cosine association between columns. (The acceptance
// behavior on block-structured uncentered data requires the non-centered
// form; see tests.)
CorrelationMap correlation_map(const Matrix& x);

// Seeds one group per variable: group_i = { j : |m_ij| >= gamma },
// deduplicated preserving first occurrence; singletons retained.
std::vector<VariableGroup> find_groups(const CorrelationMap& map,
                                       double gamma);

// Per component: one candidate loading per group (leading right singular
// vector of the column submatrix, zero elsewhere), the candidate with the
// largest captured variance wins, then the chosen deflation is applied
// and groups are recomputed.
FactorModel fit_gpca(const Matrix& x, std::size_t ncomp, double gamma,
                     Deflation deflation);

}  // namespace spca
