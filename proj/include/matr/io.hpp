#ifndef MATR_IO_HPP
#define MATR_IO_HPP

#include <string>

#include "matr/types.hpp"

namespace matr {

/// Whitespace-separated "u v" pairs, 0-indexed; '#' lines are comments and
/// an optional "#n=<N>" header pins the node count. Duplicate and reversed
/// edges are deduplicated; self-loops are dropped (with a warning on
/// stderr). Throws parse_error with the line number on malformed input.
AdjacencyMatrix load_edge_list(const std::string& path);

/// Rectangular numeric CSV, optional header row (auto-detected by a
/// non-numeric first line). Standardization maps each column to mean 0 /
/// variance 1, with constant columns set to 0.
Matrix load_points_csv(const std::string& path, bool standardize = false);

}  // namespace matr

#endif
