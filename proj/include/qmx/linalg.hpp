#pragma once

#include <cstddef>
#include <vector>

#include "qmx/rational.hpp"

namespace qmx::linalg {

using IntRow = std::vector<Integer>;

/// A row of an echelon form together with the combination of input rows that
/// produced it.
struct EchelonRow {
  int pivot = -1;          ///< first nonzero column
  IntRow entries;          ///< the reduced row (primitive)
  IntRow combination;      ///< coefficients on the input rows
};

struct Echelon {
  std::vector<EchelonRow> rows;       ///< pivot rows, strictly increasing pivots
  std::vector<EchelonRow> null_rows;  ///< rows that vanished on every column
  std::size_t columns = 0;
};

/// Fraction-free row echelon form: integer row operations
/// r <- p*r - m*pivot followed by division by the row content. Columns are
/// scanned left to right; the pivot is the first remaining input row (by
/// index) with a nonzero entry, so certificates are reproducible.
Echelon echelon(const std::vector<IntRow>& rows);

/// Clears pivot columns above each pivot (still fraction-free).
void back_substitute(Echelon& e);

/// Scales a rational row to a primitive integer row with the same direction.
IntRow to_primitive_integer_row(const std::vector<Rational>& row);

}  // namespace qmx::linalg
