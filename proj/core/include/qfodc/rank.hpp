#pragma once

#include <cstddef>
#include <vector>

#include "qfodc/cyclo.hpp"
#include "qfodc/matrix.hpp"

namespace qfodc {

struct RankCertificate {
  std::size_t rank = 0;
  // Independent rows, earliest first, and columns on which they are invertible.
  std::vector<std::size_t> pivot_rows;
  std::vector<std::size_t> pivot_cols;
  // True when the modular profile failed exact confirmation and full
  // fraction-free elimination decided the rank instead.
  bool fallback = false;
};

// Exact rank. A modular specialization proposes pivots; every dependent row is
// then verified exactly with cleared denominators before the rank is returned.
RankCertificate certified_rank(const Matrix<Cyclo>& M);

// Decides exactly which target rows lie outside span(basis rows).
struct SpanSolution {
  bool all_inside = true;
  std::vector<std::size_t> outside;
};
SpanSolution span_membership(const Matrix<Cyclo>& basis, const Matrix<Cyclo>& targets);

Matrix<Cyclo> stack_rows(const Matrix<Cyclo>& a, const Matrix<Cyclo>& b);

}  // namespace qfodc
