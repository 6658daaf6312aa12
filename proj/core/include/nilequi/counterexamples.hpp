#pragma once

#include "nilequi/cantor.hpp"
#include "nilequi/measure.hpp"

#include <vector>

namespace nilequi {

/// u -> (u, psi(u)) in R^2.
Curve counterexample_curve(int depth = 12);

/// psi_* lambda on R.
MeasureSpec cantor_measure(int depth = 12);

/// psi_* lambda on each of d coordinates.
MeasureSpec product_cantor(int d, int depth = 12);

struct SelfSimilarityReport {
  long long checked = 0;
  long long failures = 0;
  Integer min_residue;
  Integer max_residue;
};

/// self_similarity_residue over u = j / 3^depth in [0, 1/3) and b = 0, 1, 2.
SelfSimilarityReport self_similarity_grid(int depth);

}  // namespace nilequi
