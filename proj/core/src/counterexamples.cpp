#include "nilequi/counterexamples.hpp"

#include "nilequi/errors.hpp"

#include <stdexcept>

namespace nilequi {

Curve counterexample_curve(int depth) { return Curve::cantor(2, 0, 1, depth); }

MeasureSpec cantor_measure(int depth) { return MeasureSpec::cantor(1, 0, depth); }

MeasureSpec product_cantor(int d, int depth) {
  if (d < 1) throw DomainError("product_cantor needs d >= 1");
  std::vector<MeasureSpec> f(static_cast<std::size_t>(d), MeasureSpec::cantor(1, 0, depth));
  return MeasureSpec::product(std::move(f));
}

SelfSimilarityReport self_similarity_grid(int depth) {
  if (depth < 1 || depth > 14) throw DomainError("self-similarity grid depth must be in [1, 14]");
  Integer cells = 1;
  for (int i = 0; i < depth; ++i) cells *= 3;
  SelfSimilarityReport r;
  bool first = true;
  for (Integer j = 0; j * 3 < cells; ++j) {
    Rational u(j, cells);
    u.canonicalize();
    for (int b = 0; b < 3; ++b) {
      ++r.checked;
      try {
        Integer z = self_similarity_residue(u, b);
        if (first || z < r.min_residue) r.min_residue = z;
        if (first || z > r.max_residue) r.max_residue = z;
        first = false;
      } catch (const std::logic_error&) {
        ++r.failures;
      }
    }
  }
  return r;
}

}  // namespace nilequi
