#pragma once

// The formal reality-preserving embedding of u(2,H) into Laurent series over
// the Weyl algebra, with the square root replaced by the partial sum S_ell,
// and its classical (Poisson) counterpart with phases fixed to zero.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sphere7/lie_u2h.hpp"
#include "sphere7/weyl.hpp"

namespace sphere7::weyl {

using QuantumGenerators = std::array<LaurentElement, lie::kDim>;
using ClassicalGenerators = std::array<ClassicalLaurent, lie::kDim>;

// Indexed by the spinor basis of lie_u2h.
QuantumGenerators embedded_generators(int ell);
ClassicalGenerators classical_generators(int ell);

// Sum of x_a times generator a; x must be in the spinor basis.
LaurentElement embed(const lie::LieElement& x, const QuantumGenerators& g);
ClassicalLaurent embed(const lie::LieElement& x, const ClassicalGenerators& g);

struct BracketResidual {
  int a = 0;
  int b = 0;
  std::optional<int> min_grade;  // empty: zero through the cap
  bool exact() const { return !min_grade.has_value(); }
  std::string pair_name() const;
};

struct EmbeddingReport {
  int ell = 0;
  int cap = 0;
  std::vector<BracketResidual> pairs;  // 45 entries, a < b

  const BracketResidual& pair(int a, int b) const;
  // Smallest residual grade over all pairs, empty if every pair closes.
  std::optional<int> worst_grade() const;
};

inline int default_grade_cap(int ell) { return 2 * ell + 4; }

// [X_a, X_b] - X_{[a,b]} for the 45 unordered pairs. threads <= 1 runs serially.
EmbeddingReport verify_embedding(int ell, int cap, int threads = 1);
// {X_a, X_b} + i X_{[a,b]} with the classical generators.
EmbeddingReport verify_classical(int ell, int cap, int threads = 1);

// True when dagger(X_a) equals the embedding of the Lie-algebra dagger of
// generator a, for every a.
bool verify_reality(int ell);

// Generator a uses the square-root partial sum.
bool uses_square_root(int spinor_index);

}  // namespace sphere7::weyl
