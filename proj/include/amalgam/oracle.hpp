#pragma once

#include <vector>

#include "amalgam/algebra.hpp"

namespace amalgam {

/// One letter of a word in a free product: the factor index and an
/// ambient element of that factor algebra.
struct Letter {
  int factor = 0;
  CMat element;
};
using Word = std::vector<Letter>;

/// Registered family of algebras with conditional expectations onto a
/// common coefficient algebra; the moment engines evaluate mixed
/// moments of words over this family.
class MomentContext {
 public:
  MomentContext(FiniteCStarAlgebra coefficient,
                std::vector<ConditionalExpectation> factors);

  const FiniteCStarAlgebra& coefficient() const { return coefficient_; }
  int num_factors() const { return static_cast<int>(factors_.size()); }
  const ConditionalExpectation& factor(int i) const;

  /// B-valued moment of a word determined by freeness with amalgamation
  /// over B: letters are split into centered part plus expectation, the
  /// expansion is reduced with the bimodule property, and alternating
  /// centered words are assigned expectation zero. Independent of any
  /// Fock-space construction. Words longer than 12 letters are refused.
  CMat recursion_moment(const Word& word) const;

  /// Scalar moment via non-crossing partition summation with free
  /// cumulants per factor (Moebius inversion on the NC lattice).
  /// Requires scalar coefficients; refuses words longer than 8 letters.
  Complex nc_moment(const Word& word) const;

 private:
  FiniteCStarAlgebra coefficient_;
  std::vector<ConditionalExpectation> factors_;
};

/// All non-crossing partitions of {0, .., n-1}, each partition a list
/// of blocks, each block an increasing list of positions. Deterministic
/// enumeration order.
std::vector<std::vector<std::vector<int>>> non_crossing_partitions(int n);

}  // namespace amalgam
