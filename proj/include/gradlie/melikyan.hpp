#ifndef GRADLIE_MELIKYAN_HPP
#define GRADLIE_MELIKYAN_HPP

#include <string>
#include <vector>

#include "gradlie/cartan.hpp"
#include "gradlie/graded.hpp"

namespace gradlie {

/// The 5^{n1+n2+1}-dimensional algebra O(2;n) + W(2;n) + ~W(2;n) with the
/// three-block bracket, graded by deg(D) = 3 deg_W(D), deg(~E) =
/// 3 deg_W(E) + 2, deg(f) = 3 deg_O(f) - 2 (depth three). Basis order:
/// O-block, W-block, ~W-block, each lexicographic on exponents. The bracket
/// formulas make sense for any p but satisfy the Jacobi identity only at
/// p = 5; construction verifies Jacobi when p = 5 and leaves verification to
/// the caller otherwise (negative testing).
struct MelikyanAlgebra {
  u32 p = 5;
  std::vector<u32> n;  // (n1, n2)
  WittAlgebra W;       // the underlying W(2;n), with its function space W.O
  GradedLieAlgebra alg;

  u32 o_index(u32 mono) const { return mono; }
  u32 w_index(u32 widx) const { return W.O.dim + widx; }
  u32 t_index(u32 widx) const { return W.O.dim + W.g.alg.dim + widx; }
};

MelikyanAlgebra build_M(u32 n1, u32 n2, u32 p = 5, u32 cap = kDefaultDimCap);

/// The mod-3 congruence-class blocks of the natural grading.
struct Z3Components {
  FpSubspace zero;       // the W-block (a subalgebra)
  FpSubspace two;        // the ~W-block
  FpSubspace minus_two;  // the O-block
};
Z3Components z3_components(const MelikyanAlgebra& M);

/// Compares the bottom of the natural grading against the short-node grading
/// of the rank-two exceptional algebra: component dimensions (2,1,2,4,2) for
/// degrees -3..1, and the hand-checkable relation table around the elements
/// e1 = x1D2, f1 = x2D1, h1 = x1D1 - x2D2, e0 = x2, f0 = 3~D2, h0 = 3x2D2,
/// xb = x2~D1.
struct G2ComparisonReport {
  std::vector<std::size_t> melikyan_dims;   // dims of M_{-3}..M_1
  std::vector<std::size_t> classical_dims;  // same for the exceptional grading
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};
G2ComparisonReport g2_comparison(const MelikyanAlgebra& M);

}  // namespace gradlie

#endif
