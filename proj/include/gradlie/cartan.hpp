#ifndef GRADLIE_CARTAN_HPP
#define GRADLIE_CARTAN_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gradlie/graded.hpp"
#include "gradlie/liecore.hpp"

namespace gradlie {

/// Raised when a requested construction would exceed the dimension cap.
struct SizeCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr u32 kDefaultDimCap = 512;

/// Truncated divided power algebra on m variables: basis monomials x^(a)
/// with 0 <= a_i < p^{n_i}, multiplication x^(a) x^(b) = C(a+b, a) x^(a+b)
/// with the binomial evaluated per coordinate by Lucas' rule, and the product
/// zero whenever some a_i + b_i reaches p^{n_i}. Monomials are ordered
/// lexicographically on exponent tuples.
struct DividedPowerAlgebra {
  u32 p = 0, m = 0;
  std::vector<u32> n;
  std::vector<u32> bound;   // bound[i] = p^{n_i}
  std::vector<u32> stride;  // lex order: stride[m-1] = 1
  u32 dim = 0;              // product of the bounds

  u32 index(const std::vector<u32>& a) const;
  std::vector<u32> exponents(u32 idx) const;
  u32 total_degree(u32 idx) const;
  /// Exponent tuple with every entry maximal (p^{n_i} - 1).
  std::vector<u32> top_exponents() const;
  std::string mono_name(u32 idx) const;
};
DividedPowerAlgebra divided_power_algebra(u32 m, const std::vector<u32>& n, u32 p,
                                          u32 cap = kDefaultDimCap);

/// C(c, d) mod p by Lucas' digit rule.
u32 lucas_binom(u64 c, u64 d, u32 p);

/// x^(a) * x^(b) -> (coefficient mod p, exponent tuple); the coefficient is 0
/// when the product vanishes (range overflow or Lucas).
std::pair<u32, std::vector<u32>> dp_multiply(const std::vector<u32>& a,
                                             const std::vector<u32>& b,
                                             const DividedPowerAlgebra& O);
/// Products and partial derivatives of general elements (coordinate vectors
/// over the monomial basis).
Vec dp_mul(const DividedPowerAlgebra& O, const Vec& f, const Vec& g);
Vec dp_derive(const DividedPowerAlgebra& O, u32 i, const Vec& f);

/// W(m;n): the derivations of O(m;n), with basis x^(a)D_i (index =
/// monomial_index * m + i) graded by |a| - 1.
struct WittAlgebra {
  DividedPowerAlgebra O;
  GradedLieAlgebra g;
  u32 index(u32 mono, u32 i) const { return mono * O.m + i; }
};
WittAlgebra build_witt(u32 m, const std::vector<u32>& n, u32 p, u32 cap = kDefaultDimCap);
GradedLieAlgebra build_W(u32 m, const std::vector<u32>& n, u32 p, u32 cap = kDefaultDimCap);

/// div(sum f_i D_i) = sum D_i(f_i), as an element of O.
Vec divergence(const WittAlgebra& W, const Vec& D);
/// D(f) for D in W coordinates and f in O coordinates.
Vec apply_derivation(const WittAlgebra& W, const Vec& D, const Vec& f);
/// D_{i,j}(f) = D_j(f) D_i - D_i(f) D_j (divergence-free by construction).
Vec d_ij(const WittAlgebra& W, u32 i, u32 j, const Vec& f);
/// The degree derivation sum_j x_j^(1) D_j, acting on W_k as the scalar k.
Vec degree_derivation(const WittAlgebra& W);
/// f * degree_derivation, the elements spanning the sharp submodules.
Vec f_degree_derivation(const WittAlgebra& W, const Vec& f);

enum class CartanFamily { W, S, S1, CS, H, H2, CH, K, K1 };
std::string family_name(CartanFamily f);

/// Special series inside W(m;n), m >= 3: S = ker(div), S1 = [S,S] (simple),
/// CS = S + degree derivation.
GradedLieAlgebra build_S(u32 m, const std::vector<u32>& n, u32 p,
                         CartanFamily level = CartanFamily::S1, u32 cap = kDefaultDimCap);

/// {f,g} = sum_{i<=m} D_i(f)D_{i'}(g) - D_{i'}(f)D_i(g) on O(2m;n).
Vec poisson_bracket(const DividedPowerAlgebra& O, const Vec& f, const Vec& g);
/// D_H(f) = sum_j sigma(j) D_j(f) D_{j'}, in W(2m;n) coordinates.
Vec hamiltonian_derivation(const WittAlgebra& W, const Vec& f);

/// Hamiltonian series on an even variable count: H = the derivations
/// sum f_i D_i with sigma(j')D_i(f_{j'}) = sigma(i')D_j(f_{i'}) for all i,j;
/// H2 = its second derived algebra, built directly on the basis D_H(x^(a)),
/// a distinct from 0 and from the top tuple, with the bracket evaluated
/// through the Poisson bracket on O (the ambient W is never materialized);
/// CH = H + degree derivation.
GradedLieAlgebra build_H(u32 two_m, const std::vector<u32>& n, u32 p,
                         CartanFamily level = CartanFamily::H2, u32 cap = kDefaultDimCap);

/// <f,g> = Delta(f)D_{2m+1}(g) - Delta(g)D_{2m+1}(f) + {f,g}, with
/// Delta(f) = 2f - sum_{j<=2m} x_j^(1)D_j(f); the contact bracket on O(2m+1;n).
Vec contact_bracket(const DividedPowerAlgebra& O, const Vec& f, const Vec& g);

/// Contact series on an odd variable count 2m+1: basis D_K(x^(a)) indexed by
/// the exponent tuple, bracket through <.,.>, graded by |a| + a_{2m+1} - 2
/// (depth two). K1 = [K,K]: equal to K unless 2m+4 = 0 mod p, in which case
/// the top tuple is excluded.
GradedLieAlgebra build_K(u32 vars, const std::vector<u32>& n, u32 p,
                         CartanFamily level = CartanFamily::K, u32 cap = kDefaultDimCap);

enum class SharpDaggerRelation { DirectSum, Chain };
struct SharpDaggerDecomposition {
  FpSubspace sharp;   // {f * degree_derivation : deg f = ell}
  FpSubspace dagger;  // divergence-free part of the degree-ell component
  SharpDaggerRelation relation;
};
/// Splits W_ell into its two canonical g_0-submodules: a direct sum when
/// m + ell is nonzero mod p, otherwise the chain sharp < dagger < W_ell.
/// Requires m >= 2 and 0 <= ell <= p-2.
SharpDaggerDecomposition sharp_dagger_decomposition(const WittAlgebra& W, u32 ell);

}  // namespace gradlie

#endif
