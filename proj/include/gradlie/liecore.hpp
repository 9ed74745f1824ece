#ifndef GRADLIE_LIECORE_HPP
#define GRADLIE_LIECORE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gradlie/fplinalg.hpp"

namespace gradlie {

/// Expansion of a bracket in the basis: list of (basis index, coefficient).
using Terms = std::vector<std::pair<u32, u32>>;

/// Lie algebra over F_p given by a sparse structure-constant table on a
/// labeled basis. Only pairs i < j are stored; [b_j, b_i] = -[b_i, b_j] and
/// [b_i, b_i] = 0 are implied. The Jacobi identity is a property to verify
/// (check_structure), not a construction invariant.
struct LieAlgebraFp {
  u32 p = 0;
  u32 dim = 0;
  std::vector<std::string> labels;
  std::unordered_map<u64, Terms> table;

  LieAlgebraFp() = default;
  LieAlgebraFp(u32 p_, u32 dim_);

  u64 key(u32 i, u32 j) const { return (u64)i * dim + j; }
  /// Sets [b_i, b_j]; accepts either order (negating as needed), drops zero
  /// coefficients, merges duplicates, sorts terms by basis index.
  void set_bracket(u32 i, u32 j, Terms t);
  const Terms* find_terms(u32 i, u32 j) const;  // requires i < j; null if absent

  Vec zero_vec() const { return Vec(dim, 0); }
  Vec basis_vec(u32 i) const;

  Vec bracket_basis(u32 i, u32 j) const;
  Vec bracket(const Vec& x, const Vec& y) const;
  /// Matrix of ad(x): column j holds [x, b_j].
  SparseMat ad(const Vec& x) const;
  /// Columns of ad(x) as sparse term lists.
  std::vector<Terms> ad_columns(const Vec& x) const;
  std::size_t table_nnz() const;
};

struct StructureReport {
  std::vector<std::array<u32, 3>> jacobi_failures;  // capped listing of (i,j,k)
  bool truncated = false;
  bool clean() const { return jacobi_failures.empty(); }
};

/// Sweeps all basis triples for Jacobi violations.
StructureReport check_structure(const LieAlgebraFp& L, std::size_t max_failures = 16);

/// span{[a,b] : a in basis(A), b in basis(B)}
FpSubspace product_space(const FpSubspace& A, const FpSubspace& B, const LieAlgebraFp& L);
/// Smallest ideal containing S, by saturation under bracketing with L.
FpSubspace ideal_generated(const FpSubspace& S, const LieAlgebraFp& L);
FpSubspace ideal_generated(const Vec& v, const LieAlgebraFp& L);

/// {x in X : [x, v] in W for every v in V}.
FpSubspace bracket_preimage(const FpSubspace& X, const FpSubspace& V, const FpSubspace& W,
                            const LieAlgebraFp& L);

/// L = L^(0) >= L^(1) >= ... until stabilization (last repeated entry dropped).
std::vector<FpSubspace> derived_series(const LieAlgebraFp& L);
FpSubspace center(const LieAlgebraFp& L);
FpSubspace centralizer(const FpSubspace& S, const LieAlgebraFp& L);

/// Simplicity via ideal closures: [L,L] = L, trivial center, and no proper
/// nonzero ideal among closures of basis vectors and of kernel vectors of
/// ad(b_i) restricted to eigenspaces of a toral element; exhaustive over all
/// vectors when dim <= 4.
bool is_simple(const LieAlgebraFp& L);

struct PPowerResult {
  enum class Status { Ok, NotInner, Ambiguous };
  Status status;
  Vec y;  // valid when status == Ok
};
/// Solves ad(y) = (ad x)^p for y. Ambiguous when the center is nonzero (the
/// solution would not be unique); NotInner when (ad x)^p is not inner.
PPowerResult adjoint_p_power(const Vec& x, const LieAlgebraFp& L);

/// [p]-map stored on basis images only.
struct PMap {
  bool present = false;
  std::vector<Vec> images;
};
/// The canonical [p]-map of a centerless algebra, when every basis power is
/// inner.
std::optional<PMap> canonical_pmap(const LieAlgebraFp& L);
/// Checks ad(b_i^[p]) = (ad b_i)^p for all basis vectors.
bool verify_pmap(const LieAlgebraFp& L, const PMap& pm);

/// Structure table of a bracket-closed subspace on its canonical basis.
/// Throws if S is not closed under the bracket.
LieAlgebraFp subalgebra_table(const FpSubspace& S, const LieAlgebraFp& L,
                              std::vector<std::string> labels = {});

/// Quotient L/I materialized on a coset-transversal basis, with the
/// projection map recorded.
struct QuotientAlgebra {
  LieAlgebraFp alg;
  FpSubspace ideal;
  std::vector<Vec> transversal;  // lifts of the quotient basis
  FpMatrix proj;                 // quotient coordinates of each ambient basis vector
  Vec project(const Vec& v) const { return proj.apply(v); }
};
QuotientAlgebra quotient_algebra(const LieAlgebraFp& L, const FpSubspace& I);

}  // namespace gradlie

#endif
