#ifndef GRADLIE_GRADED_HPP
#define GRADLIE_GRADED_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradlie/fplinalg.hpp"
#include "gradlie/liecore.hpp"

namespace gradlie {

/// Raised when an operation's structural preconditions fail; the message
/// names the first failing condition.
struct HypothesesNotMet : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A Lie algebra whose basis vectors each carry an integer degree, so that
/// the components g_j are coordinate subspaces. Compatibility of the table
/// with the degrees is a property to verify (check_grading), not an
/// invariant of construction.
struct GradedLieAlgebra {
  LieAlgebraFp alg;
  std::vector<int> degree;  // one entry per basis index

  GradedLieAlgebra() = default;
  GradedLieAlgebra(LieAlgebraFp a, std::vector<int> deg);

  int min_degree() const;  // 0 when the algebra is zero
  int max_degree() const;
  /// Depth q: negative of the lowest degree present (0 if none negative).
  int depth() const { return min_degree() < 0 ? -min_degree() : 0; }
  /// Height r: highest degree present (0 if none positive).
  int height() const { return max_degree() > 0 ? max_degree() : 0; }

  std::vector<u32> indices_of_degree(int j) const;
  /// Coordinate subspace g_j.
  FpSubspace component(int j) const;
  /// Span of the components with degree in [lo, hi].
  FpSubspace degree_range(int lo, int hi) const;
  FpSubspace negative_part() const { return degree_range(min_degree(), -1); }
  FpSubspace positive_part() const { return degree_range(1, max_degree()); }

  /// Degree of a homogeneous vector; nullopt for zero or mixed vectors.
  std::optional<int> degree_of(const Vec& v) const;
};

struct GradingReport {
  std::vector<std::array<u32, 2>> violations;  // basis pairs whose bracket is not homogeneous
  int depth = 0, height = 0;
  bool clean() const { return violations.empty(); }
};
GradingReport check_grading(const GradedLieAlgebra& G);

/// Transitivity: for every j >= 0, no nonzero x in g_j kills all of g_{-1}.
bool check_transitivity(const GradedLieAlgebra& G);
std::optional<Vec> transitivity_witness(const GradedLieAlgebra& G);
/// 1-transitivity: for every j <= 0, no nonzero x in g_j kills all of g_1.
bool check_one_transitivity(const GradedLieAlgebra& G);
std::optional<Vec> one_transitivity_witness(const GradedLieAlgebra& G);

/// Largest ideal reachable by the fixpoint M^{i+1} = {x in g_- : [x, g_+]
/// contained in M^i}; zero exactly on well-behaved inputs (always zero when
/// 1-transitive).
FpSubspace weisfeiler_radical(const GradedLieAlgebra& G);

/// Quotient by a graded ideal, with the grading carried over to the coset
/// transversal basis.
GradedLieAlgebra graded_quotient(const GradedLieAlgebra& G, const FpSubspace& I);

struct MinimalIdealResult {
  FpSubspace ideal;
  int top_degree;  // highest degree with a nonzero component; equals r or r-1
};
/// The unique minimal ideal, computed as the ideal closure of g_{-q}.
/// Requires: transitive, zero radical, negative part generated by g_{-1},
/// and g_{-1} irreducible under g_0; throws HypothesesNotMet otherwise.
MinimalIdealResult minimal_ideal(const GradedLieAlgebra& G);

/// Depth-one quotient built from a nonzero g_0-submodule V of g_{-t} or of
/// g_t. Collects the components generated by V on its side together with
/// every component of degree a multiple of t on the other side, quotients by
/// the annihilator chain of V, and regrades by degree/t — with the grading
/// reversed when V is positive, so the result always has V's image in
/// degree -1. The output is verified transitive.
GradedLieAlgebra quotient_construction(const GradedLieAlgebra& G, const FpSubspace& V, int t);

/// Pairwise bracket closure of a spanning set: the subalgebra it generates.
FpSubspace subalgebra_generated(const FpSubspace& S, const LieAlgebraFp& L);

/// Wraps a bracket-closed graded subspace as a GradedLieAlgebra on its own
/// canonical basis (rows of a graded subspace are homogeneous); throws
/// std::invalid_argument when a basis row is not homogeneous.
GradedLieAlgebra graded_subalgebra(const FpSubspace& S, const GradedLieAlgebra& G);

/// Subalgebra generated by g_{-1} + g_0 + g_1, graded by restriction.
GradedLieAlgebra local_subalgebra(const GradedLieAlgebra& G);

struct ScalingCheck {
  int j;
  bool applicable;  // g_{-j} = [g_{-j+1}, g_{-1}] holds
  bool ok;          // when applicable: operator equals j*chi(x)^p * id for every basis x
};
struct PCharacter {
  FpSubspace domain;  // subspace of g_0 (sum of its nonabelian ideal summands)
  Vec chi;            // value on each basis row of the domain
  std::vector<ScalingCheck> scaling;  // j = 2..q
};
struct NotScalar : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// For each basis x of the domain (with p-th power `powers[i]`), finds c with
/// (ad x)^p - ad x^[p] = c * id on g_{-1}; throws NotScalar otherwise. The
/// deeper components are checked against the expected multiple j*c where the
/// generation condition makes that prediction applicable.
PCharacter p_character(const GradedLieAlgebra& G, const FpSubspace& domain,
                       const std::vector<Vec>& powers);
/// Convenience overload: p-th powers solved from (ad x)^p inside the full
/// algebra; throws when a power is not inner or not unique.
PCharacter p_character(const GradedLieAlgebra& G, const FpSubspace& domain);

}  // namespace gradlie

#endif
