#ifndef GRADLIE_CLASSICAL_HPP
#define GRADLIE_CLASSICAL_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradlie/graded.hpp"
#include "gradlie/liecore.hpp"
#include "gradlie/rootsystem.hpp"

namespace gradlie {

enum class Variant { Simple, Sl, Gl, Pgl, Psl };

/// A root-system Lie algebra over F_p on the basis {e_alpha} + {h_i}
/// (+ one extra diagonal element for the Gl variant), with integral
/// structure constants fixed by the extraspecial-pair sign convention and
/// reduced mod p at the end. For the quotient variants (Pgl, Psl) the basis
/// is a coset transversal of the parent algebra.
struct ChevalleyAlgebra {
  RootDatum datum;
  u32 p = 0;
  Variant variant = Variant::Simple;
  LieAlgebraFp alg;
  /// Per basis index: the root it carries, or nullopt for toral elements.
  std::vector<std::optional<u32>> basis_root;
};

/// Builds the algebra; requires p >= 5 and restricts sl/gl/pgl/psl to type A
/// (pgl and psl additionally to p | rank+1, where they differ from gl/sl).
ChevalleyAlgebra chevalley_algebra(const RootDatum& datum, u32 p, Variant variant);

/// e_alpha -> 0, toral basis -> itself; verified against the adjoint p-th
/// power condition (throws std::logic_error on failure).
PMap standard_pmap(const ChevalleyAlgebra& C);

/// Grading by the coefficient of the k-th simple root (k is 1-based);
/// toral elements sit in degree 0.
GradedLieAlgebra standard_grading(const ChevalleyAlgebra& C, u32 k);

struct MillsSeligmanReport {
  bool perfect = false;          // [L,L] = L
  bool centerless = false;       // center 0
  bool decomposition = false;    // joint eigenspaces of H fill L
  bool pairing_lines = false;    // dim [L^a, L^-a] = 1 for each root a
  bool no_full_line = false;     // no full F_p-line of present weights
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};
/// Checks the direct-sum-of-classical-simples axioms against a candidate
/// Cartan subalgebra H; throws std::invalid_argument when H is not an
/// abelian self-normalizing subalgebra.
MillsSeligmanReport mills_seligman(const LieAlgebraFp& L, const FpSubspace& H);

struct NotNilpotent : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAutomorphism : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// exp(ad x) = sum_{i<p} (ad x)^i / i!. Throws NotNilpotent when
/// (ad x)^p != 0 and NotAutomorphism when the result fails multiplicativity
/// on some basis pair.
FpMatrix exp_ad(const Vec& x, const LieAlgebraFp& L);

}  // namespace gradlie

#endif
