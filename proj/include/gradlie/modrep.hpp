#ifndef GRADLIE_MODREP_HPP
#define GRADLIE_MODREP_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "gradlie/fplinalg.hpp"
#include "gradlie/liecore.hpp"

namespace gradlie {

/// Action of a subalgebra on an invariant subspace, written out as one matrix
/// per basis element of the acting space, in the coordinates of the module's
/// canonical basis (columns are images of module basis vectors).
struct ModuleAction {
  u32 p = 0;
  FpSubspace module;
  std::vector<FpMatrix> gens;

  std::size_t dim() const { return module.dim(); }
};

/// Restricts the adjoint action of `acting` to `module`; throws if `module`
/// is not invariant under every basis element of `acting`.
ModuleAction restrict_action(const FpSubspace& acting, const FpSubspace& module,
                             const LieAlgebraFp& L);

/// Smallest subspace containing the seed that is invariant under all
/// generator matrices (everything in module coordinates).
FpSubspace spin(const std::vector<FpMatrix>& gens, const Vec& seed, u32 p);
FpSubspace spin(const std::vector<FpMatrix>& gens, const FpSubspace& seed, u32 p);

/// Irreducibility of the module, decided by the Norton singular-element
/// criterion: search for an enveloping-algebra element with one-dimensional
/// kernel, then test the spans generated by its kernel vector and by the
/// kernel vector of its transpose (the dual module). Falls back to spinning
/// every vector when the module is tiny. Throws when undecided.
bool is_irreducible(const ModuleAction& act);
bool is_irreducible(const FpSubspace& acting, const FpSubspace& module, const LieAlgebraFp& L);

/// Composition series of the module under the acting subalgebra: a strictly
/// increasing chain of invariant subspaces (in ambient coordinates) ending at
/// the module itself, built bottom-up by repeatedly adjoining a minimal
/// submodule of the current quotient. Empty for the zero module.
std::vector<FpSubspace> composition_series(const FpSubspace& acting, const FpSubspace& module,
                                           const LieAlgebraFp& L);

/// An abelian subspace of the algebra whose basis elements act
/// diagonalizably, i.e. a torus for weight-space decompositions.
struct ToralSubalgebra {
  FpSubspace carrier;
  std::size_t dim() const { return carrier.dim(); }
};

struct ToralNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finds a maximal torus of the (classical reductive) subalgebra g0: the
/// Fitting null component of a random regular element, accepted once it is
/// abelian and every basis element acts diagonalizably on all of L. Throws
/// ToralNotFound when the retry budget is exhausted.
ToralSubalgebra find_toral(const FpSubspace& g0, const LieAlgebraFp& L, u32 seed = 1);

/// Simultaneous eigenspace decomposition of a t-invariant subspace. Weights
/// are eigenvalue tuples on the fixed basis rows of the torus; spaces are in
/// ambient coordinates. residue_dim counts the part of the module on which
/// the torus acts only by generalized eigenvalues.
struct WeightDecomposition {
  std::vector<Vec> weights;
  std::vector<FpSubspace> spaces;
  std::size_t residue_dim = 0;
  bool semisimple() const { return residue_dim == 0; }
  const FpSubspace* space_of(const Vec& w) const;
};
WeightDecomposition weight_decomposition(const FpSubspace& module, const ToralSubalgebra& t,
                                         const LieAlgebraFp& L);

enum class PrimitiveSign { Plus, Minus };

/// A weight vector killed by the chosen positive (or negative) nilpotent
/// part.
struct PrimitiveVector {
  Vec vector;  // ambient coordinates
  PrimitiveSign sign;
  Vec weight;  // eigenvalue tuple on the torus basis
};

/// All primitive vectors of the module: per weight space, the kernel of the
/// stacked action of n_plus (sign Plus) and of n_minus (sign Minus). It
/// suffices to pass generating sets (e.g. simple root vectors) for the
/// nilpotent parts.
std::vector<PrimitiveVector> primitive_vectors(const FpSubspace& module, const ToralSubalgebra& t,
                                               const FpSubspace& n_plus,
                                               const FpSubspace& n_minus, const LieAlgebraFp& L);

struct RootSpaceNotOneDim : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoPositiveSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Pairing <beta, alpha> of two roots computed from the alpha-string through
/// beta inside the given root set (down-length minus up-length). Both
/// arguments must be nonzero weights of the decomposition.
int root_pairing(const WeightDecomposition& roots, const Vec& beta, const Vec& alpha, u32 p);

/// The matrix <beta_i, alpha_j> over all nonzero weights, in the order they
/// appear in the decomposition. Throws RootSpaceNotOneDim when some nonzero
/// weight space has dimension > 1.
std::vector<std::vector<int>> cartan_integers(const WeightDecomposition& roots, u32 p);

/// A positive system and base extracted from the root set: P with
/// P ⊔ -P = roots and P closed under addition (found by backtracking), the
/// base = members of P that are not sums of two members of P, the Cartan
/// matrix on the base, and the matching Dynkin type ("A2", "G2", ...; empty
/// when no catalog type matches). The base is reordered to the matched
/// type's convention when one is found.
struct RootBase {
  std::vector<Vec> positive;
  std::vector<Vec> base;
  std::vector<std::vector<int>> cartan;
  std::string type;
};
RootBase find_base(const WeightDecomposition& roots, u32 p);

/// Coroots attached to a torus and a list of simple positive root vectors:
/// h_i = [e_i, f_i] scaled so that alpha_i(h_i) = 2, with f_i located in the
/// opposite root space of g0. Weight tuples can then be written in
/// fundamental-weight coordinates.
struct FundamentalWeightFrame {
  ToralSubalgebra t;
  std::vector<Vec> coroot_coords;  // each in t-basis coordinates
};
FundamentalWeightFrame weight_frame(const ToralSubalgebra& t, const std::vector<Vec>& simple_pos,
                                    const FpSubspace& g0, const LieAlgebraFp& L);
/// c_i = weight(h_i) mod p: the coefficient of the i-th fundamental weight.
Vec fundamental_coords(const FundamentalWeightFrame& frame, const Vec& weight, u32 p);

struct NotReductive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One ideal summand of a reductive subalgebra, with a structural label:
/// "abelian", a Dynkin type ("A2"), type plus split central line ("A1+z",
/// covering gl and csp), a perfect central cover ("A4~", covering sl_n with
/// p | n), or type plus outer line ("A4-ext", covering pgl_n).
struct IdealSummand {
  FpSubspace ideal;
  std::string label;
};

/// Splits g0 into its center and minimal noncentral ideals and labels each;
/// a single simple ideal with a complementary one-dimensional center is
/// merged into one "+z" summand. Throws NotReductive when a solvable
/// noncentral piece is detected.
std::vector<IdealSummand> decompose_g0(const FpSubspace& g0, const LieAlgebraFp& L);

}  // namespace gradlie

#endif
