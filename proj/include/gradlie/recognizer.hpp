#ifndef GRADLIE_RECOGNIZER_HPP
#define GRADLIE_RECOGNIZER_HPP

#include <optional>
#include <string>
#include <vector>

#include "gradlie/fplinalg.hpp"
#include "gradlie/graded.hpp"
#include "gradlie/modrep.hpp"

namespace gradlie {

/// Outcome of the four structural checks on a graded algebra: (a) the null
/// component splits into allowed ideal summands, (b) g_{-1} is irreducible
/// over g_0, (c) transitivity, (d) 1-transitivity. Witness fields are filled
/// on failure.
struct HypothesisReport {
  bool a_ok = false, b_ok = false, c_ok = false, d_ok = false;
  std::string a_detail;                  // summand labels, or the failure reason
  std::optional<FpSubspace> b_witness;   // proper invariant subspace of g_{-1}
  std::optional<Vec> c_witness;          // nonzero x in g_{>=0} killing g_{-1}
  std::optional<Vec> d_witness;          // nonzero x in g_{<=0} killing g_1
  bool pass() const { return a_ok && b_ok && c_ok && d_ok; }
};
HypothesisReport check_hypotheses(const GradedLieAlgebra& G);

/// Kind of the bracket of a highest-primitive vector of g_{-1} against a
/// lowest-primitive vector of g_1: inside the torus, or a root vector e_{-a}
/// with a positive (resp. negative) relative to the chosen system.
enum class BracketKind { Toral, PositiveRoot, NegativeRoot };
std::string bracket_kind_name(BracketKind k);

/// Isomorphism-class signature of a graded algebra: depth/height, the
/// per-degree dimension profile, the labeled null-component summands, the
/// primitive weights of g_{-1} in fundamental-weight coordinates (quotiented
/// by base relabeling), the bracket kind, and the restrictedness flag.
struct Fingerprint {
  u32 p = 0;
  int q = 0, r = 0;
  std::vector<std::size_t> dims;         // degrees -q .. r
  std::vector<std::string> g0_ideals;    // sorted labels
  std::vector<Vec> lambda;               // canonical fundamental-coordinate tuples
  BracketKind bracket_kind = BracketKind::Toral;
  bool restricted = true;

  bool operator==(const Fingerprint& o) const = default;
};
/// Computes the signature; requires the hypotheses to hold (throws the
/// underlying module/weight errors otherwise). The seed steers the internal
/// torus search only; the result is independent of it.
Fingerprint fingerprint(const GradedLieAlgebra& G, u32 seed = 1);

struct CatalogEntry {
  std::string label;
  Fingerprint fp;
};
/// All reference algebras of dimension <= cap at the given p, fingerprinted:
/// classical standard gradings (one node per diagram symmetry class,
/// including the quotient shapes when p divides the rank plus one), the
/// W/S/S1/CS/H/H2/CH/K/K1 series, and at p = 5 the five-block exceptional
/// family, each with its natural grading and - where the result still passes
/// the hypothesis checks - the reversed grading.
std::vector<CatalogEntry> build_catalog(u32 p, u32 cap = 256);
/// Pairs of distinct entries sharing a fingerprint; empty on a sound catalog.
std::vector<std::string> catalog_collisions(const std::vector<CatalogEntry>& entries);

enum class RecognitionStatus { Match, HypothesesFail, Unrecognized };
struct RecognitionResult {
  RecognitionStatus status = RecognitionStatus::Unrecognized;
  std::string label;         // valid when status == Match
  HypothesisReport report;   // valid unless the grading itself was rejected
  std::string message;
};
/// Checks the hypotheses, fingerprints, and looks the result up in the
/// catalog. cap (when nonzero) is used only to word the failure message.
RecognitionResult recognize(const GradedLieAlgebra& G, const std::vector<CatalogEntry>& catalog,
                            u32 cap = 0);
/// Convenience: builds the catalog for G's characteristic first.
RecognitionResult recognize(const GradedLieAlgebra& G, u32 cap = 256);

/// Same algebra with all degrees negated.
GradedLieAlgebra reverse_grading(const GradedLieAlgebra& G);

/// A different presentation of the same graded algebra: the basis is
/// shuffled, rescaled, and mixed by a product of exponentials of nilpotent
/// degree-zero inner derivations; the structure table is recomputed in the
/// new basis.
GradedLieAlgebra conjugated_presentation(const GradedLieAlgebra& G, u32 seed);

}  // namespace gradlie

#endif
