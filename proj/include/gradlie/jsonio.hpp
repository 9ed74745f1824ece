#ifndef GRADLIE_JSONIO_HPP
#define GRADLIE_JSONIO_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradlie/graded.hpp"
#include "gradlie/liecore.hpp"

namespace gradlie {

/// Raised on malformed documents; the message names the offending path.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Result of reading a "gradlie/1" document: the algebra plus the degree
/// vector when the document carries one.
struct ParsedAlgebra {
  LieAlgebraFp alg;
  std::optional<std::vector<int>> degree;

  bool graded() const { return degree.has_value(); }
  GradedLieAlgebra graded_algebra() const {
    return GradedLieAlgebra(alg, degree ? *degree : std::vector<int>(alg.dim, 0));
  }
};

/// Reads and validates a document: format tag, prime modulus, index ranges,
/// strictly increasing term lists with nonzero reduced coefficients, no
/// duplicate pairs, and a degree list of matching length when present.
ParsedAlgebra parse_algebra(const std::string& text);

/// Canonical JSON form: sorted keys, table rows ordered by (i, j), terms by
/// basis index. parse followed by serialize reproduces the text bit-exactly.
std::string serialize(const LieAlgebraFp& L);
std::string serialize(const GradedLieAlgebra& G);

}  // namespace gradlie

#endif
