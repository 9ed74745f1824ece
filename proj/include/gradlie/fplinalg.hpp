#ifndef GRADLIE_FPLINALG_HPP
#define GRADLIE_FPLINALG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace gradlie {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

/// Coordinate vector over F_p; entries are residues in {0,...,p-1}.
using Vec = std::vector<u32>;

/// Throws std::invalid_argument unless p is a prime >= 5.
void check_modulus(u32 p);

inline u32 fp_add(u32 a, u32 b, u32 p) { u32 s = a + b; return s >= p ? s - p : s; }
inline u32 fp_sub(u32 a, u32 b, u32 p) { return a >= b ? a - b : a + p - b; }
inline u32 fp_neg(u32 a, u32 p) { return a == 0 ? 0 : p - a; }
inline u32 fp_mul(u32 a, u32 b, u32 p) { return static_cast<u32>((u64)a * b % p); }
u32 fp_pow(u32 a, u64 e, u32 p);
u32 fp_inv(u32 a, u32 p);

Vec vec_add(const Vec& a, const Vec& b, u32 p);
Vec vec_scale(const Vec& a, u32 c, u32 p);
/// a += c*b
void vec_axpy(Vec& a, u32 c, const Vec& b, u32 p);
bool vec_is_zero(const Vec& a);
std::size_t vec_nnz(const Vec& a);

/// Dense matrix over F_p, row major.
struct FpMatrix {
  u32 p = 0;
  std::size_t rows = 0, cols = 0;
  std::vector<u32> a;

  FpMatrix() = default;
  FpMatrix(u32 p_, std::size_t r, std::size_t c) : p(p_), rows(r), cols(c), a(r * c, 0) {}

  u32& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  u32 at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
  Vec row(std::size_t r) const { return Vec(a.begin() + r * cols, a.begin() + (r + 1) * cols); }
  void set_row(std::size_t r, const Vec& v);

  static FpMatrix identity(u32 p, std::size_t n);
  static FpMatrix from_rows(u32 p, std::size_t cols, const std::vector<Vec>& rows);

  FpMatrix mul(const FpMatrix& o) const;
  FpMatrix transpose() const;
  /// Matrix-vector product M*x.
  Vec apply(const Vec& x) const;
  FpMatrix pow(u64 e) const;
  bool is_zero() const;

  bool operator==(const FpMatrix& o) const { return p == o.p && rows == o.rows && cols == o.cols && a == o.a; }
};

/// Sparse matrix: per-row list of (col, coeff) terms, coeff nonzero.
struct SparseMat {
  u32 p = 0;
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<std::pair<u32, u32>>> row_terms;

  SparseMat() = default;
  SparseMat(u32 p_, std::size_t r, std::size_t c) : p(p_), rows(r), cols(c), row_terms(r) {}

  void add(std::size_t r, std::size_t c, u32 coeff);
  Vec apply(const Vec& x) const;
  FpMatrix to_dense() const;
  std::size_t nnz() const;
};

/// In-place reduced row echelon form; returns the rank. Zero rows are dropped.
std::size_t echelonize(FpMatrix& M);

/// Incrementally maintained reduced echelon basis of a subspace.
class EchelonBuilder {
 public:
  EchelonBuilder(u32 p, std::size_t ambient);

  /// Reduces v against the current basis and adjoins the residue if nonzero.
  /// Returns true when the rank grew.
  bool insert(Vec v);
  /// Residue of v modulo the current row space.
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const { return vec_is_zero(reduce(v)); }
  std::size_t rank() const { return rows_.size(); }
  std::size_t ambient() const { return ambient_; }
  bool full() const { return rows_.size() == ambient_; }
  const std::vector<Vec>& rows() const { return rows_; }

 private:
  u32 p_;
  std::size_t ambient_;
  std::vector<Vec> rows_;          // RREF invariant, unsorted
  std::vector<int> pivot_row_;     // per column: row index or -1
  friend struct FpSubspace;
};

/// Subspace of F_p^n carried by its canonical reduced-echelon basis;
/// equality of subspaces is equality of representations.
struct FpSubspace {
  u32 p = 0;
  std::size_t ambient = 0;
  FpMatrix basis;                   // canonical RREF, rows ordered by pivot
  std::vector<std::size_t> pivots;  // pivot column per basis row

  static FpSubspace zero(u32 p, std::size_t ambient);
  static FpSubspace full_space(u32 p, std::size_t ambient);
  static FpSubspace span(u32 p, std::size_t ambient, const std::vector<Vec>& gens);
  static FpSubspace from_builder(const EchelonBuilder& b);

  std::size_t dim() const { return basis.rows; }
  bool is_zero() const { return basis.rows == 0; }
  Vec basis_row(std::size_t i) const { return basis.row(i); }
  std::vector<Vec> basis_rows() const;

  /// Residue of v modulo the subspace (zero iff contained).
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const;
  bool contains(const FpSubspace& o) const;
  /// Coordinates of v in the basis rows, when v lies in the subspace.
  std::optional<Vec> coordinates(const Vec& v) const;

  bool operator==(const FpSubspace& o) const { return ambient == o.ambient && basis == o.basis; }
  bool operator!=(const FpSubspace& o) const { return !(*this == o); }
};

FpSubspace kernel(const FpMatrix& M);
FpSubspace subspace_sum(const FpSubspace& A, const FpSubspace& B);
FpSubspace subspace_intersect(const FpSubspace& A, const FpSubspace& B);
/// Coset representatives completing B inside A; requires B contained in A.
std::vector<Vec> quotient_transversal(const FpSubspace& A, const FpSubspace& B);
/// One solution x of M*x = b, if any.
std::optional<Vec> solve(const FpMatrix& M, const Vec& b);
/// Inverse of a square matrix, if invertible.
std::optional<FpMatrix> inverse(const FpMatrix& M);

}  // namespace gradlie

#endif
