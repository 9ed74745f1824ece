#include "gradlie/fplinalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace gradlie {

void check_modulus(u32 p) {
  if (p < 5) throw std::invalid_argument("modulus must be a prime >= 5");
  for (u32 d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("modulus must be prime");
}

u32 fp_pow(u32 a, u64 e, u32 p) {
  u64 base = a % p, acc = 1;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<u32>(acc);
}

u32 fp_inv(u32 a, u32 p) {
  if (a % p == 0) throw std::domain_error("division by zero in F_p");
  return fp_pow(a, p - 2, p);
}

Vec vec_add(const Vec& a, const Vec& b, u32 p) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = fp_add(a[i], b[i], p);
  return r;
}

Vec vec_scale(const Vec& a, u32 c, u32 p) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = fp_mul(a[i], c, p);
  return r;
}

void vec_axpy(Vec& a, u32 c, const Vec& b, u32 p) {
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] = static_cast<u32>((a[i] + (u64)c * b[i]) % p);
}

bool vec_is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](u32 x) { return x == 0; });
}

std::size_t vec_nnz(const Vec& a) {
  std::size_t n = 0;
  for (u32 x : a) n += (x != 0);
  return n;
}

void FpMatrix::set_row(std::size_t r, const Vec& v) {
  if (v.size() != cols) throw std::invalid_argument("row length mismatch");
  std::copy(v.begin(), v.end(), a.begin() + r * cols);
}

FpMatrix FpMatrix::identity(u32 p, std::size_t n) {
  FpMatrix M(p, n, n);
  for (std::size_t i = 0; i < n; ++i) M.at(i, i) = 1;
  return M;
}

FpMatrix FpMatrix::from_rows(u32 p, std::size_t cols, const std::vector<Vec>& rows) {
  FpMatrix M(p, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) M.set_row(i, rows[i]);
  return M;
}

FpMatrix FpMatrix::mul(const FpMatrix& o) const {
  if (cols != o.rows || p != o.p) throw std::invalid_argument("matrix shape mismatch");
  FpMatrix R(p, rows, o.cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) {
      u32 c = at(i, k);
      if (!c) continue;
      u64 cc = c;
      for (std::size_t j = 0; j < o.cols; ++j)
        R.at(i, j) = static_cast<u32>((R.at(i, j) + cc * o.at(k, j)) % p);
    }
  return R;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix R(p, cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) R.at(j, i) = at(i, j);
  return R;
}

Vec FpMatrix::apply(const Vec& x) const {
  if (x.size() != cols) throw std::invalid_argument("vector length mismatch");
  Vec y(rows, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    u64 acc = 0;
    const u32* r = a.data() + i * cols;
    for (std::size_t j = 0; j < cols; ++j) acc += (u64)r[j] * x[j];
    y[i] = static_cast<u32>(acc % p);
  }
  return y;
}

FpMatrix FpMatrix::pow(u64 e) const {
  if (rows != cols) throw std::invalid_argument("pow needs a square matrix");
  FpMatrix acc = identity(p, rows), base = *this;
  while (e) {
    if (e & 1) acc = acc.mul(base);
    base = base.mul(base);
    e >>= 1;
  }
  return acc;
}

bool FpMatrix::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](u32 x) { return x == 0; });
}

void SparseMat::add(std::size_t r, std::size_t c, u32 coeff) {
  coeff %= p;
  if (!coeff) return;
  auto& terms = row_terms[r];
  for (auto& t : terms)
    if (t.first == c) {
      t.second = fp_add(t.second, coeff, p);
      if (t.second == 0) {
        t = terms.back();
        terms.pop_back();
      }
      return;
    }
  terms.emplace_back(static_cast<u32>(c), coeff);
}

Vec SparseMat::apply(const Vec& x) const {
  if (x.size() != cols) throw std::invalid_argument("vector length mismatch");
  Vec y(rows, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    u64 acc = 0;
    for (auto [c, v] : row_terms[r]) acc += (u64)v * x[c];
    y[r] = static_cast<u32>(acc % p);
  }
  return y;
}

FpMatrix SparseMat::to_dense() const {
  FpMatrix M(p, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (auto [c, v] : row_terms[r]) M.at(r, c) = v;
  return M;
}

std::size_t SparseMat::nnz() const {
  std::size_t n = 0;
  for (auto& t : row_terms) n += t.size();
  return n;
}

EchelonBuilder::EchelonBuilder(u32 p, std::size_t ambient)
    : p_(p), ambient_(ambient), pivot_row_(ambient, -1) {}

Vec EchelonBuilder::reduce(Vec v) const {
  if (v.size() != ambient_) throw std::invalid_argument("vector length mismatch");
  for (std::size_t c = 0; c < ambient_; ++c) {
    u32 x = v[c];
    if (!x) continue;
    int r = pivot_row_[c];
    if (r < 0) continue;
    vec_axpy(v, p_ - x, rows_[static_cast<std::size_t>(r)], p_);
  }
  return v;
}

bool EchelonBuilder::insert(Vec v) {
  v = reduce(std::move(v));
  std::size_t piv = ambient_;
  for (std::size_t c = 0; c < ambient_; ++c)
    if (v[c]) {
      piv = c;
      break;
    }
  if (piv == ambient_) return false;
  u32 inv = fp_inv(v[piv], p_);
  for (auto& x : v) x = fp_mul(x, inv, p_);
  // keep the basis fully reduced: clear the new pivot column above
  for (auto& row : rows_)
    if (row[piv]) vec_axpy(row, p_ - row[piv], v, p_);
  pivot_row_[piv] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(v));
  return true;
}

std::size_t echelonize(FpMatrix& M) {
  EchelonBuilder b(M.p, M.cols);
  for (std::size_t i = 0; i < M.rows; ++i) b.insert(M.row(i));
  FpSubspace s = FpSubspace::from_builder(b);
  M = s.basis;
  return M.rows;
}

FpSubspace FpSubspace::zero(u32 p, std::size_t ambient) {
  FpSubspace s;
  s.p = p;
  s.ambient = ambient;
  s.basis = FpMatrix(p, 0, ambient);
  return s;
}

FpSubspace FpSubspace::full_space(u32 p, std::size_t ambient) {
  FpSubspace s = zero(p, ambient);
  s.basis = FpMatrix::identity(p, ambient);
  s.pivots.resize(ambient);
  for (std::size_t i = 0; i < ambient; ++i) s.pivots[i] = i;
  return s;
}

FpSubspace FpSubspace::span(u32 p, std::size_t ambient, const std::vector<Vec>& gens) {
  EchelonBuilder b(p, ambient);
  for (const auto& g : gens) b.insert(g);
  return from_builder(b);
}

FpSubspace FpSubspace::from_builder(const EchelonBuilder& b) {
  FpSubspace s = zero(b.p_, b.ambient_);
  std::vector<std::size_t> order;
  for (std::size_t c = 0; c < b.ambient_; ++c)
    if (b.pivot_row_[c] >= 0) {
      order.push_back(static_cast<std::size_t>(b.pivot_row_[c]));
      s.pivots.push_back(c);
    }
  s.basis = FpMatrix(b.p_, order.size(), b.ambient_);
  for (std::size_t i = 0; i < order.size(); ++i) s.basis.set_row(i, b.rows_[order[i]]);
  return s;
}

std::vector<Vec> FpSubspace::basis_rows() const {
  std::vector<Vec> r;
  r.reserve(basis.rows);
  for (std::size_t i = 0; i < basis.rows; ++i) r.push_back(basis.row(i));
  return r;
}

Vec FpSubspace::reduce(Vec v) const {
  if (v.size() != ambient) throw std::invalid_argument("vector length mismatch");
  for (std::size_t i = 0; i < basis.rows; ++i) {
    u32 x = v[pivots[i]];
    if (!x) continue;
    const u32* row = basis.a.data() + i * ambient;
    for (std::size_t j = 0; j < ambient; ++j)
      v[j] = static_cast<u32>((v[j] + (u64)(p - x) * row[j]) % p);
  }
  return v;
}

bool FpSubspace::contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

bool FpSubspace::contains(const FpSubspace& o) const {
  for (std::size_t i = 0; i < o.basis.rows; ++i)
    if (!contains(o.basis.row(i))) return false;
  return true;
}

std::optional<Vec> FpSubspace::coordinates(const Vec& v) const {
  Vec coords(basis.rows, 0);
  Vec w = v;
  for (std::size_t i = 0; i < basis.rows; ++i) {
    u32 x = w[pivots[i]];
    coords[i] = x;
    if (!x) continue;
    vec_axpy(w, p - x, basis.row(i), p);
  }
  if (!vec_is_zero(w)) return std::nullopt;
  return coords;
}

FpSubspace kernel(const FpMatrix& M) {
  // RREF of M, then read off the free-column solutions.
  FpMatrix R = M;
  echelonize(R);
  std::vector<int> pivot_of_col(M.cols, -1);
  for (std::size_t i = 0; i < R.rows; ++i)
    for (std::size_t j = 0; j < M.cols; ++j)
      if (R.at(i, j)) {
        pivot_of_col[j] = static_cast<int>(i);
        break;
      }
  EchelonBuilder b(M.p, M.cols);
  for (std::size_t j = 0; j < M.cols; ++j) {
    if (pivot_of_col[j] >= 0) continue;
    Vec v(M.cols, 0);
    v[j] = 1;
    for (std::size_t c = 0; c < M.cols; ++c)
      if (pivot_of_col[c] >= 0) {
        u32 x = R.at(static_cast<std::size_t>(pivot_of_col[c]), j);
        v[c] = fp_neg(x, M.p);
      }
    b.insert(std::move(v));
  }
  return FpSubspace::from_builder(b);
}

FpSubspace subspace_sum(const FpSubspace& A, const FpSubspace& B) {
  if (A.ambient != B.ambient) throw std::invalid_argument("ambient dimension mismatch");
  EchelonBuilder b(A.p, A.ambient);
  for (std::size_t i = 0; i < A.basis.rows; ++i) b.insert(A.basis.row(i));
  for (std::size_t i = 0; i < B.basis.rows; ++i) b.insert(B.basis.row(i));
  return FpSubspace::from_builder(b);
}

FpSubspace subspace_intersect(const FpSubspace& A, const FpSubspace& B) {
  if (A.ambient != B.ambient) throw std::invalid_argument("ambient dimension mismatch");
  // Zassenhaus: echelon the block matrix [A|A ; B|0]; intersection appears in
  // the right block of rows whose left block vanished.
  std::size_t n = A.ambient;
  FpMatrix M(A.p, A.basis.rows + B.basis.rows, 2 * n);
  for (std::size_t i = 0; i < A.basis.rows; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      M.at(i, j) = A.basis.at(i, j);
      M.at(i, n + j) = A.basis.at(i, j);
    }
  for (std::size_t i = 0; i < B.basis.rows; ++i)
    for (std::size_t j = 0; j < n; ++j) M.at(A.basis.rows + i, j) = B.basis.at(i, j);
  echelonize(M);
  EchelonBuilder b(A.p, n);
  for (std::size_t i = 0; i < M.rows; ++i) {
    bool left_zero = true;
    for (std::size_t j = 0; j < n && left_zero; ++j) left_zero = M.at(i, j) == 0;
    if (!left_zero) continue;
    Vec v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = M.at(i, n + j);
    b.insert(std::move(v));
  }
  return FpSubspace::from_builder(b);
}

std::vector<Vec> quotient_transversal(const FpSubspace& A, const FpSubspace& B) {
  if (!A.contains(B)) throw std::invalid_argument("transversal needs B contained in A");
  EchelonBuilder b(A.p, A.ambient);
  for (std::size_t i = 0; i < B.basis.rows; ++i) b.insert(B.basis.row(i));
  std::vector<Vec> reps;
  for (std::size_t i = 0; i < A.basis.rows; ++i) {
    Vec r = A.basis.row(i);
    if (b.insert(r)) reps.push_back(std::move(r));
  }
  return reps;
}

std::optional<Vec> solve(const FpMatrix& M, const Vec& b) {
  if (b.size() != M.rows) throw std::invalid_argument("rhs length mismatch");
  // Echelon the augmented system [M^T rows are not what we want]; work on [M|b].
  FpMatrix A(M.p, M.rows, M.cols + 1);
  for (std::size_t i = 0; i < M.rows; ++i) {
    for (std::size_t j = 0; j < M.cols; ++j) A.at(i, j) = M.at(i, j);
    A.at(i, M.cols) = b[i];
  }
  echelonize(A);
  Vec x(M.cols, 0);
  for (std::size_t i = 0; i < A.rows; ++i) {
    std::size_t piv = M.cols + 1;
    for (std::size_t j = 0; j < M.cols + 1; ++j)
      if (A.at(i, j)) {
        piv = j;
        break;
      }
    if (piv == M.cols) return std::nullopt;  // 0 = 1 row
    if (piv > M.cols) continue;
    x[piv] = A.at(i, M.cols);  // other pivots' columns are clear in RREF
  }
  return x;
}

std::optional<FpMatrix> inverse(const FpMatrix& M) {
  if (M.rows != M.cols) throw std::invalid_argument("inverse needs a square matrix");
  std::size_t n = M.rows;
  FpMatrix A(M.p, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) A.at(i, j) = M.at(i, j);
    A.at(i, n + i) = 1;
  }
  echelonize(A);
  if (A.rows != n) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    if (A.at(i, i) != 1) return std::nullopt;
  FpMatrix R(M.p, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) R.at(i, j) = A.at(i, n + j);
  return R;
}

}  // namespace gradlie
