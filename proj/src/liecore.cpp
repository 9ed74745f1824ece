#include "gradlie/liecore.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <stdexcept>

namespace gradlie {

LieAlgebraFp::LieAlgebraFp(u32 p_, u32 dim_) : p(p_), dim(dim_) {
  check_modulus(p_);
  labels.resize(dim);
  for (u32 i = 0; i < dim; ++i) labels[i] = "b" + std::to_string(i);
}

void LieAlgebraFp::set_bracket(u32 i, u32 j, Terms t) {
  if (i >= dim || j >= dim) throw std::invalid_argument("basis index out of range");
  if (i == j) throw std::invalid_argument("diagonal brackets are implicitly zero");
  bool flip = i > j;
  if (flip) std::swap(i, j);
  std::sort(t.begin(), t.end());
  Terms norm;
  for (auto [k, c] : t) {
    c %= p;
    if (flip) c = fp_neg(c, p);
    if (!norm.empty() && norm.back().first == k)
      norm.back().second = fp_add(norm.back().second, c, p);
    else
      norm.emplace_back(k, c);
  }
  norm.erase(std::remove_if(norm.begin(), norm.end(), [](auto& t_) { return t_.second == 0; }),
             norm.end());
  if (norm.empty())
    table.erase(key(i, j));
  else
    table[key(i, j)] = std::move(norm);
}

const Terms* LieAlgebraFp::find_terms(u32 i, u32 j) const {
  auto it = table.find(key(i, j));
  return it == table.end() ? nullptr : &it->second;
}

Vec LieAlgebraFp::basis_vec(u32 i) const {
  Vec v(dim, 0);
  v[i] = 1;
  return v;
}

Vec LieAlgebraFp::bracket_basis(u32 i, u32 j) const {
  Vec v(dim, 0);
  if (i == j) return v;
  bool flip = i > j;
  if (flip) std::swap(i, j);
  if (const Terms* t = find_terms(i, j))
    for (auto [k, c] : *t) v[k] = flip ? fp_neg(c, p) : c;
  return v;
}

Vec LieAlgebraFp::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != dim || y.size() != dim) throw std::invalid_argument("vector length mismatch");
  std::vector<u32> sx, sy;
  for (u32 i = 0; i < dim; ++i) if (x[i]) sx.push_back(i);
  for (u32 j = 0; j < dim; ++j) if (y[j]) sy.push_back(j);
  Vec r(dim, 0);
  for (u32 i : sx)
    for (u32 j : sy) {
      if (i == j) continue;
      u32 a = i, b = j;
      bool flip = a > b;
      if (flip) std::swap(a, b);
      const Terms* t = find_terms(a, b);
      if (!t) continue;
      u32 c = fp_mul(x[i], y[j], p);
      if (flip) c = fp_neg(c, p);
      for (auto [k, ck] : *t) r[k] = static_cast<u32>((r[k] + (u64)c * ck) % p);
    }
  return r;
}

SparseMat LieAlgebraFp::ad(const Vec& x) const {
  SparseMat M(p, dim, dim);
  for (const auto& [ky, terms] : table) {
    u32 i = static_cast<u32>(ky / dim), j = static_cast<u32>(ky % dim);
    // [x, e_j] picks up x_i * terms; [x, e_i] picks up -x_j * terms
    if (x[i])
      for (auto [k, c] : terms) M.add(k, j, fp_mul(x[i], c, p));
    if (x[j])
      for (auto [k, c] : terms) M.add(k, i, fp_mul(x[j], fp_neg(c, p), p));
  }
  return M;
}

std::vector<Terms> LieAlgebraFp::ad_columns(const Vec& x) const {
  std::vector<Terms> cols(dim);
  SparseMat M = ad(x);
  for (u32 r = 0; r < dim; ++r)
    for (auto [c, v] : M.row_terms[r]) cols[c].emplace_back(r, v);
  return cols;
}

std::size_t LieAlgebraFp::table_nnz() const {
  std::size_t n = 0;
  for (auto& [k, t] : table) n += t.size();
  return n;
}

namespace {

// Dense scratch accumulator with a touched-index list, for triple sweeps.
struct Scratch {
  Vec acc;
  std::vector<u32> touched;
  explicit Scratch(u32 dim) : acc(dim, 0) {}
  void add(u32 k, u32 c, u32 p) {
    if (!acc[k]) touched.push_back(k);
    acc[k] = fp_add(acc[k], c, p);
  }
  bool is_zero() const {
    for (u32 k : touched)
      if (acc[k]) return false;
    return true;
  }
  void reset() {
    for (u32 k : touched) acc[k] = 0;
    touched.clear();
  }
};

// acc += coeff * [e_i, e_j]
void accumulate_pair(const LieAlgebraFp& L, Scratch& s, u32 i, u32 j, u32 coeff) {
  if (i == j || coeff == 0) return;
  bool flip = i > j;
  if (flip) std::swap(i, j);
  const Terms* t = L.find_terms(i, j);
  if (!t) return;
  u32 c = flip ? fp_neg(coeff, L.p) : coeff;
  for (auto [k, ck] : *t) s.add(k, fp_mul(c, ck, L.p), L.p);
}

}  // namespace

StructureReport check_structure(const LieAlgebraFp& L, std::size_t max_failures) {
  StructureReport rep;
  Scratch s(L.dim);
  for (u32 i = 0; i < L.dim; ++i)
    for (u32 j = i + 1; j < L.dim; ++j) {
      const Terms* tij = L.find_terms(i, j);
      for (u32 k = j + 1; k < L.dim; ++k) {
        const Terms* tjk = L.find_terms(j, k);
        const Terms* tik = L.find_terms(i, k);
        if (!tij && !tjk && !tik) continue;
        s.reset();
        if (tij)
          for (auto [m, c] : *tij) accumulate_pair(L, s, m, k, c);  // [[i,j],k]
        if (tjk)
          for (auto [m, c] : *tjk) accumulate_pair(L, s, m, i, c);  // [[j,k],i]
        if (tik)  // [[k,i],j] = -[[i,k],j]
          for (auto [m, c] : *tik) accumulate_pair(L, s, m, j, fp_neg(c, L.p));
        if (!s.is_zero()) {
          if (rep.jacobi_failures.size() < max_failures)
            rep.jacobi_failures.push_back({i, j, k});
          else {
            rep.truncated = true;
            return rep;
          }
        }
      }
    }
  return rep;
}

FpSubspace product_space(const FpSubspace& A, const FpSubspace& B, const LieAlgebraFp& L) {
  EchelonBuilder b(L.p, L.dim);
  auto ra = A.basis_rows(), rb = B.basis_rows();
  for (const auto& x : ra) {
    if (b.full()) break;
    for (const auto& y : rb) {
      if (b.full()) break;
      b.insert(L.bracket(x, y));
    }
  }
  return FpSubspace::from_builder(b);
}

FpSubspace ideal_generated(const FpSubspace& S, const LieAlgebraFp& L) {
  EchelonBuilder b(L.p, L.dim);
  std::deque<Vec> queue;
  for (const auto& r : S.basis_rows())
    if (b.insert(r)) queue.push_back(r);
  while (!queue.empty() && !b.full()) {
    Vec v = std::move(queue.front());
    queue.pop_front();
    auto cols = L.ad_columns(v);
    for (u32 j = 0; j < L.dim && !b.full(); ++j) {
      if (cols[j].empty()) continue;
      Vec w(L.dim, 0);
      for (auto [k, c] : cols[j]) w[k] = c;
      if (b.insert(w)) queue.push_back(std::move(w));
    }
  }
  if (b.full()) return FpSubspace::full_space(L.p, L.dim);
  return FpSubspace::from_builder(b);
}

FpSubspace ideal_generated(const Vec& v, const LieAlgebraFp& L) {
  return ideal_generated(FpSubspace::span(L.p, L.dim, {v}), L);
}

FpSubspace bracket_preimage(const FpSubspace& X, const FpSubspace& V, const FpSubspace& W,
                            const LieAlgebraFp& L) {
  const std::size_t k = X.dim();
  if (k == 0 || V.dim() == 0) return X;
  // Condition on coefficients c of x = sum c_i x_i: for each basis v of V,
  // sum_i c_i * reduce_W([x_i, v]) = 0 (reduction modulo W is linear).
  EchelonBuilder system(L.p, k);
  for (std::size_t vi = 0; vi < V.dim() && !system.full(); ++vi) {
    Vec v = V.basis_row(vi);
    std::vector<Vec> residue(k);
    for (std::size_t i = 0; i < k; ++i) residue[i] = W.reduce(L.bracket(X.basis_row(i), v));
    for (std::size_t m = 0; m < L.dim && !system.full(); ++m) {
      Vec row(k, 0);
      bool nonzero = false;
      for (std::size_t i = 0; i < k; ++i) {
        row[i] = residue[i][m];
        nonzero = nonzero || row[i] != 0;
      }
      if (nonzero) system.insert(std::move(row));
    }
  }
  if (system.full()) return FpSubspace::zero(L.p, L.dim);
  FpSubspace coeffs = kernel(FpMatrix::from_rows(L.p, k, system.rows()));
  std::vector<Vec> gens;
  for (std::size_t c = 0; c < coeffs.dim(); ++c) {
    Vec co = coeffs.basis_row(c);
    Vec g = Vec(L.dim, 0);
    for (std::size_t i = 0; i < k; ++i)
      if (co[i]) vec_axpy(g, co[i], X.basis_row(i), L.p);
    gens.push_back(std::move(g));
  }
  return FpSubspace::span(L.p, L.dim, gens);
}

std::vector<FpSubspace> derived_series(const LieAlgebraFp& L) {
  std::vector<FpSubspace> series{FpSubspace::full_space(L.p, L.dim)};
  for (;;) {
    FpSubspace next = product_space(series.back(), series.back(), L);
    if (next == series.back()) break;
    series.push_back(std::move(next));
    if (series.back().is_zero()) break;
  }
  return series;
}

namespace {

// Row space of the stacked maps y -> [y, e_j] (all j), as echelon rows.
FpSubspace stacked_ad_rowspace(const LieAlgebraFp& L, const std::vector<Vec>& against) {
  EchelonBuilder b(L.p, L.dim);
  for (const auto& s : against) {
    SparseMat A = L.ad(s);  // [s, x]; kernel is the same as for [x, s]
    for (u32 r = 0; r < L.dim && !b.full(); ++r) {
      if (A.row_terms[r].empty()) continue;
      Vec row(L.dim, 0);
      for (auto [c, v] : A.row_terms[r]) row[c] = v;
      b.insert(std::move(row));
    }
    if (b.full()) break;
  }
  return FpSubspace::from_builder(b);
}

}  // namespace

FpSubspace centralizer(const FpSubspace& S, const LieAlgebraFp& L) {
  FpSubspace rows = stacked_ad_rowspace(L, S.basis_rows());
  return kernel(rows.basis.rows ? rows.basis : FpMatrix(L.p, 0, L.dim));
}

FpSubspace center(const LieAlgebraFp& L) {
  return centralizer(FpSubspace::full_space(L.p, L.dim), L);
}

namespace {

bool is_diagonalizable(const FpMatrix& A) {
  FpMatrix prod = FpMatrix::identity(A.p, A.rows);
  for (u32 c = 0; c < A.p; ++c) {
    FpMatrix shifted = A;
    for (std::size_t i = 0; i < A.rows; ++i) shifted.at(i, i) = fp_sub(shifted.at(i, i), c, A.p);
    prod = prod.mul(shifted);
    if (prod.is_zero()) return true;
  }
  return prod.is_zero();
}

Vec normalized_dir(Vec v, u32 p) {
  for (u32 x : v)
    if (x) {
      u32 inv = fp_inv(x, p);
      for (auto& y : v) y = fp_mul(y, inv, p);
      break;
    }
  return v;
}

}  // namespace

bool is_simple(const LieAlgebraFp& L) {
  if (L.dim == 0) return false;
  FpSubspace full = FpSubspace::full_space(L.p, L.dim);
  if (product_space(full, full, L) != full) return false;
  if (!center(L).is_zero()) return false;

  auto closes_to_full = [&](const Vec& v) {
    return vec_is_zero(v) || ideal_generated(v, L) == full;
  };

  if (L.dim <= 4) {
    // exhaustive over projective representatives
    std::size_t total = 1;
    for (u32 i = 0; i < L.dim; ++i) total *= L.p;
    for (std::size_t code = 1; code < total; ++code) {
      std::size_t c = code;
      Vec v(L.dim);
      for (u32 i = 0; i < L.dim; ++i) {
        v[i] = c % L.p;
        c /= L.p;
      }
      if (!closes_to_full(v)) return false;
    }
    return true;
  }

  for (u32 i = 0; i < L.dim; ++i)
    if (!closes_to_full(L.basis_vec(i))) return false;

  // Candidate weight vectors: kernels of ad(b_i) restricted to eigenspaces of
  // a toral element.
  std::mt19937 rng(0x5eed);
  std::optional<FpMatrix> toral_ad;
  for (u32 i = 0; i < L.dim && !toral_ad; ++i) {
    FpMatrix A = L.ad(L.basis_vec(i)).to_dense();
    if (!A.is_zero() && is_diagonalizable(A)) toral_ad = std::move(A);
  }
  for (int t = 0; t < 20 && !toral_ad; ++t) {
    Vec v(L.dim, 0);
    for (auto& x : v) x = rng() % L.p;
    FpMatrix A = L.ad(v).to_dense();
    if (!A.is_zero() && is_diagonalizable(A)) toral_ad = std::move(A);
  }
  if (toral_ad) {
    std::set<Vec> seen;
    std::size_t budget = 512;
    for (u32 c = 0; c < L.p && budget; ++c) {
      FpMatrix shifted = *toral_ad;
      for (std::size_t i = 0; i < L.dim; ++i) shifted.at(i, i) = fp_sub(shifted.at(i, i), c, L.p);
      FpSubspace eig = kernel(shifted);
      if (eig.is_zero()) continue;
      for (u32 i = 0; i < L.dim && budget; ++i) {
        // kernel of ad(b_i) on the eigenspace
        FpMatrix act(L.p, L.dim, eig.dim());
        for (std::size_t col = 0; col < eig.dim(); ++col) {
          Vec w = L.bracket(L.basis_vec(i), eig.basis_row(col));
          for (u32 r = 0; r < L.dim; ++r) act.at(r, col) = w[r];
        }
        FpSubspace k = kernel(act);
        for (std::size_t s = 0; s < k.dim() && budget; ++s) {
          Vec v(L.dim, 0);
          Vec coords = k.basis_row(s);
          for (std::size_t col = 0; col < eig.dim(); ++col)
            if (coords[col]) vec_axpy(v, coords[col], eig.basis_row(col), L.p);
          v = normalized_dir(std::move(v), L.p);
          if (!seen.insert(v).second) continue;
          --budget;
          if (!closes_to_full(v)) return false;
        }
      }
    }
  }
  return true;
}

PPowerResult adjoint_p_power(const Vec& x, const LieAlgebraFp& L) {
  if (!center(L).is_zero()) return {PPowerResult::Status::Ambiguous, {}};
  FpMatrix B = L.ad(x).to_dense().pow(L.p);
  // Solve sum_i y_i [e_i, e_j] = B e_j for all j, as a stacked sparse system.
  EchelonBuilder b(L.p, L.dim + 1);
  std::vector<std::vector<std::pair<u32, u32>>> rows((std::size_t)L.dim * L.dim);
  for (const auto& [ky, terms] : L.table) {
    u32 i = static_cast<u32>(ky / L.dim), j = static_cast<u32>(ky % L.dim);
    for (auto [k, c] : terms) {
      rows[(std::size_t)j * L.dim + k].emplace_back(i, c);
      rows[(std::size_t)i * L.dim + k].emplace_back(j, fp_neg(c, L.p));
    }
  }
  Vec tmp(L.dim + 1, 0);
  for (u32 j = 0; j < L.dim; ++j)
    for (u32 k = 0; k < L.dim; ++k) {
      const auto& row = rows[(std::size_t)j * L.dim + k];
      u32 rhs = B.at(k, j);
      if (row.empty() && rhs == 0) continue;
      std::fill(tmp.begin(), tmp.end(), 0);
      for (auto [i, c] : row) tmp[i] = fp_add(tmp[i], c, L.p);
      tmp[L.dim] = rhs;
      b.insert(tmp);
    }
  FpSubspace R = FpSubspace::from_builder(b);
  Vec y(L.dim, 0);
  for (std::size_t r = 0; r < R.dim(); ++r) {
    if (R.pivots[r] == L.dim) return {PPowerResult::Status::NotInner, {}};
    y[R.pivots[r]] = R.basis.at(r, L.dim);
  }
  // centerless: solution is unique, so it must reproduce B exactly
  if (!(L.ad(y).to_dense() == B)) return {PPowerResult::Status::NotInner, {}};
  return {PPowerResult::Status::Ok, std::move(y)};
}

std::optional<PMap> canonical_pmap(const LieAlgebraFp& L) {
  PMap pm;
  pm.images.resize(L.dim);
  for (u32 i = 0; i < L.dim; ++i) {
    PPowerResult r = adjoint_p_power(L.basis_vec(i), L);
    if (r.status != PPowerResult::Status::Ok) return std::nullopt;
    pm.images[i] = std::move(r.y);
  }
  pm.present = true;
  return pm;
}

bool verify_pmap(const LieAlgebraFp& L, const PMap& pm) {
  if (!pm.present || pm.images.size() != L.dim) return false;
  for (u32 i = 0; i < L.dim; ++i) {
    FpMatrix lhs = L.ad(pm.images[i]).to_dense();
    FpMatrix rhs = L.ad(L.basis_vec(i)).to_dense().pow(L.p);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

LieAlgebraFp subalgebra_table(const FpSubspace& S, const LieAlgebraFp& L,
                              std::vector<std::string> labels) {
  LieAlgebraFp A(L.p, static_cast<u32>(S.dim()));
  if (!labels.empty()) {
    if (labels.size() != S.dim()) throw std::invalid_argument("label count mismatch");
    A.labels = std::move(labels);
  } else {
    for (std::size_t i = 0; i < S.dim(); ++i) A.labels[i] = "~" + L.labels[S.pivots[i]];
  }
  auto rows = S.basis_rows();
  for (u32 i = 0; i < A.dim; ++i)
    for (u32 j = i + 1; j < A.dim; ++j) {
      Vec w = L.bracket(rows[i], rows[j]);
      auto coords = S.coordinates(w);
      if (!coords) throw std::invalid_argument("subspace is not closed under the bracket");
      Terms t;
      for (u32 k = 0; k < A.dim; ++k)
        if ((*coords)[k]) t.emplace_back(k, (*coords)[k]);
      if (!t.empty()) A.set_bracket(i, j, std::move(t));
    }
  return A;
}

QuotientAlgebra quotient_algebra(const LieAlgebraFp& L, const FpSubspace& I) {
  if (ideal_generated(I, L) != I) throw std::invalid_argument("quotient needs an ideal");
  QuotientAlgebra Q;
  Q.ideal = I;
  FpSubspace full = FpSubspace::full_space(L.p, L.dim);
  Q.transversal = quotient_transversal(full, I);
  std::size_t k = Q.transversal.size();
  // combined basis rows: ideal first, then transversal; invert to get coords
  FpMatrix C(L.p, L.dim, L.dim);
  for (std::size_t r = 0; r < I.dim(); ++r) C.set_row(r, I.basis_row(r));
  for (std::size_t r = 0; r < k; ++r) C.set_row(I.dim() + r, Q.transversal[r]);
  auto inv = inverse(C.transpose());
  if (!inv) throw std::logic_error("combined basis not invertible");
  Q.proj = FpMatrix(L.p, k, L.dim);
  for (std::size_t r = 0; r < k; ++r)
    for (u32 c = 0; c < L.dim; ++c) Q.proj.at(r, c) = inv->at(I.dim() + r, c);

  LieAlgebraFp A(L.p, static_cast<u32>(k));
  for (std::size_t r = 0; r < k; ++r) {
    // transversal reps are standard basis vectors; reuse their labels
    for (u32 c = 0; c < L.dim; ++c)
      if (Q.transversal[r][c]) {
        A.labels[r] = L.labels[c];
        break;
      }
  }
  for (u32 i = 0; i < A.dim; ++i)
    for (u32 j = i + 1; j < A.dim; ++j) {
      Vec w = Q.project(L.bracket(Q.transversal[i], Q.transversal[j]));
      Terms t;
      for (u32 m = 0; m < A.dim; ++m)
        if (w[m]) t.emplace_back(m, w[m]);
      if (!t.empty()) A.set_bracket(i, j, std::move(t));
    }
  Q.alg = std::move(A);
  return Q;
}

}  // namespace gradlie
