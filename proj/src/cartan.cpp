#include "gradlie/cartan.hpp"

#include <algorithm>
#include <stdexcept>

namespace gradlie {

namespace {

u32 small_binom_mod(u32 c, u32 d, u32 p) {
  // c, d < p; plain integer binomial reduced mod p
  if (d > c) return 0;
  u64 r = 1;
  for (u32 i = 0; i < d; ++i) r = r * (c - i) / (i + 1);
  return (u32)(r % p);
}

void check_tuple(u32 m, const std::vector<u32>& n, u32 p, const char* who) {
  if (p < 5) throw std::invalid_argument(std::string(who) + ": characteristic must be >= 5");
  if (m == 0 || n.size() != m)
    throw std::invalid_argument(std::string(who) + ": need one positive exponent bound per variable");
  for (u32 ni : n)
    if (ni == 0) throw std::invalid_argument(std::string(who) + ": exponent bounds must be positive");
}

u64 dp_dimension(u32 m, const std::vector<u32>& n, u32 p) {
  u64 d = 1;
  for (u32 i = 0; i < m; ++i) {
    for (u32 k = 0; k < n[i]; ++k) {
      d *= p;
      if (d > (u64)1 << 32) throw SizeCapExceeded("divided power algebra dimension overflows");
    }
  }
  return d;
}

void check_cap(u64 dim, u32 cap, const char* who) {
  if (cap != 0 && dim > cap)
    throw SizeCapExceeded(std::string(who) + ": dimension " + std::to_string(dim) +
                          " exceeds cap " + std::to_string(cap));
}

}  // namespace

u32 lucas_binom(u64 c, u64 d, u32 p) {
  u32 r = 1;
  while (c || d) {
    u32 cd = (u32)(c % p), dd = (u32)(d % p);
    if (dd > cd) return 0;
    r = (u32)((u64)r * small_binom_mod(cd, dd, p) % p);
    c /= p;
    d /= p;
  }
  return r;
}

u32 DividedPowerAlgebra::index(const std::vector<u32>& a) const {
  u32 idx = 0;
  for (u32 i = 0; i < m; ++i) idx += a[i] * stride[i];
  return idx;
}

std::vector<u32> DividedPowerAlgebra::exponents(u32 idx) const {
  std::vector<u32> a(m);
  for (u32 i = 0; i < m; ++i) {
    a[i] = idx / stride[i];
    idx %= stride[i];
  }
  return a;
}

u32 DividedPowerAlgebra::total_degree(u32 idx) const {
  u32 d = 0;
  for (u32 i = 0; i < m; ++i) {
    d += idx / stride[i];
    idx %= stride[i];
  }
  return d;
}

std::vector<u32> DividedPowerAlgebra::top_exponents() const {
  std::vector<u32> a(m);
  for (u32 i = 0; i < m; ++i) a[i] = bound[i] - 1;
  return a;
}

std::string DividedPowerAlgebra::mono_name(u32 idx) const {
  std::vector<u32> a = exponents(idx);
  std::string s = "x^(";
  for (u32 i = 0; i < m; ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

DividedPowerAlgebra divided_power_algebra(u32 m, const std::vector<u32>& n, u32 p, u32 cap) {
  check_tuple(m, n, p, "divided_power_algebra");
  DividedPowerAlgebra O;
  O.p = p;
  O.m = m;
  O.n = n;
  u64 dim = dp_dimension(m, n, p);
  check_cap(dim, cap, "divided_power_algebra");
  O.dim = (u32)dim;
  O.bound.resize(m);
  for (u32 i = 0; i < m; ++i) {
    u32 b = 1;
    for (u32 k = 0; k < n[i]; ++k) b *= p;
    O.bound[i] = b;
  }
  O.stride.assign(m, 1);
  for (u32 i = m; i-- > 1;) O.stride[i - 1] = O.stride[i] * O.bound[i];
  return O;
}

std::pair<u32, std::vector<u32>> dp_multiply(const std::vector<u32>& a, const std::vector<u32>& b,
                                             const DividedPowerAlgebra& O) {
  std::vector<u32> c(O.m);
  u32 coeff = 1;
  for (u32 i = 0; i < O.m; ++i) {
    c[i] = a[i] + b[i];
    if (c[i] >= O.bound[i]) return {0, {}};
    coeff = (u32)((u64)coeff * lucas_binom(c[i], a[i], O.p) % O.p);
  }
  if (coeff == 0) return {0, {}};
  return {coeff, std::move(c)};
}

Vec dp_mul(const DividedPowerAlgebra& O, const Vec& f, const Vec& g) {
  Vec out(O.dim, 0);
  for (u32 i = 0; i < O.dim; ++i) {
    if (!f[i]) continue;
    std::vector<u32> a = O.exponents(i);
    for (u32 j = 0; j < O.dim; ++j) {
      if (!g[j]) continue;
      auto [c, e] = dp_multiply(a, O.exponents(j), O);
      if (c) {
        u32 idx = O.index(e);
        out[idx] = (u32)((out[idx] + (u64)c * f[i] % O.p * g[j]) % O.p);
      }
    }
  }
  return out;
}

Vec dp_derive(const DividedPowerAlgebra& O, u32 i, const Vec& f) {
  Vec out(O.dim, 0);
  for (u32 j = 0; j < O.dim; ++j) {
    if (!f[j]) continue;
    u32 ai = (j / O.stride[i]) % O.bound[i];
    if (ai == 0) continue;
    out[j - O.stride[i]] = f[j];
  }
  return out;
}

WittAlgebra build_witt(u32 m, const std::vector<u32>& n, u32 p, u32 cap) {
  check_tuple(m, n, p, "build_witt");
  check_cap((u64)m * dp_dimension(m, n, p), cap, "build_witt");
  WittAlgebra W;
  W.O = divided_power_algebra(m, n, p, 0);
  const DividedPowerAlgebra& O = W.O;
  u32 dim = O.dim * m;
  LieAlgebraFp L(p, dim);
  std::vector<int> deg(dim);
  L.labels.resize(dim);
  for (u32 mo = 0; mo < O.dim; ++mo)
    for (u32 i = 0; i < m; ++i) {
      L.labels[W.index(mo, i)] = O.mono_name(mo) + "D" + std::to_string(i + 1);
      deg[W.index(mo, i)] = (int)O.total_degree(mo) - 1;
    }
  // [x^(a)D_i, x^(b)D_j] = C(a+b-e_i, a) x^(a+b-e_i)D_j - C(a+b-e_j, b) x^(a+b-e_j)D_i
  auto term = [&](const std::vector<u32>& a, const std::vector<u32>& b, u32 drop,
                  u32 dcomp) -> std::pair<u32, u32> {
    std::vector<u32> c(m);
    u32 coeff = 1;
    for (u32 k = 0; k < m; ++k) {
      u32 s = a[k] + b[k];
      if (k == drop) {
        if (s == 0) return {0, 0};
        s -= 1;
      }
      if (s >= O.bound[k]) return {0, 0};
      c[k] = s;
      coeff = (u32)((u64)coeff * lucas_binom(c[k], a[k], O.p) % O.p);
    }
    if (!coeff) return {0, 0};
    return {coeff, W.index(O.index(c), dcomp)};
  };
  for (u32 u = 0; u < dim; ++u) {
    std::vector<u32> a = O.exponents(u / m);
    u32 i = u % m;
    for (u32 v = u + 1; v < dim; ++v) {
      std::vector<u32> b = O.exponents(v / m);
      u32 j = v % m;
      Terms t;
      auto [c1, k1] = term(a, b, i, j);
      if (c1) t.push_back({k1, c1});
      auto [c2, k2] = term(b, a, j, i);
      if (c2) t.push_back({k2, fp_neg(c2, p)});
      if (!t.empty()) L.set_bracket(u, v, std::move(t));
    }
  }
  W.g = GradedLieAlgebra(std::move(L), std::move(deg));
  return W;
}

GradedLieAlgebra build_W(u32 m, const std::vector<u32>& n, u32 p, u32 cap) {
  return build_witt(m, n, p, cap).g;
}

Vec divergence(const WittAlgebra& W, const Vec& D) {
  const DividedPowerAlgebra& O = W.O;
  Vec out(O.dim, 0);
  for (u32 u = 0; u < D.size(); ++u) {
    if (!D[u]) continue;
    u32 mo = u / O.m, i = u % O.m;
    u32 ai = (mo / O.stride[i]) % O.bound[i];
    if (ai == 0) continue;
    u32 idx = mo - O.stride[i];
    out[idx] = fp_add(out[idx], D[u], O.p);
  }
  return out;
}

Vec apply_derivation(const WittAlgebra& W, const Vec& D, const Vec& f) {
  const DividedPowerAlgebra& O = W.O;
  Vec out(O.dim, 0);
  for (u32 u = 0; u < D.size(); ++u) {
    if (!D[u]) continue;
    std::vector<u32> a = O.exponents(u / O.m);
    u32 i = u % O.m;
    for (u32 j = 0; j < O.dim; ++j) {
      if (!f[j]) continue;
      std::vector<u32> b = O.exponents(j);
      if (b[i] == 0) continue;
      b[i] -= 1;
      auto [c, e] = dp_multiply(a, b, O);
      if (c) {
        u32 idx = O.index(e);
        out[idx] = (u32)((out[idx] + (u64)c * D[u] % O.p * f[j]) % O.p);
      }
    }
  }
  return out;
}

Vec d_ij(const WittAlgebra& W, u32 i, u32 j, const Vec& f) {
  const DividedPowerAlgebra& O = W.O;
  Vec dj = dp_derive(O, j, f), di = dp_derive(O, i, f);
  Vec out(W.g.alg.dim, 0);
  for (u32 mo = 0; mo < O.dim; ++mo) {
    if (dj[mo]) {
      u32 u = W.index(mo, i);
      out[u] = fp_add(out[u], dj[mo], O.p);
    }
    if (di[mo]) {
      u32 u = W.index(mo, j);
      out[u] = fp_sub(out[u], di[mo], O.p);
    }
  }
  return out;
}

Vec degree_derivation(const WittAlgebra& W) {
  const DividedPowerAlgebra& O = W.O;
  Vec out(W.g.alg.dim, 0);
  for (u32 i = 0; i < O.m; ++i) out[W.index(O.stride[i], i)] = 1;
  return out;
}

Vec f_degree_derivation(const WittAlgebra& W, const Vec& f) {
  const DividedPowerAlgebra& O = W.O;
  Vec out(W.g.alg.dim, 0);
  for (u32 j = 0; j < O.dim; ++j) {
    if (!f[j]) continue;
    std::vector<u32> a = O.exponents(j);
    for (u32 i = 0; i < O.m; ++i) {
      std::vector<u32> e(O.m, 0);
      e[i] = 1;
      auto [c, s] = dp_multiply(a, e, O);
      if (c) {
        u32 u = W.index(O.index(s), i);
        out[u] = (u32)((out[u] + (u64)c * f[j]) % O.p);
      }
    }
  }
  return out;
}

std::string family_name(CartanFamily f) {
  switch (f) {
    case CartanFamily::W: return "W";
    case CartanFamily::S: return "S";
    case CartanFamily::S1: return "S1";
    case CartanFamily::CS: return "CS";
    case CartanFamily::H: return "H";
    case CartanFamily::H2: return "H2";
    case CartanFamily::CH: return "CH";
    case CartanFamily::K: return "K";
    case CartanFamily::K1: return "K1";
  }
  return "?";
}

namespace {

/// Matrix of the divergence map W -> O (rows = monomials, cols = W basis).
FpMatrix divergence_matrix(const WittAlgebra& W) {
  FpMatrix M(W.O.p, W.O.dim, W.g.alg.dim);
  for (u32 u = 0; u < W.g.alg.dim; ++u) {
    Vec d = divergence(W, [&] {
      Vec e(W.g.alg.dim, 0);
      e[u] = 1;
      return e;
    }());
    for (u32 r = 0; r < W.O.dim; ++r)
      if (d[r]) M.at(r, u) = d[r];
  }
  return M;
}

}  // namespace

GradedLieAlgebra build_S(u32 m, const std::vector<u32>& n, u32 p, CartanFamily level, u32 cap) {
  if (m < 3) throw std::invalid_argument("build_S: need at least three variables");
  if (level != CartanFamily::S && level != CartanFamily::S1 && level != CartanFamily::CS)
    throw std::invalid_argument("build_S: level must be S, S1, or CS");
  WittAlgebra W = build_witt(m, n, p, cap);
  FpSubspace S = kernel(divergence_matrix(W));
  if (level == CartanFamily::S1)
    S = product_space(S, S, W.g.alg);
  else if (level == CartanFamily::CS)
    S = subspace_sum(S, FpSubspace::span(p, W.g.alg.dim, {degree_derivation(W)}));
  return graded_subalgebra(S, W.g);
}

namespace {

/// {f,g} over the first 2*pairs variables, with the symplectic pairing
/// i <-> i + pairs.
Vec poisson_pairs(const DividedPowerAlgebra& O, const Vec& f, const Vec& g, u32 pairs) {
  Vec out(O.dim, 0);
  for (u32 i = 0; i < pairs; ++i) {
    Vec t1 = dp_mul(O, dp_derive(O, i, f), dp_derive(O, i + pairs, g));
    Vec t2 = dp_mul(O, dp_derive(O, i + pairs, f), dp_derive(O, i, g));
    for (u32 r = 0; r < O.dim; ++r) out[r] = fp_add(out[r], fp_sub(t1[r], t2[r], O.p), O.p);
  }
  return out;
}

}  // namespace

Vec poisson_bracket(const DividedPowerAlgebra& O, const Vec& f, const Vec& g) {
  if (O.m % 2 != 0)
    throw std::invalid_argument("poisson_bracket: needs an even variable count");
  return poisson_pairs(O, f, g, O.m / 2);
}

Vec hamiltonian_derivation(const WittAlgebra& W, const Vec& f) {
  const DividedPowerAlgebra& O = W.O;
  if (O.m % 2 != 0)
    throw std::invalid_argument("hamiltonian_derivation: needs an even variable count");
  u32 mm = O.m / 2;
  Vec out(W.g.alg.dim, 0);
  for (u32 j = 0; j < O.m; ++j) {
    u32 jp = j < mm ? j + mm : j - mm;
    u32 sign = j < mm ? 1 : fp_neg(1, O.p);
    Vec dj = dp_derive(O, j, f);
    for (u32 mo = 0; mo < O.dim; ++mo)
      if (dj[mo]) {
        u32 u = W.index(mo, jp);
        out[u] = (u32)((out[u] + (u64)sign * dj[mo]) % O.p);
      }
  }
  return out;
}

GradedLieAlgebra build_H(u32 two_m, const std::vector<u32>& n, u32 p, CartanFamily level,
                         u32 cap) {
  if (two_m < 2 || two_m % 2 != 0)
    throw std::invalid_argument("build_H: needs a positive even variable count");
  check_tuple(two_m, n, p, "build_H");
  u32 mm = two_m / 2;

  if (level == CartanFamily::H2) {
    // Direct construction on the basis D_H(x^(a)), a not in {0, top}; the
    // bracket factors through the Poisson bracket on O.
    u64 odim = dp_dimension(two_m, n, p);
    check_cap(odim - 2, cap, "build_H");
    DividedPowerAlgebra O = divided_power_algebra(two_m, n, p, 0);
    u32 dim = O.dim - 2;  // basis: monomial indices 1 .. O.dim-2
    LieAlgebraFp L(p, dim);
    std::vector<int> deg(dim);
    L.labels.resize(dim);
    for (u32 b = 0; b < dim; ++b) {
      L.labels[b] = "DH[" + O.mono_name(b + 1) + "]";
      deg[b] = (int)O.total_degree(b + 1) - 2;
    }
    for (u32 u = 0; u < dim; ++u) {
      Vec fu(O.dim, 0);
      fu[u + 1] = 1;
      for (u32 v = u + 1; v < dim; ++v) {
        Vec fv(O.dim, 0);
        fv[v + 1] = 1;
        Vec w = poisson_pairs(O, fu, fv, mm);
        Terms t;
        for (u32 c = 0; c < O.dim; ++c) {
          if (!w[c]) continue;
          if (c == 0) continue;  // D_H of a constant is zero
          if (c == O.dim - 1)
            throw std::logic_error("build_H: bracket escaped the derived algebra");
          t.push_back({c - 1, w[c]});
        }
        if (!t.empty()) L.set_bracket(u, v, std::move(t));
      }
    }
    return GradedLieAlgebra(std::move(L), std::move(deg));
  }

  if (level != CartanFamily::H && level != CartanFamily::CH)
    throw std::invalid_argument("build_H: level must be H, H2, or CH");
  WittAlgebra W = build_witt(two_m, n, p, cap);
  const DividedPowerAlgebra& O = W.O;
  // sigma(j')D_i(f_{j'}) = sigma(i')D_j(f_{i'}) for all i < j, one equation
  // row per (pair, monomial).
  std::vector<Vec> rows;
  auto sigma = [&](u32 j) { return j < mm ? 1u : fp_neg(1, p); };
  auto conj = [&](u32 j) { return j < mm ? j + mm : j - mm; };
  for (u32 i = 0; i < two_m; ++i)
    for (u32 j = i + 1; j < two_m; ++j) {
      std::vector<Vec> eq(O.dim, Vec());  // lazily allocated per-monomial rows
      auto row = [&](u32 mono) -> Vec& {
        if (eq[mono].empty()) eq[mono].assign(W.g.alg.dim, 0);
        return eq[mono];
      };
      for (u32 mo = 0; mo < O.dim; ++mo) {
        // f_{j'} = x^(mo): contributes sigma(j') D_i(x^(mo))
        u32 ai = (mo / O.stride[i]) % O.bound[i];
        if (ai) {
          Vec& r = row(mo - O.stride[i]);
          u32 u = W.index(mo, conj(j));
          r[u] = fp_add(r[u], sigma(conj(j)), p);
        }
        // f_{i'} = x^(mo): contributes -sigma(i') D_j(x^(mo))
        u32 aj = (mo / O.stride[j]) % O.bound[j];
        if (aj) {
          Vec& r = row(mo - O.stride[j]);
          u32 u = W.index(mo, conj(i));
          r[u] = fp_sub(r[u], sigma(conj(i)), p);
        }
      }
      for (Vec& r : eq)
        if (!r.empty() && !vec_is_zero(r)) rows.push_back(std::move(r));
    }
  FpSubspace H = kernel(rows.empty() ? FpMatrix(p, 0, W.g.alg.dim)
                                     : FpMatrix::from_rows(p, W.g.alg.dim, rows));
  if (level == CartanFamily::CH)
    H = subspace_sum(H, FpSubspace::span(p, W.g.alg.dim, {degree_derivation(W)}));
  return graded_subalgebra(H, W.g);
}

Vec contact_bracket(const DividedPowerAlgebra& O, const Vec& f, const Vec& g) {
  if (O.m % 2 == 0)
    throw std::invalid_argument("contact_bracket: needs an odd variable count");
  u32 mm = (O.m - 1) / 2, last = O.m - 1;
  auto delta = [&](const Vec& h) {
    // Delta(x^(a)) = (2 - sum_{j<=2m} a_j) x^(a), extended linearly
    Vec out(O.dim, 0);
    for (u32 j = 0; j < O.dim; ++j) {
      if (!h[j]) continue;
      u32 alast = (j / O.stride[last]) % O.bound[last];
      u32 s = O.total_degree(j) - alast;
      u32 scalar = fp_sub(2 % O.p, s % O.p, O.p);
      out[j] = fp_mul(scalar, h[j], O.p);
    }
    return out;
  };
  Vec t1 = dp_mul(O, delta(f), dp_derive(O, last, g));
  Vec t2 = dp_mul(O, delta(g), dp_derive(O, last, f));
  Vec t3 = poisson_pairs(O, f, g, mm);
  Vec out(O.dim, 0);
  for (u32 r = 0; r < O.dim; ++r)
    out[r] = fp_add(fp_sub(t1[r], t2[r], O.p), t3[r], O.p);
  return out;
}

GradedLieAlgebra build_K(u32 vars, const std::vector<u32>& n, u32 p, CartanFamily level, u32 cap) {
  if (vars < 3 || vars % 2 == 0)
    throw std::invalid_argument("build_K: needs an odd variable count >= 3");
  if (level != CartanFamily::K && level != CartanFamily::K1)
    throw std::invalid_argument("build_K: level must be K or K1");
  check_tuple(vars, n, p, "build_K");
  u32 mm = (vars - 1) / 2, last = vars - 1;
  bool exclude_top = level == CartanFamily::K1 && (2 * mm + 4) % p == 0;
  u64 odim = dp_dimension(vars, n, p);
  check_cap(odim - (exclude_top ? 1 : 0), cap, "build_K");
  DividedPowerAlgebra O = divided_power_algebra(vars, n, p, 0);
  u32 dim = O.dim - (exclude_top ? 1 : 0);  // top tuple is the lex-last index
  LieAlgebraFp L(p, dim);
  std::vector<int> deg(dim);
  L.labels.resize(dim);
  for (u32 b = 0; b < dim; ++b) {
    L.labels[b] = "DK[" + O.mono_name(b) + "]";
    u32 alast = (b / O.stride[last]) % O.bound[last];
    deg[b] = (int)O.total_degree(b) + (int)alast - 2;
  }
  for (u32 u = 0; u < dim; ++u) {
    Vec fu(O.dim, 0);
    fu[u] = 1;
    for (u32 v = u + 1; v < dim; ++v) {
      Vec fv(O.dim, 0);
      fv[v] = 1;
      Vec w = contact_bracket(O, fu, fv);
      Terms t;
      for (u32 c = 0; c < O.dim; ++c) {
        if (!w[c]) continue;
        if (exclude_top && c == O.dim - 1)
          throw std::logic_error("build_K: bracket escaped the derived algebra");
        t.push_back({c, w[c]});
      }
      if (!t.empty()) L.set_bracket(u, v, std::move(t));
    }
  }
  return GradedLieAlgebra(std::move(L), std::move(deg));
}

SharpDaggerDecomposition sharp_dagger_decomposition(const WittAlgebra& W, u32 ell) {
  const DividedPowerAlgebra& O = W.O;
  if (O.m < 2)
    throw std::invalid_argument("sharp_dagger_decomposition: need at least two variables");
  if (ell > O.p - 2) throw std::out_of_range("sharp_dagger_decomposition: degree out of range");
  FpSubspace gl = W.g.component((int)ell);
  FpSubspace dagger = subspace_intersect(gl, kernel(divergence_matrix(W)));
  std::vector<Vec> gens;
  for (u32 mo = 0; mo < O.dim; ++mo)
    if (O.total_degree(mo) == ell) {
      Vec f(O.dim, 0);
      f[mo] = 1;
      gens.push_back(f_degree_derivation(W, f));
    }
  FpSubspace sharp = FpSubspace::span(O.p, W.g.alg.dim, gens);
  SharpDaggerDecomposition out{sharp, dagger, SharpDaggerRelation::DirectSum};
  bool disjoint = subspace_intersect(sharp, dagger).is_zero();
  if (disjoint && subspace_sum(sharp, dagger) == gl) {
    out.relation = SharpDaggerRelation::DirectSum;
  } else {
    for (std::size_t i = 0; i < sharp.dim(); ++i)
      if (!dagger.contains(sharp.basis_row(i)))
        throw std::logic_error("sharp_dagger_decomposition: submodules neither split nor nest");
    out.relation = SharpDaggerRelation::Chain;
  }
  return out;
}

}  // namespace gradlie
