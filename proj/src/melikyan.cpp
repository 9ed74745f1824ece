#include "gradlie/melikyan.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gradlie/classical.hpp"

namespace gradlie {

namespace {

// Terms of a coordinate vector, for feeding set_bracket.
Terms vec_terms(const Vec& v) {
  Terms t;
  for (u32 i = 0; i < v.size(); ++i)
    if (v[i]) t.push_back({i, v[i]});
  return t;
}

// f * E for f in O coordinates and E in W coordinates.
Vec function_times_derivation(const WittAlgebra& W, const Vec& f, const Vec& E) {
  const DividedPowerAlgebra& O = W.O;
  u32 p = O.p;
  Vec out(E.size(), 0);
  for (u32 mo = 0; mo < O.dim; ++mo) {
    if (!f[mo]) continue;
    std::vector<u32> a = O.exponents(mo);
    for (u32 mb = 0; mb < O.dim; ++mb) {
      for (u32 i = 0; i < O.m; ++i) {
        u32 c = E[W.index(mb, i)];
        if (!c) continue;
        auto [coeff, e] = dp_multiply(a, O.exponents(mb), O);
        if (!coeff) continue;
        u32 idx = W.index(O.index(e), i);
        out[idx] = (u32)((out[idx] + (u64)f[mo] * c % p * coeff) % p);
      }
    }
  }
  return out;
}

// D~_f = D_1(f) D~_2 - D_2(f) D~_1, returned in W coordinates.
Vec tilde_derivation_of(const WittAlgebra& W, const Vec& f) {
  const DividedPowerAlgebra& O = W.O;
  Vec f1 = dp_derive(O, 0, f);
  Vec f2 = dp_derive(O, 1, f);
  Vec out(W.g.alg.dim, 0);
  for (u32 mo = 0; mo < O.dim; ++mo) {
    if (f1[mo]) out[W.index(mo, 1)] = f1[mo];
    if (f2[mo]) out[W.index(mo, 0)] = fp_neg(f2[mo], O.p);
  }
  return out;
}

// Component of index i (0 or 1) of a tilde-block element, as an O vector:
// for f1 D~_1 + f2 D~_2 in W coordinates, returns f_{i+1}.
Vec tilde_component(const WittAlgebra& W, const Vec& F, u32 i) {
  Vec out(W.O.dim, 0);
  for (u32 mo = 0; mo < W.O.dim; ++mo) out[mo] = F[W.index(mo, i)];
  return out;
}

}  // namespace

MelikyanAlgebra build_M(u32 n1, u32 n2, u32 p, u32 cap) {
  check_modulus(p);
  MelikyanAlgebra M;
  M.p = p;
  M.n = {n1, n2};
  // Total dimension is p^{n1+n2+1}; check it before building the pieces.
  u64 odim = 1;
  for (u32 k = 0; k < n1 + n2; ++k) odim *= p;
  u64 total = 5 * odim;
  if (cap != 0 && total > cap)
    throw SizeCapExceeded("build_M: dimension " + std::to_string(total) + " exceeds cap " +
                          std::to_string(cap));
  M.W = build_witt(2, M.n, p, 0);
  const WittAlgebra& W = M.W;
  const DividedPowerAlgebra& O = W.O;
  const u32 Odim = O.dim;
  const u32 Wdim = W.g.alg.dim;
  const u32 dim = Odim + 2 * Wdim;

  LieAlgebraFp L(p, dim);
  std::vector<int> deg(dim);
  L.labels.resize(dim);
  for (u32 mo = 0; mo < Odim; ++mo) {
    L.labels[M.o_index(mo)] = O.mono_name(mo);
    deg[M.o_index(mo)] = 3 * (int)O.total_degree(mo) - 2;
  }
  for (u32 w = 0; w < Wdim; ++w) {
    L.labels[M.w_index(w)] = W.g.alg.labels[w];
    L.labels[M.t_index(w)] = W.g.alg.labels[w] + "~";
    deg[M.w_index(w)] = 3 * W.g.degree[w];
    deg[M.t_index(w)] = 3 * W.g.degree[w] + 2;
  }

  enum Block { kO, kW, kT };
  auto block_of = [&](u32 i) { return i < Odim ? kO : (i < Odim + Wdim ? kW : kT); };
  auto o_part = [&](u32 i) { return i; };            // O-block local index
  auto w_part = [&](u32 i) { return i - Odim; };     // W-block local index
  auto t_part = [&](u32 i) { return i - Odim - Wdim; };

  // [D, E]: the derivation bracket, landing back in the W block.
  auto w_w = [&](u32 wi, u32 wj) {
    Vec b = W.g.alg.bracket_basis(wi, wj);
    Vec out(dim, 0);
    for (u32 w = 0; w < Wdim; ++w) out[M.w_index(w)] = b[w];
    return out;
  };
  // [D, E~] = ([D,E])~ + 2 div(D) E~, landing in the tilde block.
  auto w_t = [&](u32 wi, u32 wj) {
    Vec D = W.g.alg.basis_vec(wi);
    Vec E = W.g.alg.basis_vec(wj);
    Vec b = W.g.alg.bracket(D, E);
    Vec extra = function_times_derivation(W, vec_scale(divergence(W, D), 2, p), E);
    Vec out(dim, 0);
    for (u32 w = 0; w < Wdim; ++w) out[M.t_index(w)] = fp_add(b[w], extra[w], p);
    return out;
  };
  // [D, f] = D(f) - 2 div(D) f, landing in the O block.
  auto w_o = [&](u32 wi, u32 mo) {
    Vec D = W.g.alg.basis_vec(wi);
    Vec f(Odim, 0);
    f[mo] = 1;
    Vec r = apply_derivation(W, D, f);
    Vec s = dp_mul(O, vec_scale(divergence(W, D), 2, p), f);
    Vec out(dim, 0);
    for (u32 m2 = 0; m2 < Odim; ++m2) out[M.o_index(m2)] = fp_sub(r[m2], s[m2], p);
    return out;
  };
  // [f1 D~_1 + f2 D~_2, g1 D~_1 + g2 D~_2] = f1 g2 - f2 g1, landing in O.
  auto t_t = [&](u32 wi, u32 wj) {
    Vec F = W.g.alg.basis_vec(wi);
    Vec G = W.g.alg.basis_vec(wj);
    Vec a = dp_mul(O, tilde_component(W, F, 0), tilde_component(W, G, 1));
    Vec b = dp_mul(O, tilde_component(W, F, 1), tilde_component(W, G, 0));
    Vec out(dim, 0);
    for (u32 m2 = 0; m2 < Odim; ++m2) out[M.o_index(m2)] = fp_sub(a[m2], b[m2], p);
    return out;
  };
  // [f, E~] = f E, landing in the W block (the tilde is dropped).
  auto o_t = [&](u32 mo, u32 wj) {
    Vec f(Odim, 0);
    f[mo] = 1;
    Vec r = function_times_derivation(W, f, W.g.alg.basis_vec(wj));
    Vec out(dim, 0);
    for (u32 w = 0; w < Wdim; ++w) out[M.w_index(w)] = r[w];
    return out;
  };
  // [f, g] = 2 (f D~_g - g D~_f), landing in the tilde block.
  auto o_o = [&](u32 mi, u32 mj) {
    Vec f(Odim, 0), g(Odim, 0);
    f[mi] = 1;
    g[mj] = 1;
    Vec a = function_times_derivation(W, f, tilde_derivation_of(W, g));
    Vec b = function_times_derivation(W, g, tilde_derivation_of(W, f));
    Vec out(dim, 0);
    for (u32 w = 0; w < Wdim; ++w) out[M.t_index(w)] = fp_mul(2, fp_sub(a[w], b[w], p), p);
    return out;
  };

  for (u32 i = 0; i < dim; ++i)
    for (u32 j = i + 1; j < dim; ++j) {
      Block bi = block_of(i), bj = block_of(j);
      Vec out;
      if (bi == kO && bj == kO) out = o_o(o_part(i), o_part(j));
      else if (bi == kO && bj == kW) {
        out = w_o(w_part(j), o_part(i));  // [f, D] = -[D, f]
        for (auto& c : out) c = fp_neg(c, p);
      } else if (bi == kO && bj == kT) out = o_t(o_part(i), t_part(j));
      else if (bi == kW && bj == kW) out = w_w(w_part(i), w_part(j));
      else if (bi == kW && bj == kT) out = w_t(w_part(i), t_part(j));
      else out = t_t(t_part(i), t_part(j));
      Terms t = vec_terms(out);
      if (!t.empty()) L.set_bracket(i, j, std::move(t));
    }

  M.alg = GradedLieAlgebra(std::move(L), std::move(deg));
  if (p == 5) {
    StructureReport rep = check_structure(M.alg.alg, 1);
    if (!rep.clean())
      throw std::logic_error("build_M: structure table fails the Jacobi identity");
  }
  return M;
}

Z3Components z3_components(const MelikyanAlgebra& M) {
  const u32 p = M.p;
  const u32 Odim = M.W.O.dim;
  const u32 Wdim = M.W.g.alg.dim;
  const u32 dim = M.alg.alg.dim;
  auto block = [&](u32 lo, u32 count) {
    std::vector<Vec> gens;
    for (u32 i = 0; i < count; ++i) {
      Vec v(dim, 0);
      v[lo + i] = 1;
      gens.push_back(std::move(v));
    }
    return FpSubspace::span(p, dim, gens);
  };
  Z3Components z;
  z.minus_two = block(0, Odim);
  z.zero = block(Odim, Wdim);
  z.two = block(Odim + Wdim, Wdim);
  return z;
}

G2ComparisonReport g2_comparison(const MelikyanAlgebra& M) {
  if (M.p != 5 || M.n != std::vector<u32>{1, 1})
    throw HypothesesNotMet("g2_comparison: requires p = 5 and n = (1,1)");
  const WittAlgebra& W = M.W;
  const DividedPowerAlgebra& O = W.O;
  const LieAlgebraFp& L = M.alg.alg;
  const u32 p = M.p;
  G2ComparisonReport rep;

  for (int d = -3; d <= 1; ++d) rep.melikyan_dims.push_back(M.alg.component(d).dim());
  ChevalleyAlgebra g2 = chevalley_algebra(build_root_system(SimpleType::G, 2), p, Variant::Simple);
  GradedLieAlgebra g2g = standard_grading(g2, 1);
  for (int d = -3; d <= 1; ++d) rep.classical_dims.push_back(g2g.component(d).dim());
  if (rep.melikyan_dims != rep.classical_dims)
    rep.mismatches.push_back("component dimensions in degrees -3..1 differ");

  auto mono = [&](u32 a1, u32 a2) { return O.index({a1, a2}); };
  auto unit = [&](u32 idx, u32 c) {
    Vec v = L.zero_vec();
    v[idx] = c;
    return v;
  };
  // The distinguished elements on the Melikyan side.
  Vec e1 = unit(M.w_index(W.index(mono(1, 0), 1)), 1);  // x1 D2
  Vec f1 = unit(M.w_index(W.index(mono(0, 1), 0)), 1);  // x2 D1
  Vec h1 = L.zero_vec();                                // x1 D1 - x2 D2
  h1[M.w_index(W.index(mono(1, 0), 0))] = 1;
  h1[M.w_index(W.index(mono(0, 1), 1))] = p - 1;
  Vec e0 = unit(M.o_index(mono(0, 1)), 1);              // x2
  Vec f0 = unit(M.t_index(W.index(mono(0, 0), 1)), 3);  // 3 D~_2
  Vec h0 = unit(M.w_index(W.index(mono(0, 1), 1)), 3);  // 3 x2 D2
  Vec xb = unit(M.t_index(W.index(mono(0, 1), 0)), 1);  // x2 D~_1

  auto expect = [&](const char* name, const Vec& got, const Vec& want) {
    if (got != want) rep.mismatches.push_back(std::string("relation failed: ") + name);
  };
  auto scale = [&](const Vec& v, u32 c) { return vec_scale(v, c % p, p); };
  u32 minus = p - 1;

  expect("[e1,f1] = h1", L.bracket(e1, f1), h1);
  expect("[h1,e1] = 2 e1", L.bracket(h1, e1), scale(e1, 2));
  expect("[h1,f1] = -2 f1", L.bracket(h1, f1), scale(f1, 2 * minus));
  expect("[e0,f0] = h0", L.bracket(e0, f0), h0);
  expect("[h0,e0] = 2 e0", L.bracket(h0, e0), scale(e0, 2));
  expect("[h0,f0] = -2 f0", L.bracket(h0, f0), scale(f0, 2 * minus));
  expect("[f1,xb] = 0", L.bracket(f1, xb), L.zero_vec());
  expect("[h1,xb] = -2 xb", L.bracket(h1, xb), scale(xb, 2 * minus));
  expect("[f0,xb] = 2 e0", L.bracket(f0, xb), scale(e0, 2));
  expect("[h0,xb] = 4 xb", L.bracket(h0, xb), scale(xb, 4));
  expect("[e1,f0] = 0", L.bracket(e1, f0), L.zero_vec());
  expect("[f1,e0] = 0", L.bracket(f1, e0), L.zero_vec());
  return rep;
}

}  // namespace gradlie
