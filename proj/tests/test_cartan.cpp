#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gradlie/cartan.hpp"

using namespace gradlie;

namespace {

Vec mono(const DividedPowerAlgebra& O, const std::vector<u32>& a) {
  Vec f(O.dim, 0);
  f[O.index(a)] = 1;
  return f;
}

/// The O-coefficient functions f_i of D = sum f_i D_i.
std::vector<Vec> witt_components(const WittAlgebra& W, const Vec& D) {
  std::vector<Vec> f(W.O.m, Vec(W.O.dim, 0));
  for (u32 u = 0; u < D.size(); ++u)
    if (D[u]) f[u % W.O.m][u / W.O.m] = D[u];
  return f;
}

TEST_CASE("divided power multiplication") {
  DividedPowerAlgebra O1 = divided_power_algebra(1, {1}, 5);
  CHECK(O1.dim == 5);
  auto [c, e] = dp_multiply({0}, {3}, O1);
  CHECK(c == 1);
  CHECK(e == std::vector<u32>{3});
  auto [c2, e2] = dp_multiply({2}, {2}, O1);
  CHECK(c2 == 1);  // C(4,2) = 6 = 1 mod 5
  CHECK(e2 == std::vector<u32>{4});
  CHECK(dp_multiply({2}, {3}, O1).first == 0);  // exponent overflow

  DividedPowerAlgebra O2 = divided_power_algebra(1, {2}, 5);
  CHECK(O2.dim == 25);
  CHECK(dp_multiply({3}, {4}, O2).first == 0);  // C(7,3) = 35 = 0 by Lucas
  CHECK(dp_multiply({5}, {5}, O2).first == 2);  // C(10,5) = 252 = 2 mod 5

  CHECK(lucas_binom(24, 12, 5) == 1);  // digits (4,4) choose (2,2): 6*6
  CHECK_THROWS_AS(divided_power_algebra(2, {1}, 5), std::invalid_argument);
  CHECK_THROWS_AS(divided_power_algebra(3, {2, 2, 2}, 5, 100), SizeCapExceeded);
}

TEST_CASE("derivation algebras of the function space") {
  WittAlgebra W = build_witt(1, {1}, 5);
  CHECK(W.g.alg.dim == 5);
  CHECK(W.g.depth() == 1);
  CHECK(W.g.height() == 3);
  CHECK(check_grading(W.g).clean());
  CHECK(check_structure(W.g.alg).clean());
  CHECK(is_simple(W.g.alg));

  GradedLieAlgebra Z = build_W(1, {2}, 5);
  CHECK(Z.alg.dim == 25);
  CHECK(Z.height() == 23);
  CHECK(check_structure(Z.alg).clean());

  WittAlgebra W2 = build_witt(2, {1, 1}, 5);
  CHECK(W2.g.alg.dim == 50);
  CHECK(check_grading(W2.g).clean());
  CHECK(check_structure(W2.g.alg).clean());
  CHECK(check_transitivity(W2.g));
  CHECK(check_one_transitivity(W2.g));

  // null component is gl_2: dim 4, one-dimensional center, derived sl_2
  LieAlgebraFp g0 = subalgebra_table(W2.g.component(0), W2.g.alg);
  CHECK(g0.dim == 4);
  CHECK(center(g0).dim() == 1);
  CHECK(derived_series(g0)[1].dim() == 3);

  // the degree derivation acts on W_k as the scalar k
  Vec d1 = degree_derivation(W2);
  for (u32 u = 0; u < W2.g.alg.dim; ++u) {
    Vec expect = W2.g.alg.zero_vec();
    int k = W2.g.degree[u];
    expect[u] = (u32)((k % 5 + 5) % 5);
    CHECK(W2.g.alg.bracket(d1, W2.g.alg.basis_vec(u)) == expect);
  }

  CHECK_THROWS_AS(build_witt(2, {2, 2}, 5), SizeCapExceeded);
}

TEST_CASE("divergence and the elementary divergence-free derivations") {
  WittAlgebra W = build_witt(2, {1, 1}, 5);
  const DividedPowerAlgebra& O = W.O;

  Vec x1d1 = W.g.alg.basis_vec(W.index(O.index({1, 0}), 0));
  CHECK(divergence(W, x1d1) == mono(O, {0, 0}));

  // D_{1,2}(x_2^(2)) = x_2^(1) D_1
  Vec v = d_ij(W, 0, 1, mono(O, {0, 2}));
  CHECK(v == W.g.alg.basis_vec(W.index(O.index({0, 1}), 0)));
  CHECK(vec_is_zero(divergence(W, v)));

  // div(f * degree_derivation) = (m + deg f) f for homogeneous f
  Vec f = mono(O, {2, 1});
  Vec lhs = divergence(W, f_degree_derivation(W, f));
  Vec rhs(O.dim, 0);
  rhs[O.index({2, 1})] = (2 + 3) % 5;
  CHECK(lhs == rhs);

  // div([D,E]) = D(div E) - E(div D) over a full basis sweep
  for (u32 u = 0; u < W.g.alg.dim; ++u)
    for (u32 w = u + 1; w < W.g.alg.dim; ++w) {
      Vec D = W.g.alg.basis_vec(u), E = W.g.alg.basis_vec(w);
      Vec left = divergence(W, W.g.alg.bracket(D, E));
      Vec right = apply_derivation(W, D, divergence(W, E));
      Vec tmp = apply_derivation(W, E, divergence(W, D));
      for (u32 r = 0; r < O.dim; ++r) right[r] = fp_sub(right[r], tmp[r], 5);
      CHECK(left == right);
    }

  // [D_k, D_{i,j}(f)] = D_{i,j}(D_k(f)) on a basis sweep
  for (u32 k = 0; k < 2; ++k)
    for (u32 mo = 0; mo < O.dim; ++mo) {
      Vec fm(O.dim, 0);
      fm[mo] = 1;
      Vec dk = W.g.alg.basis_vec(W.index(0, k));
      CHECK(W.g.alg.bracket(dk, d_ij(W, 0, 1, fm)) == d_ij(W, 0, 1, dp_derive(O, k, fm)));
    }
}

TEST_CASE("bracket of divergence-free derivations via the pair formula") {
  WittAlgebra W = build_witt(2, {1, 1}, 5);
  const DividedPowerAlgebra& O = W.O;
  std::mt19937 rng(7);
  std::uniform_int_distribution<u32> coef(0, 4), mo(0, O.dim - 1);
  for (int trial = 0; trial < 10; ++trial) {
    Vec f(O.dim, 0), g(O.dim, 0);
    for (int t = 0; t < 3; ++t) {
      f[mo(rng)] = coef(rng);
      g[mo(rng)] = coef(rng);
    }
    Vec D = d_ij(W, 0, 1, f), E = d_ij(W, 0, 1, g);
    auto fc = witt_components(W, D), gc = witt_components(W, E);
    Vec expect = W.g.alg.zero_vec();
    for (u32 i = 0; i < 2; ++i)
      for (u32 j = 0; j < 2; ++j) {
        Vec w = d_ij(W, j, i, dp_mul(O, fc[i], gc[j]));
        for (u32 r = 0; r < expect.size(); ++r) expect[r] = fp_add(expect[r], w[r], 5);
      }
    CHECK(W.g.alg.bracket(D, E) == expect);
  }
}

TEST_CASE("special series") {
  GradedLieAlgebra S1 = build_S(3, {1, 1, 1}, 5, CartanFamily::S1);
  CHECK(S1.alg.dim == 248);
  CHECK(S1.height() == 10);
  CHECK(S1.depth() == 1);
  CHECK(check_grading(S1).clean());
  CHECK(check_transitivity(S1));
  CHECK(S1.component(0).dim() == 8);
  FpSubspace full248 = FpSubspace::full_space(5, 248);
  CHECK(product_space(full248, full248, S1.alg).dim() == 248);  // perfect
  CHECK(center(S1.alg).is_zero());
  // the unique minimal ideal is everything, so the algebra is simple
  CHECK(minimal_ideal(S1).ideal.dim() == 248);

  GradedLieAlgebra S = build_S(3, {1, 1, 1}, 5, CartanFamily::S);
  CHECK(S.alg.dim == 251);
  GradedLieAlgebra CS = build_S(3, {1, 1, 1}, 5, CartanFamily::CS);
  CHECK(CS.alg.dim == 252);
  CHECK(CS.component(0).dim() == 9);

  CHECK_THROWS_AS(build_S(2, {1, 1}, 5), std::invalid_argument);
}

TEST_CASE("hamiltonian series") {
  GradedLieAlgebra H2 = build_H(2, {1, 1}, 5, CartanFamily::H2);
  CHECK(H2.alg.dim == 23);
  CHECK(H2.depth() == 1);
  CHECK(H2.height() == 5);
  CHECK(check_grading(H2).clean());
  CHECK(check_structure(H2.alg).clean());
  CHECK(check_transitivity(H2));
  CHECK(is_simple(H2.alg));
  // local part generates everything in the restricted case
  CHECK(local_subalgebra(H2).alg.dim == 23);

  // null component is sp_2 = sl_2
  LieAlgebraFp h0 = subalgebra_table(H2.component(0), H2.alg);
  CHECK(h0.dim == 3);
  CHECK(center(h0).is_zero());
  FpSubspace full3 = FpSubspace::full_space(5, 3);
  CHECK(product_space(full3, full3, h0).dim() == 3);

  // {x_1, x_2} = 1
  DividedPowerAlgebra O = divided_power_algebra(2, {1, 1}, 5);
  CHECK(poisson_bracket(O, mono(O, {1, 0}), mono(O, {0, 1})) == mono(O, {0, 0}));

  // [D_H(f), D_H(g)] = D_H({f,g}) as derivations, on a basis sweep
  WittAlgebra W = build_witt(2, {1, 1}, 5);
  for (u32 a = 0; a < O.dim; ++a)
    for (u32 b = a + 1; b < O.dim; ++b) {
      Vec fa(O.dim, 0), fb(O.dim, 0);
      fa[a] = 1;
      fb[b] = 1;
      Vec lhs = W.g.alg.bracket(hamiltonian_derivation(W, fa), hamiltonian_derivation(W, fb));
      CHECK(lhs == hamiltonian_derivation(W, poisson_bracket(O, fa, fb)));
    }

  // the constraint-kernel algebra contains the derived one plus the corner
  // derivations; D_H(x_1^(5)) shows up as x_1^(4)D_2
  GradedLieAlgebra H = build_H(2, {1, 1}, 5, CartanFamily::H);
  CHECK(H.alg.dim == 26);
  GradedLieAlgebra CH = build_H(2, {1, 1}, 5, CartanFamily::CH);
  CHECK(CH.alg.dim == 27);
  CHECK(CH.component(0).dim() == 4);  // csp_2: sp_2 plus the degree derivation

  std::vector<Vec> rows;
  for (u32 a = 1; a + 1 < O.dim; ++a) {
    Vec f(O.dim, 0);
    f[a] = 1;
    rows.push_back(hamiltonian_derivation(W, f));
  }
  FpSubspace im = FpSubspace::span(5, W.g.alg.dim, rows);
  CHECK(im.dim() == 23);
  Vec q1 = W.g.alg.basis_vec(W.index(O.index({4, 0}), 1));  // x_1^(4)D_2
  CHECK(!im.contains(q1));
  CHECK(derived_series(subalgebra_table(subspace_sum(
                           im, FpSubspace::span(5, W.g.alg.dim, {q1})), W.g.alg))[1].dim() >= 23);

  CHECK_THROWS_AS(build_H(3, {1, 1, 1}, 5), std::invalid_argument);
  CHECK_THROWS_AS(build_H(4, {1, 1, 1, 1}, 5, CartanFamily::H2), SizeCapExceeded);
}

TEST_CASE("larger hamiltonian algebra built without its ambient") {
  GradedLieAlgebra H2 = build_H(4, {1, 1, 1, 1}, 5, CartanFamily::H2, 1024);
  CHECK(H2.alg.dim == 623);
  CHECK(H2.depth() == 1);
  CHECK(H2.height() == 4 * 5 - 4 - 3);  // top tuple excluded, so 13
  CHECK(check_grading(H2).clean());
  CHECK(check_transitivity(H2));
  // spot-check the Jacobi identity on random triples
  std::mt19937 rng(99);
  std::uniform_int_distribution<u32> pick(0, H2.alg.dim - 1);
  for (int t = 0; t < 40; ++t) {
    Vec a = H2.alg.basis_vec(pick(rng)), b = H2.alg.basis_vec(pick(rng)),
        c = H2.alg.basis_vec(pick(rng));
    Vec s = H2.alg.bracket(a, H2.alg.bracket(b, c));
    Vec t2 = H2.alg.bracket(b, H2.alg.bracket(c, a));
    Vec t3 = H2.alg.bracket(c, H2.alg.bracket(a, b));
    for (u32 r = 0; r < s.size(); ++r)
      s[r] = fp_add(s[r], fp_add(t2[r], t3[r], 5), 5);
    CHECK(vec_is_zero(s));
  }
}

TEST_CASE("nonrestricted hamiltonian algebra has a restricted local part") {
  GradedLieAlgebra H2 = build_H(2, {2, 1}, 5, CartanFamily::H2, 1024);
  CHECK(H2.alg.dim == 123);
  GradedLieAlgebra local = local_subalgebra(H2);
  CHECK(local.alg.dim == 23);         // the (1,1) member
  CHECK(local.component(6).dim() == 0);  // nothing above degree 5
  CHECK(local.height() == 5);
}

TEST_CASE("contact series") {
  GradedLieAlgebra K = build_K(3, {1, 1, 1}, 5, CartanFamily::K);
  CHECK(K.alg.dim == 125);
  CHECK(K.depth() == 2);
  CHECK(K.height() == 4 + 4 + 2 * 4 - 2);  // the top tuple's grading degree
  CHECK(check_grading(K).clean());
  CHECK(check_structure(K.alg).clean());
  CHECK(check_transitivity(K));
  CHECK(K.component(-2).dim() == 1);
  CHECK(K.component(-1).dim() == 2);
  CHECK(local_subalgebra(K).alg.dim == 125);  // restricted

  // derived algebra equals the whole algebra here (2m+4 = 6 nonzero mod 5)
  GradedLieAlgebra K1 = build_K(3, {1, 1, 1}, 5, CartanFamily::K1);
  CHECK(K1.alg.dim == 125);
  FpSubspace full125 = FpSubspace::full_space(5, 125);
  CHECK(product_space(full125, full125, K.alg).dim() == 125);

  // null component is csp_2: dim 4, center line, derived sp_2
  LieAlgebraFp k0 = subalgebra_table(K.component(0), K.alg);
  CHECK(k0.dim == 4);
  CHECK(center(k0).dim() == 1);
  CHECK(derived_series(k0)[1].dim() == 3);

  DividedPowerAlgebra O = divided_power_algebra(3, {1, 1, 1}, 5);
  // <1, x^(a)> = 2 x^(a - e_3)
  Vec lhs = contact_bracket(O, mono(O, {0, 0, 0}), mono(O, {1, 1, 1}));
  Vec rhs = mono(O, {1, 1, 0});
  rhs[O.index({1, 1, 0})] = 2;
  CHECK(lhs == rhs);
  // <x_3, x^(a)> = ||a|| x^(a)
  Vec a = mono(O, {2, 1, 1});
  Vec got = contact_bracket(O, mono(O, {0, 0, 1}), a);
  Vec want(O.dim, 0);
  want[O.index({2, 1, 1})] = (2 + 1 + 1 + 1 - 2) % 5;
  CHECK(got == want);
  // [d_1, d_2] pairing into the depth-two line: <x_1, x_2> = 1
  CHECK(contact_bracket(O, mono(O, {1, 0, 0}), mono(O, {0, 1, 0})) == mono(O, {0, 0, 0}));

  CHECK_THROWS_AS(build_K(4, {1, 1, 1, 1}, 5), std::invalid_argument);
}

TEST_CASE("degree components split into the two canonical submodules") {
  WittAlgebra W2 = build_witt(2, {1, 1}, 5);
  SharpDaggerDecomposition d1 = sharp_dagger_decomposition(W2, 1);
  CHECK(d1.relation == SharpDaggerRelation::DirectSum);
  CHECK(d1.sharp.dim() == 2);
  CHECK(d1.dagger.dim() == 4);

  SharpDaggerDecomposition d3 = sharp_dagger_decomposition(W2, 3);
  CHECK(d3.relation == SharpDaggerRelation::Chain);
  CHECK(W2.g.component(3).dim() == 10);
  CHECK(d3.dagger.dim() == 6);
  CHECK(d3.sharp.dim() == 4);

  WittAlgebra W3 = build_witt(3, {1, 1, 1}, 5);
  SharpDaggerDecomposition d2 = sharp_dagger_decomposition(W3, 2);
  CHECK(d2.relation == SharpDaggerRelation::Chain);  // m + ell = 5
  CHECK(d2.sharp.dim() == 6);                        // C(m+ell-1, ell)

  CHECK_THROWS_AS(sharp_dagger_decomposition(W2, 4), std::out_of_range);

  // the local-plus-sharp subalgebra is a copy of sl_3 inside W(2;1)
  FpSubspace seed = subspace_sum(W2.g.degree_range(-1, 0), d1.sharp);
  CHECK(subalgebra_generated(seed, W2.g.alg).dim() == 8);
}

}  // namespace
