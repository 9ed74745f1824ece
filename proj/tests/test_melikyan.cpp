#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gradlie/classical.hpp"
#include "gradlie/melikyan.hpp"

using namespace gradlie;

namespace {

Vec unit(const LieAlgebraFp& L, u32 idx, u32 c = 1) {
  Vec v = L.zero_vec();
  v[idx] = c;
  return v;
}

}  // namespace

TEST_CASE("three-block construction") {
  MelikyanAlgebra M = build_M(1, 1);
  const LieAlgebraFp& L = M.alg.alg;
  const WittAlgebra& W = M.W;
  const DividedPowerAlgebra& O = W.O;
  CHECK(L.dim == 125);
  CHECK(M.alg.depth() == 3);
  CHECK(M.alg.height() == 23);  // 3(5 + 5) - 7
  CHECK(check_grading(M.alg).clean());
  CHECK(check_structure(L).clean());
  CHECK(check_transitivity(M.alg));

  // The constant function sits at the bottom of the grading, the plain
  // derivations just above it.
  CHECK(M.alg.degree[M.o_index(O.index({0, 0}))] == -2);
  CHECK(M.alg.degree[M.w_index(W.index(O.index({0, 0}), 0))] == -3);
  CHECK(M.alg.degree[M.t_index(W.index(O.index({0, 0}), 0))] == -1);
  CHECK(M.alg.component(-3).dim() == 2);

  // [x1, x2] = 3 (x1 D1)~ + 3 (x2 D2)~
  Vec lhs = L.bracket_basis(M.o_index(O.index({1, 0})), M.o_index(O.index({0, 1})));
  Vec want = L.zero_vec();
  want[M.t_index(W.index(O.index({1, 0}), 0))] = 3;
  want[M.t_index(W.index(O.index({0, 1}), 1))] = 3;
  CHECK(lhs == want);

  // Tilde against tilde lands in the function block: [x1 ~D1, x2 ~D2] = x1 x2
  // and same-component pairs with no cross terms vanish.
  Vec tt = L.bracket_basis(M.t_index(W.index(O.index({1, 0}), 0)),
                           M.t_index(W.index(O.index({0, 1}), 1)));
  CHECK(tt == unit(L, M.o_index(O.index({1, 1}))));
  CHECK(vec_is_zero(L.bracket_basis(M.t_index(W.index(O.index({1, 0}), 0)),
                                    M.t_index(W.index(O.index({0, 1}), 0)))));

  // [D, f] = D(f) - 2 div(D) f: with D = x1 D1 and f = x1 this is
  // x1 - 2 x1 = -x1.
  Vec wf = L.bracket_basis(M.w_index(W.index(O.index({1, 0}), 0)), M.o_index(O.index({1, 0})));
  CHECK(wf == unit(L, M.o_index(O.index({1, 0})), 4));

  // [f, ~E] drops the tilde: [x1, ~D1] = x1 D1.
  Vec ot = L.bracket_basis(M.o_index(O.index({1, 0})), M.t_index(W.index(O.index({0, 0}), 0)));
  CHECK(ot == unit(L, M.w_index(W.index(O.index({1, 0}), 0))));

  CHECK_THROWS_AS(build_M(2, 1), SizeCapExceeded);
}

TEST_CASE("the bracket formulas fail the Jacobi identity away from the base characteristic") {
  MelikyanAlgebra M7 = build_M(1, 1, 7);
  CHECK(M7.alg.alg.dim == 245);
  CHECK(check_grading(M7.alg).clean());
  StructureReport rep = check_structure(M7.alg.alg, 1);
  CHECK_FALSE(rep.clean());
}

TEST_CASE("mod-3 congruence blocks") {
  MelikyanAlgebra M = build_M(1, 1);
  const LieAlgebraFp& L = M.alg.alg;
  Z3Components z = z3_components(M);
  CHECK(z.zero.dim() == 50);
  CHECK(z.two.dim() == 50);
  CHECK(z.minus_two.dim() == 25);
  for (u32 i = 0; i < L.dim; ++i) {
    int r = ((M.alg.degree[i] % 3) + 3) % 3;
    if (z.zero.contains(unit(L, i))) CHECK(r == 0);
    if (z.two.contains(unit(L, i))) CHECK(r == 2);
    if (z.minus_two.contains(unit(L, i))) CHECK(r == 1);  // -2 = 1 mod 3
  }
  CHECK(z.zero.contains(product_space(z.zero, z.zero, L)));
  CHECK(z.two.contains(product_space(z.zero, z.two, L)));
  CHECK(z.minus_two.contains(product_space(z.zero, z.minus_two, L)));
  CHECK(z.minus_two.contains(product_space(z.two, z.two, L)));
  CHECK(z.zero.contains(product_space(z.two, z.minus_two, L)));
  CHECK(z.two.contains(product_space(z.minus_two, z.minus_two, L)));
}

TEST_CASE("bottom of the grading matches the rank-two exceptional algebra") {
  MelikyanAlgebra M = build_M(1, 1);
  G2ComparisonReport rep = g2_comparison(M);
  for (const auto& m : rep.mismatches) MESSAGE(m);
  CHECK(rep.ok());
  CHECK(rep.melikyan_dims == std::vector<std::size_t>{2, 1, 2, 4, 2});
  CHECK(rep.classical_dims == std::vector<std::size_t>{2, 1, 2, 4, 2});

  MelikyanAlgebra M7 = build_M(1, 1, 7);
  CHECK_THROWS_AS(g2_comparison(M7), HypothesesNotMet);
}

TEST_CASE("local part is fourteen-dimensional and classical") {
  MelikyanAlgebra M = build_M(1, 1);
  const LieAlgebraFp& L = M.alg.alg;
  const WittAlgebra& W = M.W;
  const DividedPowerAlgebra& O = W.O;
  GradedLieAlgebra loc = local_subalgebra(M.alg);
  CHECK(loc.alg.dim == 14);
  CHECK(loc.depth() == 3);
  CHECK(loc.height() == 3);
  CHECK(is_simple(loc.alg));

  // Cartan subalgebra spanned by h1 = x1 D1 - x2 D2 and h0 = 3 x2 D2, mapped
  // into the coordinates of the generated subalgebra.
  FpSubspace S = subalgebra_generated(M.alg.degree_range(-1, 1), L);
  CHECK(S.dim() == 14);
  Vec h1 = L.zero_vec();
  h1[M.w_index(W.index(O.index({1, 0}), 0))] = 1;
  h1[M.w_index(W.index(O.index({0, 1}), 1))] = 4;
  Vec h0 = unit(L, M.w_index(W.index(O.index({0, 1}), 1)), 3);
  auto c1 = S.coordinates(h1);
  auto c0 = S.coordinates(h0);
  REQUIRE(c1.has_value());
  REQUIRE(c0.has_value());
  FpSubspace H = FpSubspace::span(5, 14, {*c1, *c0});
  CHECK(H.dim() == 2);
  MillsSeligmanReport ms = mills_seligman(loc.alg, H);
  for (const auto& f : ms.failures) MESSAGE(f);
  CHECK(ms.pass());
}
