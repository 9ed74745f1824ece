#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gradlie/graded.hpp"
#include "gradlie/modrep.hpp"

using namespace gradlie;

namespace {

u32 small_binom(u64 n, u64 k) {
  if (k > n) return 0;
  u64 r = 1;
  for (u64 i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return (u32)r;
}

u32 binom_mod(u64 n, u64 k, u32 p) {
  u32 r = 1;
  while (n || k) {
    u64 a = n % p, b = k % p;
    if (b > a) return 0;
    r = (u32)((u64)r * small_binom(a, b) % p);
    n /= p;
    k /= p;
  }
  return r;
}

// Derivations of the one-variable divided power algebra of height n over F_5:
// basis index a corresponds to x^(a) d/dx, of degree a - 1.
GradedLieAlgebra w1(u32 n) {
  const u32 p = 5;
  u32 N = 1;
  for (u32 i = 0; i < n; ++i) N *= p;
  LieAlgebraFp L(p, N);
  std::vector<int> deg(N);
  for (u32 a = 0; a < N; ++a) deg[a] = (int)a - 1;
  for (u32 a = 0; a < N; ++a)
    for (u32 b = a + 1; b < N; ++b) {
      if (a + b == 0 || a + b - 1 >= N) continue;
      u32 c1 = b >= 1 ? binom_mod(a + b - 1, a, p) : 0;
      u32 c2 = a >= 1 ? binom_mod(a + b - 1, b, p) : 0;
      u32 c = fp_sub(c1, c2, p);
      if (c) L.set_bracket(a, b, {{a + b - 1, c}});
    }
  return GradedLieAlgebra(std::move(L), std::move(deg));
}

// basis order e, f, h with degrees 1, -1, 0
GradedLieAlgebra sl2_graded(u32 p) {
  LieAlgebraFp L(p, 3);
  L.labels = {"e", "f", "h"};
  L.set_bracket(0, 1, {{2, 1}});
  L.set_bracket(2, 0, {{0, 2}});
  L.set_bracket(2, 1, {{1, p - 2}});
  return GradedLieAlgebra(std::move(L), {1, -1, 0});
}

// sl2 with an extra central element z of degree -2 (index 3)
GradedLieAlgebra sl2_center_graded(u32 p) {
  LieAlgebraFp L(p, 4);
  L.set_bracket(0, 1, {{2, 1}});
  L.set_bracket(2, 0, {{0, 2}});
  L.set_bracket(2, 1, {{1, p - 2}});
  return GradedLieAlgebra(std::move(L), {1, -1, 0, -2});
}

// two commuting copies of sl2, basis e1,f1,h1,e2,f2,h2
GradedLieAlgebra sl2_times_two(u32 p) {
  LieAlgebraFp L(p, 6);
  for (u32 o : {0u, 3u}) {
    L.set_bracket(o + 0, o + 1, {{o + 2, 1}});
    L.set_bracket(o + 2, o + 0, {{o + 0, 2}});
    L.set_bracket(o + 2, o + 1, {{o + 1, p - 2}});
  }
  return GradedLieAlgebra(std::move(L), {1, -1, 0, 1, -1, 0});
}

TEST_CASE("grading check and depth/height") {
  GradedLieAlgebra G = sl2_graded(5);
  GradingReport rep = check_grading(G);
  CHECK(rep.clean());
  CHECK(rep.depth == 1);
  CHECK(rep.height == 1);

  GradedLieAlgebra W = w1(1);
  CHECK(check_structure(W.alg).clean());
  rep = check_grading(W);
  CHECK(rep.clean());
  CHECK(rep.depth == 1);
  CHECK(rep.height == 3);
  CHECK(W.component(-1).dim() == 1);
  CHECK(W.component(0).dim() == 1);

  GradedLieAlgebra bad = sl2_graded(5);
  bad.degree[0] = 2;  // e pushed out of place
  CHECK(!check_grading(bad).clean());
}

TEST_CASE("transitivity and 1-transitivity") {
  CHECK(check_transitivity(sl2_graded(5)));
  CHECK(check_one_transitivity(sl2_graded(5)));

  // span{f, h}: no positive part, so 1-transitivity fails at h
  LieAlgebraFp fh(5, 2);
  fh.set_bracket(1, 0, {{0, 3}});  // [h, f] = -2f
  GradedLieAlgebra Gfh(std::move(fh), {-1, 0});
  CHECK(check_transitivity(Gfh));
  CHECK(!check_one_transitivity(Gfh));

  GradedLieAlgebra Gz = sl2_center_graded(5);
  CHECK(check_transitivity(Gz));
  CHECK(!check_one_transitivity(Gz));
  auto w = one_transitivity_witness(Gz);
  REQUIRE(w.has_value());
  CHECK((*w)[3] != 0);

  GradedLieAlgebra W = w1(1);
  CHECK(check_transitivity(W));
  CHECK(check_one_transitivity(W));
}

TEST_CASE("radical fixpoint") {
  CHECK(weisfeiler_radical(sl2_graded(5)).is_zero());
  CHECK(weisfeiler_radical(w1(1)).is_zero());
  CHECK(weisfeiler_radical(w1(2)).is_zero());

  GradedLieAlgebra Gz = sl2_center_graded(5);
  FpSubspace M = weisfeiler_radical(Gz);
  CHECK(M == FpSubspace::span(5, 4, {{0, 0, 0, 1}}));
  // the quotient by the radical has zero radical
  GradedLieAlgebra Q = graded_quotient(Gz, M);
  CHECK(Q.alg.dim == 3);
  CHECK(check_grading(Q).clean());
  CHECK(weisfeiler_radical(Q).is_zero());
}

TEST_CASE("minimal ideal") {
  GradedLieAlgebra W = w1(1);
  MinimalIdealResult mi = minimal_ideal(W);
  CHECK(mi.ideal.dim() == 5);
  CHECK(mi.top_degree == 3);

  GradedLieAlgebra W2 = w1(2);
  mi = minimal_ideal(W2);
  CHECK(mi.ideal.dim() == 25);
  CHECK(mi.top_degree == 23);

  CHECK_THROWS_AS(minimal_ideal(sl2_center_graded(5)), HypothesesNotMet);
}

TEST_CASE("depth-one quotients from a submodule") {
  // whole negative part of a transitive algebra: nothing is annihilated
  GradedLieAlgebra W = w1(1);
  GradedLieAlgebra B = quotient_construction(W, W.component(-1), 1);
  CHECK(B.alg.dim == 5);
  CHECK(B.depth() == 1);
  CHECK(B.height() == 3);
  CHECK(check_grading(B).clean());

  // positive submodule: the grading comes out reversed
  GradedLieAlgebra S = sl2_graded(5);
  GradedLieAlgebra Bp = quotient_construction(S, S.component(1), 1);
  CHECK(Bp.alg.dim == 3);
  CHECK(Bp.depth() == 1);
  CHECK(Bp.height() == 1);
  CHECK(Bp.component(-1).dim() == 1);

  // central element of degree -2: everything in degree zero dies
  GradedLieAlgebra Gz = sl2_center_graded(5);
  GradedLieAlgebra Bz = quotient_construction(Gz, Gz.component(-2), 2);
  CHECK(Bz.alg.dim == 1);
  CHECK(Bz.depth() == 1);
  CHECK(Bz.height() == 0);

  // one factor of a product: the other factor is the annihilator
  GradedLieAlgebra GG = sl2_times_two(5);
  FpSubspace V = FpSubspace::span(5, 6, {{0, 1, 0, 0, 0, 0}});
  GradedLieAlgebra Bf = quotient_construction(GG, V, 1);
  CHECK(Bf.alg.dim == 3);
  CHECK(is_simple(Bf.alg));
  CHECK(check_grading(Bf).clean());

  CHECK_THROWS_AS(quotient_construction(GG, FpSubspace::zero(5, 6), 1), std::invalid_argument);
  // f1 + f2 spans no submodule
  FpSubspace notsub = FpSubspace::span(5, 6, {{0, 1, 0, 0, 1, 0}});
  CHECK_THROWS_AS(quotient_construction(GG, notsub, 1), std::invalid_argument);
}

TEST_CASE("subalgebra generated by the local part") {
  CHECK(local_subalgebra(sl2_graded(5)).alg.dim == 3);

  // In rank one the degree-1 component is a single line, so the closure
  // stops at degree 1 and yields the sl2 piece, whatever the height.
  for (u32 n : {1u, 2u}) {
    GradedLieAlgebra loc = local_subalgebra(w1(n));
    CHECK(loc.alg.dim == 3);
    CHECK(loc.depth() == 1);
    CHECK(loc.height() == 1);
    CHECK(check_grading(loc).clean());
    CHECK(check_structure(loc.alg).clean());
    CHECK(is_simple(loc.alg));
  }
}

TEST_CASE("p-character") {
  GradedLieAlgebra S = sl2_graded(5);
  FpSubspace h = FpSubspace::span(5, 3, {{0, 0, 1}});
  PCharacter pc = p_character(S, h);
  CHECK(pc.chi == Vec{0});
  CHECK(pc.scaling.empty());

  GradedLieAlgebra W2 = w1(2);
  PCharacter pw = p_character(W2, W2.component(0));
  CHECK(pw.chi == Vec{0});

  // degree -2 not reachable from degree -1: scaling prediction withheld
  GradedLieAlgebra Gz = sl2_center_graded(5);
  FpSubspace h4 = FpSubspace::span(5, 4, {{0, 0, 1, 0}});
  PCharacter pz = p_character(Gz, h4, {Vec{0, 0, 1, 0}});
  CHECK(pz.chi == Vec{0});
  REQUIRE(pz.scaling.size() == 1);
  CHECK(pz.scaling[0].j == 2);
  CHECK(!pz.scaling[0].applicable);

  // a wrong p-th power makes the twisted operator non-scalar
  GradedLieAlgebra GG = sl2_times_two(5);
  FpSubspace h1 = FpSubspace::span(5, 6, {{0, 0, 1, 0, 0, 0}});
  CHECK_THROWS_AS(p_character(GG, h1, {Vec{0, 0, 1, 0, 0, 1}}), NotScalar);
}

TEST_CASE("module restriction, spin, irreducibility") {
  GradedLieAlgebra S = sl2_graded(5);
  FpSubspace full3 = FpSubspace::full_space(5, 3);
  CHECK(is_irreducible(full3, full3, S.alg));  // adjoint module of sl2, p = 5

  // degree <= 1 part of the rank-one derivation algebra: its span is itself
  // a proper submodule of the adjoint module
  GradedLieAlgebra W = w1(1);
  FpSubspace acting = FpSubspace::span(5, 5, {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}});
  CHECK(!is_irreducible(acting, FpSubspace::full_space(5, 5), W.alg));
  // the whole simple algebra acting on itself is irreducible
  CHECK(is_irreducible(FpSubspace::full_space(5, 5), FpSubspace::full_space(5, 5), W.alg));

  // natural two-dimensional module, realized inside a semidirect sum
  LieAlgebraFp sd(5, 5);  // e, f, h, u, v
  sd.set_bracket(0, 1, {{2, 1}});
  sd.set_bracket(2, 0, {{0, 2}});
  sd.set_bracket(2, 1, {{1, 3}});
  sd.set_bracket(0, 4, {{3, 1}});  // [e, v] = u
  sd.set_bracket(1, 3, {{4, 1}});  // [f, u] = v
  sd.set_bracket(2, 3, {{3, 1}});
  sd.set_bracket(2, 4, {{4, 4}});
  REQUIRE(check_structure(sd).clean());
  FpSubspace sl2span = FpSubspace::span(5, 5, {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}});
  FpSubspace nat = FpSubspace::span(5, 5, {{0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}});
  CHECK(is_irreducible(sl2span, nat, sd));

  // a central line is a proper submodule
  GradedLieAlgebra Gz = sl2_center_graded(5);
  FpSubspace sl2part = FpSubspace::span(5, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
  CHECK(!is_irreducible(sl2part, FpSubspace::full_space(5, 4), Gz.alg));

  ModuleAction act = restrict_action(sl2part, FpSubspace::full_space(5, 4), Gz.alg);
  FpSubspace sp = spin(act.gens, Vec{0, 0, 0, 1}, 5);
  CHECK(sp.dim() == 1);
  sp = spin(act.gens, Vec{1, 0, 0, 1}, 5);
  CHECK(sp.dim() == 4);

  CHECK_THROWS(restrict_action(sl2part, FpSubspace::span(5, 4, {{1, 0, 0, 0}}), Gz.alg));
}

TEST_CASE("preimage helper") {
  GradedLieAlgebra S = sl2_graded(5);
  FpSubspace full = FpSubspace::full_space(5, 3);
  FpSubspace e = FpSubspace::span(5, 3, {{1, 0, 0}});
  // {x : [x, e] in span e} = span{e, h}
  CHECK(bracket_preimage(full, e, e, S.alg) ==
        FpSubspace::span(5, 3, {{1, 0, 0}, {0, 0, 1}}));
}

}  // namespace
