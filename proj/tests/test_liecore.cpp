#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gradlie/liecore.hpp"

using namespace gradlie;

namespace {

// basis order: e, f, h
LieAlgebraFp sl2(u32 p) {
  LieAlgebraFp L(p, 3);
  L.labels = {"e", "f", "h"};
  L.set_bracket(0, 1, {{2, 1}});          // [e,f] = h
  L.set_bracket(2, 0, {{0, 2}});          // [h,e] = 2e
  L.set_bracket(2, 1, {{1, p - 2}});      // [h,f] = -2f
  return L;
}

// sl2 plus a central element in coordinate 3
LieAlgebraFp sl2_plus_center(u32 p) {
  LieAlgebraFp L(p, 4);
  L.labels = {"e", "f", "h", "z"};
  L.set_bracket(0, 1, {{2, 1}});
  L.set_bracket(2, 0, {{0, 2}});
  L.set_bracket(2, 1, {{1, p - 2}});
  return L;
}

TEST_CASE("storage convention and bracket") {
  LieAlgebraFp L = sl2(5);
  CHECK(L.bracket(L.basis_vec(0), L.basis_vec(1)) == L.basis_vec(2));
  CHECK(L.bracket(L.basis_vec(1), L.basis_vec(0)) == Vec{0, 0, 4});
  std::mt19937 rng(1);
  for (int t = 0; t < 10; ++t) {
    Vec x(3);
    for (auto& v : x) v = rng() % 5;
    CHECK(vec_is_zero(L.bracket(x, x)));
  }
  // set_bracket accepts either index order
  LieAlgebraFp M(5, 2);
  M.set_bracket(1, 0, {{0, 3}});
  CHECK(M.bracket_basis(0, 1) == Vec{2, 0});
  CHECK_THROWS(M.set_bracket(0, 0, {{0, 1}}));
}

TEST_CASE("check_structure flags a corrupted table") {
  CHECK(check_structure(sl2(5)).clean());
  CHECK(check_structure(sl2(7)).clean());
  LieAlgebraFp bad = sl2(5);
  bad.set_bracket(0, 1, {{0, 1}});  // [e,f] = e breaks Jacobi on (e,f,h)
  StructureReport rep = check_structure(bad);
  CHECK(!rep.clean());
  CHECK(rep.jacobi_failures[0] == std::array<u32, 3>{0, 1, 2});
}

TEST_CASE("product_space") {
  LieAlgebraFp L = sl2(5);
  FpSubspace E = FpSubspace::span(5, 3, {{1, 0, 0}});
  FpSubspace F = FpSubspace::span(5, 3, {{0, 1, 0}});
  CHECK(product_space(E, F, L) == FpSubspace::span(5, 3, {{0, 0, 1}}));
  CHECK(product_space(FpSubspace::full_space(5, 3), FpSubspace::zero(5, 3), L).is_zero());
}

TEST_CASE("ideal closure") {
  LieAlgebraFp L = sl2(5);
  FpSubspace full = FpSubspace::full_space(5, 3);
  CHECK(ideal_generated(full, L) == full);
  CHECK(ideal_generated(L.basis_vec(0), L) == full);

  LieAlgebraFp G = sl2_plus_center(5);
  CHECK(ideal_generated(G.basis_vec(3), G) == FpSubspace::span(5, 4, {{0, 0, 0, 1}}));
  // idempotent and monotone
  FpSubspace I = ideal_generated(G.basis_vec(0), G);
  CHECK(ideal_generated(I, G) == I);
  CHECK(I.contains(ideal_generated(G.basis_vec(0), G)));
}

TEST_CASE("derived series, center, centralizer") {
  LieAlgebraFp L = sl2(5);
  auto ds = derived_series(L);
  CHECK(ds.size() == 1);  // perfect
  CHECK(center(L).is_zero());

  LieAlgebraFp G = sl2_plus_center(5);
  auto dg = derived_series(G);
  REQUIRE(dg.size() == 2);
  CHECK(dg[1].dim() == 3);
  CHECK(center(G) == FpSubspace::span(5, 4, {{0, 0, 0, 1}}));
  CHECK(centralizer(FpSubspace::span(5, 3, {{1, 0, 0}}), L) ==
        FpSubspace::span(5, 3, {{1, 0, 0}}));
}

TEST_CASE("simplicity") {
  CHECK(is_simple(sl2(5)));
  CHECK(is_simple(sl2(7)));
  CHECK(!is_simple(sl2_plus_center(5)));
  LieAlgebraFp abelian(5, 2);
  CHECK(!is_simple(abelian));
  LieAlgebraFp trivial(5, 0);
  CHECK(!is_simple(trivial));
}

TEST_CASE("adjoint p-th powers on sl2") {
  LieAlgebraFp L = sl2(5);
  PPowerResult rh = adjoint_p_power(L.basis_vec(2), L);
  REQUIRE(rh.status == PPowerResult::Status::Ok);
  CHECK(rh.y == L.basis_vec(2));  // h^[p] = h
  PPowerResult re = adjoint_p_power(L.basis_vec(0), L);
  REQUIRE(re.status == PPowerResult::Status::Ok);
  CHECK(vec_is_zero(re.y));  // e^[p] = 0

  CHECK(adjoint_p_power(sl2_plus_center(5).basis_vec(2), sl2_plus_center(5)).status ==
        PPowerResult::Status::Ambiguous);

  auto pm = canonical_pmap(L);
  REQUIRE(pm.has_value());
  CHECK(verify_pmap(L, *pm));
  // sampled p-semilinearity through ad: ad(x^[p]) = (ad x)^p for random x
  std::mt19937 rng(2);
  for (int t = 0; t < 20; ++t) {
    Vec x(3);
    for (auto& v : x) v = rng() % 5;
    PPowerResult r = adjoint_p_power(x, L);
    REQUIRE(r.status == PPowerResult::Status::Ok);
    CHECK(L.ad(r.y).to_dense() == L.ad(x).to_dense().pow(5));
  }
}

TEST_CASE("subalgebra materialization") {
  LieAlgebraFp L = sl2(5);
  FpSubspace borel = FpSubspace::span(5, 3, {{1, 0, 0}, {0, 0, 1}});
  LieAlgebraFp B = subalgebra_table(borel, L);
  CHECK(B.dim == 2);
  // basis rows are (e, h); [e,h] = -2e
  CHECK(B.bracket(B.basis_vec(0), B.basis_vec(1)) == Vec{3, 0});
  CHECK(check_structure(B).clean());
  CHECK_THROWS(subalgebra_table(FpSubspace::span(5, 3, {{1, 0, 0}, {0, 1, 0}}), L));
}

TEST_CASE("quotient by the center of gl2-like algebra") {
  LieAlgebraFp G = sl2_plus_center(5);
  FpSubspace Z = FpSubspace::span(5, 4, {{0, 0, 0, 1}});
  QuotientAlgebra Q = quotient_algebra(G, Z);
  CHECK(Q.alg.dim == 3);
  CHECK(check_structure(Q.alg).clean());
  CHECK(is_simple(Q.alg));
  CHECK(vec_is_zero(Q.project(Vec{0, 0, 0, 3})));
  CHECK_THROWS(quotient_algebra(G, FpSubspace::span(5, 4, {{1, 0, 0, 0}})));
}

}  // namespace
